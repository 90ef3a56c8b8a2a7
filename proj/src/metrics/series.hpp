#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/identity.hpp"
#include "core/records.hpp"
#include "core/result.hpp"
#include "metrics/contribution.hpp"
#include "metrics/tdd.hpp"

namespace ocam::metrics {

struct Observation {
    core::WeekIndex week{1};
    ContributionBreakdown contribution;
    TddPoint tdd;
};

/// Per-component aligned weekly observations, active weeks only,
/// strictly increasing by week.
struct WeeklySeries {
    std::string component_id;
    std::vector<Observation> observations;

    std::vector<double> degrees() const {
        std::vector<double> out;
        out.reserve(observations.size());
        for (const auto& o : observations) out.push_back(o.contribution.degree);
        return out;
    }
    std::vector<double> tdds() const {
        std::vector<double> out;
        out.reserve(observations.size());
        for (const auto& o : observations) out.push_back(o.tdd.tdd());
        return out;
    }
};

struct SeriesOptions {
    core::Date epoch{2020, 1, 6};
    bool include_merges = false;
    std::int64_t window_weeks = 1;
    bool require_all_measures = false;  // strict mode: drop weeks missing any measure
};

struct SeriesBuildResult {
    WeeklySeries series;
    std::vector<std::string> warnings;
};

/// Joins contribution and TDD observations over the component's active
/// weeks. The owning team for a week is the owner at the week's first
/// instant; weeks without an owner, without a size snapshot, or (in
/// strict mode) without all four measures are dropped with a warning.
core::Result<SeriesBuildResult> build_weekly_series(
    const core::ComponentSpec& component, std::span<const core::CommitRecord> commits,
    std::span<const core::CreatedItemRecord> prs,
    std::span<const core::CreatedItemRecord> tickets,
    std::span<const core::TdIssueRecord> td_issues,
    std::span<const core::SizeSnapshot> sizes, const core::AffiliationTimeline& affiliation,
    const SeriesOptions& options);

}  // namespace ocam::metrics
