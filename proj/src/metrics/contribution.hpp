#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "core/identity.hpp"
#include "core/records.hpp"
#include "core/result.hpp"
#include "core/time.hpp"

namespace ocam::metrics {

/// Weekly contribution ratios of one team on one component, in percent.
/// A measure is absent when its denominator is zero that week; the
/// degree is the mean of the measures that are present.
struct ContributionBreakdown {
    std::string component_id;
    core::WeekIndex week{1};
    std::string team_id;
    std::optional<double> commits_pct;
    std::optional<double> churn_pct;
    std::optional<double> prs_pct;
    std::optional<double> tickets_pct;
    double degree = 0.0;

    int measures_present() const {
        return static_cast<int>(commits_pct.has_value()) +
               static_cast<int>(churn_pct.has_value()) +
               static_cast<int>(prs_pct.has_value()) +
               static_cast<int>(tickets_pct.has_value());
    }
};

/// Weeks with at least one qualifying commit. Merge commits qualify
/// only when `include_merges` is set.
core::Result<std::set<core::WeekIndex>> active_weeks(
    std::span<const core::CommitRecord> commits, const core::Date& epoch,
    bool include_merges);

/// Computes the four contribution ratios and their mean for `team_id`
/// over the events of `week` (or the trailing `window_weeks` buckets).
/// Events are attributed to teams via the affiliation timeline at the
/// event's own timestamp. Merge commits are excluded unless
/// `include_merges`.
core::Result<ContributionBreakdown> contribution_breakdown(
    const std::string& component_id, core::WeekIndex week, const std::string& team_id,
    std::span<const core::CommitRecord> commits,
    std::span<const core::CreatedItemRecord> prs,
    std::span<const core::CreatedItemRecord> tickets,
    const core::AffiliationTimeline& affiliation, const core::Date& epoch,
    bool include_merges = false, std::int64_t window_weeks = 1);

/// Teams (incl. "unaffiliated") that produced at least one event in the
/// given week; used for cross-team conservation checks.
std::set<std::string> teams_active_in_week(
    core::WeekIndex week, std::span<const core::CommitRecord> commits,
    std::span<const core::CreatedItemRecord> prs,
    std::span<const core::CreatedItemRecord> tickets,
    const core::AffiliationTimeline& affiliation, const core::Date& epoch,
    bool include_merges = false, std::int64_t window_weeks = 1);

}  // namespace ocam::metrics
