#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/records.hpp"
#include "core/result.hpp"
#include "metrics/series.hpp"
#include "stats/descriptive.hpp"
#include "stats/kendall.hpp"
#include "stats/magnitude.hpp"
#include "stats/mann_whitney.hpp"
#include "stats/shapiro_wilk.hpp"

namespace ocam::pipeline {

struct AnalysisConfig {
    core::Date epoch{2020, 1, 6};
    double alpha = 0.05;
    std::int64_t min_n = 5;
    bool force_segmentation = false;
    bool no_segmentation = false;
};

struct Segment {
    std::string label;  // "full", "before", "after" or "segK"
    std::vector<metrics::Observation> observations;

    std::int64_t n() const { return static_cast<std::int64_t>(observations.size()); }
};

/// before = weeks strictly below split_week, after = the rest.
std::pair<Segment, Segment> segment_series(const metrics::WeeklySeries& series,
                                           core::WeekIndex split_week);

/// k split weeks -> k+1 ordered segments covering the full series.
std::vector<Segment> split_at(const metrics::WeeklySeries& series,
                              const std::vector<core::WeekIndex>& split_weeks);

struct VariableAnalysis {
    std::optional<stats::DescriptiveStats> descriptive;
    std::optional<stats::SwResult> shapiro;
    std::optional<std::string> shapiro_note;  // why the test is absent
};

struct SegmentAnalysis {
    std::string label;
    std::int64_t n = 0;
    VariableAnalysis degree;
    VariableAnalysis tdd;
    std::optional<stats::KendallResult> kendall;
    std::optional<stats::Magnitude> magnitude;
    std::optional<std::string> skip_reason;
};

struct MwuEntry {
    std::optional<stats::MwuResult> result;
    std::optional<std::string> skip_reason;
};

/// Split-confound test at one boundary: the two adjacent segments
/// compared for each variable.
struct BoundaryAnalysis {
    core::WeekIndex split_week{1};
    std::int64_t n_total = 0;
    MwuEntry degree;
    MwuEntry tdd;
};

struct SegmentedAnalysis {
    std::string component_id;
    bool segmentation_applied = false;
    std::vector<SegmentAnalysis> segments;
    std::vector<BoundaryAnalysis> boundaries;
    std::vector<std::string> skip_reasons;
};

/// The full per-component workflow: descriptives and normality per
/// segment, Mann-Whitney split-confound test per boundary, then
/// Kendall tau-b either per segment (split confirmed or forced) or on
/// the full series.
core::Result<SegmentedAnalysis> run_analysis(const metrics::WeeklySeries& series,
                                             const core::ComponentSpec& component,
                                             const AnalysisConfig& config);

}  // namespace ocam::pipeline
