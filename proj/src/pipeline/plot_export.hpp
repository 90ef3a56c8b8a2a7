#pragma once

#include <string>
#include <vector>

#include "core/result.hpp"
#include "metrics/series.hpp"
#include "pipeline/analysis.hpp"

namespace ocam::pipeline {

struct PlotFile {
    std::string name;
    std::string content;
};

/// Two CSVs per component for plotting frontends: the week-by-week
/// evolution of both constructs, and the degree/TDD scatter. The
/// segment column carries the segment label each observation fell in.
std::vector<PlotFile> export_plot_data(const metrics::WeeklySeries& series,
                                       const SegmentedAnalysis& analysis,
                                       const std::vector<core::WeekIndex>& split_weeks);

}  // namespace ocam::pipeline
