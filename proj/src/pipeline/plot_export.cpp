#include "pipeline/plot_export.hpp"

#include <algorithm>
#include <cstdio>

namespace ocam::pipeline {

namespace {

std::string fmt(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string label_for_week(core::WeekIndex week, const std::vector<core::WeekIndex>& splits,
                           bool segmented) {
    if (!segmented || splits.empty()) return "full";
    if (splits.size() == 1) return week < splits[0] ? "before" : "after";
    const std::size_t idx = static_cast<std::size_t>(
        std::upper_bound(splits.begin(), splits.end(), week) - splits.begin());
    return "seg" + std::to_string(idx + 1);
}

}  // namespace

std::vector<PlotFile> export_plot_data(const metrics::WeeklySeries& series,
                                       const SegmentedAnalysis& analysis,
                                       const std::vector<core::WeekIndex>& split_weeks) {
    std::vector<core::WeekIndex> splits = split_weeks;
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());

    std::string timeseries = "week,degree,tdd,segment\n";
    std::string scatter = "degree,tdd,segment\n";
    for (const auto& o : series.observations) {
        const std::string label =
            label_for_week(o.week, splits, analysis.segmentation_applied);
        const std::string degree = fmt(o.contribution.degree, 6);
        const std::string tdd = fmt(o.tdd.tdd(), 9);
        timeseries += std::to_string(o.week.value) + "," + degree + "," + tdd + "," + label +
                      "\n";
        scatter += degree + "," + tdd + "," + label + "\n";
    }

    std::vector<PlotFile> files;
    files.push_back({series.component_id + "_timeseries.csv", std::move(timeseries)});
    files.push_back({series.component_id + "_scatter.csv", std::move(scatter)});
    return files;
}

}  // namespace ocam::pipeline
