#pragma once

#include <string>
#include <vector>

#include "core/result.hpp"
#include "pipeline/analysis.hpp"

#include "json.hpp"

namespace ocam::pipeline {

struct ReportFile {
    std::string name;
    std::string content;
};

/// p-values below 0.001 render as "<0.001", otherwise three decimals.
std::string format_p(double p);
std::string format_tau(double tau);

nlohmann::ordered_json analysis_to_json(const SegmentedAnalysis& a, double alpha);

/// The machine-readable report: alpha, min_n and one entry per
/// component in input order.
nlohmann::ordered_json report_to_json(const std::vector<SegmentedAnalysis>& analyses,
                                      double alpha, std::int64_t min_n);

/// Renders the report in the requested format ("json", "csv",
/// "markdown" or "all"). CSV produces the three result tables
/// (descriptive, split-confound, correlation) as separate files.
core::Result<std::vector<ReportFile>> render_report(const nlohmann::ordered_json& report,
                                                    const std::string& format);

}  // namespace ocam::pipeline
