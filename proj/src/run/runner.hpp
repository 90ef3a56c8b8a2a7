#pragma once

#include <string>

#include "core/result.hpp"
#include "run/config.hpp"

#include "json.hpp"

namespace ocam::run {

struct IngestOutcome {
    nlohmann::ordered_json summary;
    bool any_rejected = false;
};

/// Parses all configured inputs, validates them and writes the
/// normalized event store (JSONL + affiliations/aliases/sizes) under
/// store_dir. Deterministic: identical inputs yield an identical store.
core::Result<IngestOutcome> run_ingest(const RunConfig& config);

/// Reads the normalized store, builds the weekly series per component
/// (in parallel), runs the statistical workflow and writes reports,
/// per-component metrics CSVs and plot data under output_dir.
core::Result<nlohmann::ordered_json> run_analyze(const RunConfig& config);

/// Renders an existing report.json into the requested format.
core::Result<nlohmann::ordered_json> run_render(const std::string& report_path,
                                                const std::string& format,
                                                const std::string& out_dir);

/// Atomically writes `content` (temp file + rename).
core::Result<bool> write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ocam::run
