#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/records.hpp"
#include "core/result.hpp"
#include "core/time.hpp"

#include "json.hpp"

namespace ocam::run {

struct InputPaths {
    std::optional<std::string> commits_git_log;  // numstat format
    std::optional<std::string> commits_jsonl;
    std::optional<std::string> prs;
    std::optional<std::string> tickets;
    std::optional<std::string> td_issues;
    std::optional<std::string> affiliations;
    std::optional<std::string> aliases;
    std::optional<std::string> sizes;
    std::optional<std::string> source_tree;  // fallback when no sizes csv
};

struct RunConfig {
    core::Date epoch{2020, 1, 6};
    double alpha = 0.05;
    std::int64_t min_n = 5;
    bool merge_commits = false;
    std::int64_t window_weeks = 1;
    bool strict = false;                 // any rejected record fails the ingest
    bool require_all_measures = false;   // drop weeks lacking any of the four measures
    bool force_segmentation = false;
    bool no_segmentation = false;
    int jobs = 0;  // 0 = hardware concurrency
    std::string output_dir = "out";
    std::string store_dir = "store";
    std::string format = "json";  // json | csv | markdown | all
    std::string base_dir = ".";   // input paths resolve against this
    InputPaths inputs;
    std::vector<core::ComponentSpec> components;
    std::map<std::string, InputPaths> component_inputs;  // per-component overrides
};

/// Parses and validates the run configuration. Relative input paths
/// are later resolved against base_dir (the config file's directory).
core::Result<RunConfig> parse_config(const nlohmann::json& j);
core::Result<RunConfig> parse_config_text(const std::string& text);

std::string resolve_path(const RunConfig& config, const std::string& path);

}  // namespace ocam::run
