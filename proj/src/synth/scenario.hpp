#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/result.hpp"
#include "core/time.hpp"

#include "json.hpp"

namespace ocam::synth {

struct EventRates {
    double commits = 8.0;
    double prs = 5.0;
    double tickets = 4.0;
};

/// Synthetic-fixture parameters. The couplings are the planted
/// monotone link between contribution degree and TDD drift: positive
/// coupling makes higher degrees suppress debt growth (a negative
/// degree/TDD association), negative coupling the opposite, zero
/// leaves TDD drifting independently of the degree.
struct Scenario {
    std::uint64_t seed = 1;
    std::string component_id = "SYN1";
    std::int64_t weeks = 90;
    std::vector<std::string> teams = {"blue", "brown", "gray", "green"};
    std::optional<core::WeekIndex> split_week;
    double coupling_before = 0.0;
    double coupling_after = 0.0;
    double noise_scale = 0.0;
    EventRates rates;
    std::int64_t loc = 10000;
    double base_tdd = 0.2;
    core::Date epoch{2020, 1, 6};
};

core::Result<Scenario> parse_scenario(const nlohmann::json& j);
core::Result<Scenario> parse_scenario_text(const std::string& text);

struct GeneratedFileset {
    std::vector<std::string> files;   // paths written, relative to out_dir
    std::int64_t commit_count = 0;
    std::int64_t pr_count = 0;
    std::int64_t ticket_count = 0;
    std::int64_t issue_count = 0;
};

/// Writes the complete input fileset (commits, prs, tickets,
/// td_issues, affiliations, aliases, sizes, run config) under out_dir.
/// Byte-identical for equal scenarios.
core::Result<GeneratedFileset> generate_scenario(const Scenario& scenario,
                                                 const std::filesystem::path& out_dir);

}  // namespace ocam::synth
