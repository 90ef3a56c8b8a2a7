#include "run/config.hpp"

#include <filesystem>
#include <set>

namespace ocam::run {

using nlohmann::json;

namespace {

using R = core::Result<RunConfig>;

core::Result<std::int64_t> parse_day(const json& j, const char* key,
                                     const std::string& where) {
    using DR = core::Result<std::int64_t>;
    if (!j.contains(key) || !j[key].is_string()) {
        return DR::failure(core::Errc::parse_error, where + ": missing date field " + key);
    }
    const auto d = core::parse_date(j[key].get<std::string>());
    if (!d) {
        return DR::failure(core::Errc::parse_error,
                           where + ": invalid date '" + j[key].get<std::string>() + "'");
    }
    return core::day_number(*d);
}

core::Result<core::ComponentSpec> parse_component(const json& j) {
    using CR = core::Result<core::ComponentSpec>;
    core::ComponentSpec spec;
    if (!j.is_object() || !j.contains("component_id") || !j["component_id"].is_string()) {
        return CR::failure(core::Errc::parse_error, "component: missing component_id");
    }
    spec.component_id = j["component_id"].get<std::string>();
    spec.repo_path = j.value("repo_path", std::string{});
    if (j.contains("path_globs")) {
        for (const auto& g : j["path_globs"]) {
            if (!g.is_string()) {
                return CR::failure(core::Errc::parse_error,
                                   spec.component_id + ": path_globs must be strings");
            }
            spec.path_globs.push_back(g.get<std::string>());
        }
    } else {
        spec.path_globs = {"**/*.java", "**/*.xml"};
    }
    if (j.contains("owner_timeline")) {
        for (const auto& p : j["owner_timeline"]) {
            core::OwnerPeriod period;
            if (!p.contains("team_id") || !p["team_id"].is_string()) {
                return CR::failure(core::Errc::parse_error,
                                   spec.component_id + ": owner period missing team_id");
            }
            period.team_id = p["team_id"].get<std::string>();
            const auto start = parse_day(p, "start", spec.component_id);
            if (!start.ok()) return CR::failure(start.error().code, start.error().message);
            period.start_day = start.value();
            if (p.contains("end") && !p["end"].is_null()) {
                const auto end = parse_day(p, "end", spec.component_id);
                if (!end.ok()) return CR::failure(end.error().code, end.error().message);
                period.end_day = end.value();
            }
            spec.owner_timeline.push_back(std::move(period));
        }
    }
    if (j.contains("split_events")) {
        for (const auto& e : j["split_events"]) {
            core::SplitEvent ev;
            const auto day = parse_day(e, "date", spec.component_id);
            if (!day.ok()) return CR::failure(day.error().code, day.error().message);
            ev.day = day.value();
            ev.description = e.value("description", std::string{});
            spec.split_events.push_back(std::move(ev));
        }
    }
    if (const auto v = spec.validate(); !v.ok()) {
        return CR::failure(v.error().code, v.error().message);
    }
    return spec;
}

void read_optional_path(const json& j, const char* key, std::optional<std::string>& out) {
    if (j.contains(key) && j[key].is_string()) out = j[key].get<std::string>();
}

}  // namespace

core::Result<RunConfig> parse_config(const json& j) {
    if (!j.is_object()) {
        return R::failure(core::Errc::parse_error, "config: expected a JSON object");
    }
    RunConfig c;
    if (j.contains("epoch")) {
        if (!j["epoch"].is_string()) {
            return R::failure(core::Errc::parse_error, "config: epoch must be a date string");
        }
        const auto d = core::parse_date(j["epoch"].get<std::string>());
        if (!d) {
            return R::failure(core::Errc::parse_error,
                              "config: invalid epoch '" + j["epoch"].get<std::string>() + "'");
        }
        c.epoch = *d;
    }
    if (!core::is_monday(c.epoch)) {
        return R::failure(core::Errc::invalid_argument,
                          "config: epoch " + core::format_date(c.epoch) + " is not a Monday");
    }
    c.alpha = j.value("alpha", 0.05);
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) {
        return R::failure(core::Errc::invalid_argument, "config: alpha must be in (0, 1)");
    }
    c.min_n = j.value("min_n", std::int64_t{5});
    if (c.min_n < 2) {
        return R::failure(core::Errc::invalid_argument, "config: min_n must be >= 2");
    }
    c.merge_commits = j.value("merge_commits", false);
    c.window_weeks = j.value("window_weeks", std::int64_t{1});
    if (c.window_weeks < 1) {
        return R::failure(core::Errc::invalid_argument, "config: window_weeks must be >= 1");
    }
    c.strict = j.value("strict", false);
    c.require_all_measures = j.value("require_all_measures", false);
    c.force_segmentation = j.value("force_segmentation", false);
    c.no_segmentation = j.value("no_segmentation", false);
    c.jobs = j.value("jobs", 0);
    if (c.jobs < 0) {
        return R::failure(core::Errc::invalid_argument, "config: jobs must be >= 0");
    }
    c.output_dir = j.value("output_dir", std::string("out"));
    c.store_dir = j.value("store_dir", std::string("store"));
    c.format = j.value("format", std::string("json"));
    if (c.format != "json" && c.format != "csv" && c.format != "markdown" &&
        c.format != "all") {
        return R::failure(core::Errc::invalid_argument,
                          "config: unknown format '" + c.format + "'");
    }
    c.base_dir = j.value("base_dir", std::string("."));

    if (j.contains("inputs")) {
        const auto& in = j["inputs"];
        read_optional_path(in, "commits_git_log", c.inputs.commits_git_log);
        read_optional_path(in, "commits_jsonl", c.inputs.commits_jsonl);
        read_optional_path(in, "prs", c.inputs.prs);
        read_optional_path(in, "tickets", c.inputs.tickets);
        read_optional_path(in, "td_issues", c.inputs.td_issues);
        read_optional_path(in, "affiliations", c.inputs.affiliations);
        read_optional_path(in, "aliases", c.inputs.aliases);
        read_optional_path(in, "sizes", c.inputs.sizes);
        read_optional_path(in, "source_tree", c.inputs.source_tree);
    }

    std::set<std::string> seen_ids;
    if (j.contains("components")) {
        for (const auto& jc : j["components"]) {
            auto comp = parse_component(jc);
            if (!comp.ok()) return R::failure(comp.error().code, comp.error().message);
            if (!seen_ids.insert(comp.value().component_id).second) {
                return R::failure(core::Errc::invalid_argument,
                                  "config: duplicate component_id " +
                                      comp.value().component_id);
            }
            if (jc.contains("inputs")) {
                InputPaths overrides;
                const auto& in = jc["inputs"];
                read_optional_path(in, "commits_git_log", overrides.commits_git_log);
                read_optional_path(in, "commits_jsonl", overrides.commits_jsonl);
                read_optional_path(in, "source_tree", overrides.source_tree);
                c.component_inputs[comp.value().component_id] = overrides;
            }
            c.components.push_back(std::move(comp).value());
        }
    }
    return c;
}

core::Result<RunConfig> parse_config_text(const std::string& text) {
    const json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        return R::failure(core::Errc::parse_error, "config: invalid JSON");
    }
    return parse_config(j);
}

std::string resolve_path(const RunConfig& config, const std::string& path) {
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(config.base_dir) / p).string();
}

}  // namespace ocam::run
