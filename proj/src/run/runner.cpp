#include "run/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "ingest/events.hpp"
#include "ingest/loc_count.hpp"
#include "ingest/numstat.hpp"
#include "metrics/series.hpp"
#include "pipeline/analysis.hpp"
#include "pipeline/plot_export.hpp"
#include "pipeline/report.hpp"

namespace ocam::run {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

core::Result<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return core::Result<std::string>::failure(core::Errc::io_error,
                                                  "cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

ordered_json diagnostics_json(const ingest::IngestDiagnostics& d) {
    ordered_json j;
    j["records_read"] = d.records_read;
    j["records_rejected"] = d.records_rejected;
    j["unknown_identities"] = d.unknown_identities;
    j["warnings"] = d.warnings;
    return j;
}

const InputPaths* component_overrides(const RunConfig& config, const std::string& id) {
    const auto it = config.component_inputs.find(id);
    return it == config.component_inputs.end() ? nullptr : &it->second;
}

}  // namespace

core::Result<bool> write_file_atomic(const std::string& path, const std::string& content) {
    using R = core::Result<bool>;
    const fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
        if (ec) {
            return R::failure(core::Errc::io_error, "cannot create directory " +
                                                        target.parent_path().string());
        }
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return R::failure(core::Errc::io_error, "cannot write " + tmp.string());
        out << content;
        if (!out.good()) {
            return R::failure(core::Errc::io_error, "write failed: " + tmp.string());
        }
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        return R::failure(core::Errc::io_error,
                          "cannot rename " + tmp.string() + " to " + path);
    }
    return true;
}

core::Result<IngestOutcome> run_ingest(const RunConfig& config) {
    using R = core::Result<IngestOutcome>;
    if (config.components.empty()) {
        return R::failure(core::Errc::invalid_argument, "config has no components");
    }

    // shared tables
    core::AliasMap aliases;
    if (config.inputs.aliases) {
        const auto text = read_file(resolve_path(config, *config.inputs.aliases));
        if (!text.ok()) return R::failure(text.error().code, text.error().message);
        std::istringstream ss(text.value());
        auto loaded = ingest::load_aliases(ss);
        if (!loaded.ok()) return R::failure(loaded.error().code, loaded.error().message);
        aliases = std::move(loaded).value();
    }
    std::string affiliations_text = "[]";
    if (config.inputs.affiliations) {
        const auto text = read_file(resolve_path(config, *config.inputs.affiliations));
        if (!text.ok()) return R::failure(text.error().code, text.error().message);
        affiliations_text = text.value();
    }
    {
        std::istringstream ss(affiliations_text);
        const auto timeline = ingest::load_affiliations(ss);
        if (!timeline.ok()) {
            return R::failure(timeline.error().code, timeline.error().message);
        }
    }

    core::IdentityResolver resolver(aliases);
    ingest::IngestDiagnostics totals;
    ordered_json per_source = ordered_json::object();

    // commits, per component (globs differ)
    std::string commits_out;
    std::map<std::string, std::set<core::WeekIndex>> active_by_component;
    std::map<std::string, std::vector<core::CommitRecord>> commits_by_component;
    for (const auto& component : config.components) {
        const InputPaths* overrides = component_overrides(config, component.component_id);
        std::optional<std::string> git_log = config.inputs.commits_git_log;
        std::optional<std::string> jsonl = config.inputs.commits_jsonl;
        if (overrides) {
            if (overrides->commits_git_log) git_log = overrides->commits_git_log;
            if (overrides->commits_jsonl) jsonl = overrides->commits_jsonl;
        }
        if (!git_log && !jsonl) {
            return R::failure(core::Errc::invalid_argument,
                              component.component_id +
                                  ": no commit input configured "
                                  "(commits_git_log or commits_jsonl)");
        }
        ingest::IngestDiagnostics diag;
        std::vector<core::CommitRecord> commits;
        if (git_log) {
            const auto text = read_file(resolve_path(config, *git_log));
            if (!text.ok()) return R::failure(text.error().code, text.error().message);
            std::istringstream ss(text.value());
            auto parsed = ingest::parse_git_numstat(ss, component, resolver);
            commits = std::move(parsed.commits);
            diag = std::move(parsed.diagnostics);
        } else {
            const auto text = read_file(resolve_path(config, *jsonl));
            if (!text.ok()) return R::failure(text.error().code, text.error().message);
            std::istringstream ss(text.value());
            auto parsed = ingest::load_commits_jsonl(ss, component, resolver);
            commits = std::move(parsed.commits);
            diag = std::move(parsed.diagnostics);
        }
        std::sort(commits.begin(), commits.end(),
                  [](const core::CommitRecord& a, const core::CommitRecord& b) {
                      if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                      return a.hash < b.hash;
                  });
        for (const auto& c : commits) {
            const auto w = core::week_of(c.timestamp, config.epoch);
            if (!w.ok()) {
                diag.reject("commit " + c.hash + ": " + w.error().message);
                continue;
            }
            if (!c.is_merge || config.merge_commits) {
                active_by_component[component.component_id].insert(w.value());
            }
            commits_out += ingest::commit_to_json(c).dump() + "\n";
            commits_by_component[component.component_id].push_back(c);
        }
        per_source["commits:" + component.component_id] = diagnostics_json(diag);
        totals.merge(diag);
    }

    // shared event streams
    const std::set<std::string> known_components = [&] {
        std::set<std::string> s;
        for (const auto& c : config.components) s.insert(c.component_id);
        return s;
    }();

    auto load_item_stream = [&](const std::optional<std::string>& path,
                                ingest::EventKind kind, const char* label,
                                std::string& out) -> core::Result<bool> {
        using LR = core::Result<bool>;
        if (!path) return true;
        const auto text = read_file(resolve_path(config, *path));
        if (!text.ok()) return LR::failure(text.error().code, text.error().message);
        std::istringstream ss(text.value());
        auto loaded = ingest::load_items(ss, kind, resolver);
        for (auto& rec : loaded.records) {
            if (!known_components.count(rec.component_id)) {
                loaded.diagnostics.warn(std::string(label) + " " + rec.item_id +
                                        ": unknown component " + rec.component_id);
                continue;
            }
            out += ingest::item_to_json(rec).dump() + "\n";
        }
        per_source[label] = diagnostics_json(loaded.diagnostics);
        totals.merge(loaded.diagnostics);
        return true;
    };

    std::string prs_out, tickets_out, issues_out, sizes_out;
    if (auto r = load_item_stream(config.inputs.prs, ingest::EventKind::pull_request,
                                  "prs", prs_out);
        !r.ok()) {
        return R::failure(r.error().code, r.error().message);
    }
    if (auto r = load_item_stream(config.inputs.tickets, ingest::EventKind::ticket,
                                  "tickets", tickets_out);
        !r.ok()) {
        return R::failure(r.error().code, r.error().message);
    }

    if (config.inputs.td_issues) {
        const auto text = read_file(resolve_path(config, *config.inputs.td_issues));
        if (!text.ok()) return R::failure(text.error().code, text.error().message);
        std::istringstream ss(text.value());
        auto loaded = ingest::load_td_issues(ss);
        std::int64_t open_issues = 0, removed_issues = 0;
        for (auto& rec : loaded.records) {
            if (!known_components.count(rec.component_id)) {
                loaded.diagnostics.warn("td issue " + rec.issue_id + ": unknown component " +
                                        rec.component_id);
                continue;
            }
            (rec.removed_at ? removed_issues : open_issues) += 1;
            issues_out += ingest::td_issue_to_json(rec).dump() + "\n";
        }
        // exports that never record removal dates overstate the TD
        // stock; surfaced as a diagnostic, never silently corrected
        if (removed_issues == 0 && open_issues > 0) {
            loaded.diagnostics.warn(
                "td_issues export has no removal dates at all; the TD stock can only "
                "grow and will overstate debt if issues were in fact repaid");
        }
        auto source = diagnostics_json(loaded.diagnostics);
        source["open_issues"] = open_issues;
        source["removed_issues"] = removed_issues;
        per_source["td_issues"] = std::move(source);
        totals.merge(loaded.diagnostics);
    }

    std::map<std::string, std::map<core::WeekIndex, std::int64_t>> sizes_by_component;
    if (config.inputs.sizes) {
        const auto text = read_file(resolve_path(config, *config.inputs.sizes));
        if (!text.ok()) return R::failure(text.error().code, text.error().message);
        std::istringstream ss(text.value());
        auto loaded = ingest::load_sizes_csv(ss);
        for (const auto& snap : loaded.records) {
            if (!known_components.count(snap.component_id)) {
                loaded.diagnostics.warn("sizes.csv: unknown component " + snap.component_id);
                continue;
            }
            sizes_by_component[snap.component_id][snap.week] = snap.loc;
        }
        per_source["sizes"] = diagnostics_json(loaded.diagnostics);
        totals.merge(loaded.diagnostics);
    }

    // source-tree line counting fills the gaps when no CSV rows exist
    for (const auto& component : config.components) {
        if (sizes_by_component.count(component.component_id)) continue;
        const InputPaths* overrides = component_overrides(config, component.component_id);
        std::optional<std::string> tree = config.inputs.source_tree;
        if (overrides && overrides->source_tree) tree = overrides->source_tree;
        if (!tree) continue;
        fs::path root = fs::path(resolve_path(config, *tree));
        if (!component.repo_path.empty() && fs::exists(root / component.repo_path)) {
            root /= component.repo_path;
        }
        auto counted = ingest::count_lines(root, component.path_globs);
        per_source["loc:" + component.component_id] = diagnostics_json(counted.diagnostics);
        totals.merge(counted.diagnostics);
        if (counted.loc <= 0) {
            totals.warn(component.component_id +
                        ": line counting found no code, sizes unavailable");
            continue;
        }
        for (const auto week : active_by_component[component.component_id]) {
            sizes_by_component[component.component_id][week] = counted.loc;
        }
    }
    sizes_out = "component_id,week,loc\n";
    for (const auto& [component, weeks] : sizes_by_component) {
        for (const auto& [week, loc] : weeks) {
            sizes_out += component + "," + std::to_string(week.value) + "," +
                         std::to_string(loc) + "\n";
        }
    }

    // identity table for diagnostics
    ordered_json identities = ordered_json::array();
    for (const auto& [id, ident] : resolver.identities()) {
        ordered_json ji;
        ji["canonical_id"] = id;
        ji["raw_names"] = ident.raw_names;
        ji["raw_emails"] = ident.raw_emails;
        identities.push_back(std::move(ji));
    }
    totals.unknown_identities = resolver.unknown_count();

    ordered_json summary;
    summary["records_read"] = totals.records_read;
    summary["records_rejected"] = totals.records_rejected;
    summary["unknown_identities"] = totals.unknown_identities;
    summary["warnings"] = totals.warnings;
    summary["sources"] = per_source;

    const fs::path store(config.store_dir);
    ordered_json meta;
    meta["epoch"] = core::format_date(config.epoch);
    meta["merge_commits"] = config.merge_commits;
    const std::string aliases_text = [&] {
        ordered_json j = ordered_json::object();
        for (const auto& [email, id] : std::map<std::string, std::string>(aliases.begin(),
                                                                          aliases.end())) {
            j[email] = id;
        }
        return j.dump(1) + "\n";
    }();
    for (const auto& [name, content] :
         std::initializer_list<std::pair<std::string, const std::string&>>{
             {"commits.jsonl", commits_out},
             {"prs.jsonl", prs_out},
             {"tickets.jsonl", tickets_out},
             {"td_issues.jsonl", issues_out},
             {"sizes.csv", sizes_out},
             {"affiliations.json", affiliations_text},
             {"aliases.json", aliases_text}}) {
        if (auto w = write_file_atomic((store / name).string(), content); !w.ok()) {
            return R::failure(w.error().code, w.error().message);
        }
    }
    if (auto w = write_file_atomic((store / "meta.json").string(), meta.dump(1) + "\n");
        !w.ok()) {
        return R::failure(w.error().code, w.error().message);
    }
    if (auto w = write_file_atomic((store / "identities.json").string(),
                                   identities.dump(1) + "\n");
        !w.ok()) {
        return R::failure(w.error().code, w.error().message);
    }
    if (auto w = write_file_atomic((store / "diagnostics.json").string(),
                                   summary.dump(1) + "\n");
        !w.ok()) {
        return R::failure(w.error().code, w.error().message);
    }

    IngestOutcome outcome;
    outcome.summary = std::move(summary);
    outcome.any_rejected = totals.records_rejected > 0;
    return outcome;
}

namespace {

struct ComponentData {
    std::vector<core::CommitRecord> commits;
    std::vector<core::CreatedItemRecord> prs;
    std::vector<core::CreatedItemRecord> tickets;
    std::vector<core::TdIssueRecord> issues;
    std::vector<core::SizeSnapshot> sizes;
};

struct ComponentOutcome {
    std::string component_id;
    bool skipped = false;
    std::string skip_reason;
    metrics::WeeklySeries series;
    pipeline::SegmentedAnalysis analysis;
    std::vector<core::WeekIndex> split_weeks;
    std::vector<std::string> warnings;
};

std::string metrics_csv(const metrics::WeeklySeries& series) {
    std::string out = "week,c,ch,p,t,degree,td_minutes,loc,tdd\n";
    auto cell = [](const std::optional<double>& v) {
        return v ? fmt(*v, 6) : std::string{};
    };
    for (const auto& o : series.observations) {
        out += std::to_string(o.week.value);
        out += "," + cell(o.contribution.commits_pct);
        out += "," + cell(o.contribution.churn_pct);
        out += "," + cell(o.contribution.prs_pct);
        out += "," + cell(o.contribution.tickets_pct);
        out += "," + fmt(o.contribution.degree, 6);
        out += "," + fmt(o.tdd.td_minutes(), 6);
        out += "," + std::to_string(o.tdd.loc);
        out += "," + fmt(o.tdd.tdd(), 9);
        out += "\n";
    }
    return out;
}

}  // namespace

core::Result<ordered_json> run_analyze(const RunConfig& config) {
    using R = core::Result<ordered_json>;
    if (config.components.empty()) {
        return R::failure(core::Errc::invalid_argument, "config has no components");
    }
    const fs::path store(config.store_dir);
    for (const char* required : {"commits.jsonl", "affiliations.json"}) {
        if (!fs::exists(store / required)) {
            return R::failure(core::Errc::io_error,
                              "normalized store is missing " + (store / required).string() +
                                  " (run ingest first)");
        }
    }

    // load the store
    const auto commits_text = read_file((store / "commits.jsonl").string());
    if (!commits_text.ok()) {
        return R::failure(commits_text.error().code, commits_text.error().message);
    }
    std::istringstream commits_ss(commits_text.value());
    auto commits = ingest::load_normalized_commits(commits_ss);

    ComponentData all;
    all.commits = std::move(commits.commits);
    {
        const auto text = read_file((store / "prs.jsonl").string());
        if (text.ok()) {
            std::istringstream ss(text.value());
            for (std::string line; std::getline(ss, line);) {
                if (line.empty()) continue;
                const auto j = nlohmann::json::parse(line, nullptr, false);
                if (j.is_discarded()) continue;
                core::CreatedItemRecord rec;
                rec.component_id = j.value("component_id", "");
                rec.item_id = j.value("item_id", "");
                rec.creator_id = j.value("creator", "");
                const auto t = core::parse_instant(j.value("created_at", ""));
                if (!t || rec.component_id.empty()) continue;
                rec.created_at = *t;
                all.prs.push_back(std::move(rec));
            }
        }
    }
    {
        const auto text = read_file((store / "tickets.jsonl").string());
        if (text.ok()) {
            std::istringstream ss(text.value());
            for (std::string line; std::getline(ss, line);) {
                if (line.empty()) continue;
                const auto j = nlohmann::json::parse(line, nullptr, false);
                if (j.is_discarded()) continue;
                core::CreatedItemRecord rec;
                rec.component_id = j.value("component_id", "");
                rec.item_id = j.value("item_id", "");
                rec.creator_id = j.value("creator", "");
                const auto t = core::parse_instant(j.value("created_at", ""));
                if (!t || rec.component_id.empty()) continue;
                rec.created_at = *t;
                all.tickets.push_back(std::move(rec));
            }
        }
    }
    {
        const auto text = read_file((store / "td_issues.jsonl").string());
        if (text.ok()) {
            std::istringstream ss(text.value());
            auto loaded = ingest::load_td_issues(ss);
            all.issues = std::move(loaded.records);
        }
    }
    {
        const auto text = read_file((store / "sizes.csv").string());
        if (text.ok()) {
            std::istringstream ss(text.value());
            auto loaded = ingest::load_sizes_csv(ss);
            all.sizes = std::move(loaded.records);
        }
    }
    const auto affiliations_text = read_file((store / "affiliations.json").string());
    if (!affiliations_text.ok()) {
        return R::failure(affiliations_text.error().code, affiliations_text.error().message);
    }
    std::istringstream aff_ss(affiliations_text.value());
    auto timeline = ingest::load_affiliations(aff_ss);
    if (!timeline.ok()) return R::failure(timeline.error().code, timeline.error().message);

    // per-component workers
    const std::size_t n_components = config.components.size();
    std::vector<ComponentOutcome> outcomes(n_components);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex failure_mutex;

    auto work = [&]() {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= n_components || failed.load()) return;
            const auto& component = config.components[idx];
            ComponentOutcome& out = outcomes[idx];
            out.component_id = component.component_id;

            ComponentData mine;
            for (const auto& c : all.commits) {
                if (c.component_id == component.component_id) mine.commits.push_back(c);
            }
            for (const auto& p : all.prs) {
                if (p.component_id == component.component_id) mine.prs.push_back(p);
            }
            for (const auto& t : all.tickets) {
                if (t.component_id == component.component_id) mine.tickets.push_back(t);
            }
            for (const auto& i : all.issues) {
                if (i.component_id == component.component_id) mine.issues.push_back(i);
            }
            for (const auto& s : all.sizes) {
                if (s.component_id == component.component_id) mine.sizes.push_back(s);
            }

            metrics::SeriesOptions options;
            options.epoch = config.epoch;
            options.include_merges = config.merge_commits;
            options.window_weeks = config.window_weeks;
            options.require_all_measures = config.require_all_measures;

            auto built = metrics::build_weekly_series(component, mine.commits, mine.prs,
                                                      mine.tickets, mine.issues, mine.sizes,
                                                      timeline.value(), options);
            if (!built.ok()) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed = true;
                failure_message = built.error().message;
                return;
            }
            out.warnings = built.value().warnings;
            out.series = std::move(built).value().series;
            if (out.series.observations.empty()) {
                out.skipped = true;
                out.skip_reason = "no active development weeks";
                continue;
            }

            pipeline::AnalysisConfig acfg;
            acfg.epoch = config.epoch;
            acfg.alpha = config.alpha;
            acfg.min_n = config.min_n;
            acfg.force_segmentation = config.force_segmentation;
            acfg.no_segmentation = config.no_segmentation;
            auto analysis = pipeline::run_analysis(out.series, component, acfg);
            if (!analysis.ok()) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed = true;
                failure_message = analysis.error().message;
                return;
            }
            out.analysis = std::move(analysis).value();
            for (const auto& ev : component.split_events) {
                const auto w = core::week_of(core::Instant{ev.day * 86400}, config.epoch);
                out.split_weeks.push_back(w.ok() ? w.value() : core::WeekIndex{1});
            }
        }
    };

    unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                    : std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(n_components));
    {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }
    if (failed.load()) {
        return R::failure(core::Errc::data_error, failure_message);
    }

    // single-threaded reduction in configured component order
    std::vector<pipeline::SegmentedAnalysis> analyses;
    ordered_json skipped = ordered_json::array();
    for (const auto& out : outcomes) {
        if (out.skipped) {
            ordered_json js;
            js["component_id"] = out.component_id;
            js["reason"] = out.skip_reason;
            skipped.push_back(std::move(js));
        } else {
            analyses.push_back(out.analysis);
        }
    }

    const auto report = pipeline::report_to_json(analyses, config.alpha, config.min_n);
    const auto files = pipeline::render_report(report, config.format);
    if (!files.ok()) return R::failure(files.error().code, files.error().message);

    const fs::path out_dir(config.output_dir);
    // the machine-readable report is always kept alongside rendered tables
    if (auto w = write_file_atomic((out_dir / "report.json").string(),
                                   report.dump(1) + "\n");
        !w.ok()) {
        return R::failure(w.error().code, w.error().message);
    }
    for (const auto& f : files.value()) {
        if (f.name == "report.json") continue;
        if (auto w = write_file_atomic((out_dir / f.name).string(), f.content); !w.ok()) {
            return R::failure(w.error().code, w.error().message);
        }
    }
    for (const auto& out : outcomes) {
        if (out.skipped) continue;
        if (auto w = write_file_atomic(
                (out_dir / "metrics" / (out.component_id + "_metrics.csv")).string(),
                metrics_csv(out.series));
            !w.ok()) {
            return R::failure(w.error().code, w.error().message);
        }
        for (const auto& plot :
             pipeline::export_plot_data(out.series, out.analysis, out.split_weeks)) {
            if (auto w = write_file_atomic((out_dir / "plots" / plot.name).string(),
                                           plot.content);
                !w.ok()) {
                return R::failure(w.error().code, w.error().message);
            }
        }
    }

    // summary for the caller
    ordered_json summary;
    summary["output_dir"] = config.output_dir;
    summary["skipped"] = skipped;
    ordered_json comps = ordered_json::array();
    for (const auto& out : outcomes) {
        if (out.skipped) continue;
        ordered_json jc;
        jc["component_id"] = out.component_id;
        jc["n"] = static_cast<std::int64_t>(out.series.observations.size());
        jc["segmentation_applied"] = out.analysis.segmentation_applied;
        ordered_json segs = ordered_json::array();
        for (const auto& seg : out.analysis.segments) {
            ordered_json js;
            js["label"] = seg.label;
            js["n"] = seg.n;
            if (seg.kendall) {
                js["tau"] = seg.kendall->tau_b;
                js["p"] = seg.kendall->p_value;
                js["magnitude"] = std::string(stats::to_string(*seg.magnitude));
            } else if (seg.skip_reason) {
                js["skip_reason"] = *seg.skip_reason;
            }
            segs.push_back(std::move(js));
        }
        jc["segments"] = std::move(segs);
        jc["warnings"] = out.warnings;
        comps.push_back(std::move(jc));
    }
    summary["components"] = std::move(comps);
    return summary;
}

core::Result<ordered_json> run_render(const std::string& report_path,
                                      const std::string& format,
                                      const std::string& out_dir) {
    using R = core::Result<ordered_json>;
    const auto text = read_file(report_path);
    if (!text.ok()) return R::failure(text.error().code, text.error().message);
    const auto report = ordered_json::parse(text.value(), nullptr, false);
    if (report.is_discarded() || !report.is_object() || !report.contains("components")) {
        return R::failure(core::Errc::parse_error,
                          report_path + " is not a valid report.json");
    }
    const auto files = pipeline::render_report(report, format);
    if (!files.ok()) return R::failure(files.error().code, files.error().message);
    ordered_json written = ordered_json::array();
    for (const auto& f : files.value()) {
        const auto path = (fs::path(out_dir) / f.name).string();
        if (auto w = write_file_atomic(path, f.content); !w.ok()) {
            return R::failure(w.error().code, w.error().message);
        }
        written.push_back(path);
    }
    ordered_json summary;
    summary["files"] = std::move(written);
    return summary;
}

}  // namespace ocam::run
