// ocam command-line front end. All functionality is reached through
// the C API of the shared library; this translation unit only parses
// arguments, merges configuration and prints summaries.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ocam/ocam.h"

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

enum LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("OCAM_LOG");
    if (!env) return kInfo;
    const std::string v(env);
    if (v == "quiet" || v == "error") return kQuiet;
    if (v == "debug" || v == "trace") return kDebug;
    return kInfo;
}

int fail(const std::string& message, int code = 1) {
    std::cerr << "ocam: " << message << "\n";
    return code;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

std::string take(char* s) {
    std::string out = s ? s : "";
    ocam_string_free(s);
    return out;
}

struct Overrides {
    CLI::App* cmd = nullptr;
    std::string epoch;
    double alpha = 0.05;
    std::int64_t min_n = 5;
    std::int64_t window_weeks = 1;
    bool merge_commits = false;
    bool strict = false;
    bool force_segmentation = false;
    bool no_segmentation = false;
    int jobs = 0;
    std::string output_dir;
    std::string store_dir;
    std::string format;

    void attach(CLI::App* app) {
        cmd = app;
        app->add_option("--epoch", epoch, "Epoch Monday (YYYY-MM-DD)");
        app->add_option("--alpha", alpha, "Significance level");
        app->add_option("--min-n", min_n, "Minimum observations per tested segment");
        app->add_option("--window-weeks", window_weeks, "Rolling contribution window");
        app->add_flag("--merge-commits", merge_commits, "Include merge commits");
        app->add_flag("--strict", strict, "Fail the run when any record is rejected");
        app->add_flag("--force-segmentation", force_segmentation,
                      "Always analyse segments separately");
        app->add_flag("--no-segmentation", no_segmentation,
                      "Ignore split events, analyse full series");
        app->add_option("--jobs", jobs, "Parallel per-component workers (0 = auto)");
        app->add_option("--output-dir", output_dir, "Report/plot output directory");
        app->add_option("--store-dir", store_dir, "Normalized event store directory");
        app->add_option("--format", format, "Report format: json|csv|markdown|all");
    }

    // command-line flags win over the config file
    void apply(json& config) const {
        auto set_if = [&](const char* flag, const char* key, auto value) {
            if (cmd->count(flag) > 0) config[key] = value;
        };
        set_if("--epoch", "epoch", epoch);
        set_if("--alpha", "alpha", alpha);
        set_if("--min-n", "min_n", min_n);
        set_if("--window-weeks", "window_weeks", window_weeks);
        set_if("--merge-commits", "merge_commits", merge_commits);
        set_if("--strict", "strict", strict);
        set_if("--force-segmentation", "force_segmentation", force_segmentation);
        set_if("--no-segmentation", "no_segmentation", no_segmentation);
        set_if("--jobs", "jobs", jobs);
        set_if("--output-dir", "output_dir", output_dir);
        set_if("--store-dir", "store_dir", store_dir);
        set_if("--format", "format", format);
    }
};

int load_config(const std::string& path, const Overrides& overrides, std::string& out) {
    std::string text;
    if (!read_file(path, text)) {
        return fail("cannot open config file " + path);
    }
    json config = json::parse(text, nullptr, false);
    if (config.is_discarded()) {
        return fail("config file " + path + " is not valid JSON");
    }
    if (!config.contains("base_dir")) {
        const auto parent = std::filesystem::path(path).parent_path();
        config["base_dir"] = parent.empty() ? "." : parent.string();
    }
    overrides.apply(config);
    out = config.dump();
    return 0;
}

int exit_code_for(ocam_status status) {
    if (status == OCAM_OK) return 0;
    if (status == OCAM_ERR_REJECTED) return 2;
    return 1;
}

void print_analyze_summary(const std::string& summary_text) {
    const json summary = json::parse(summary_text, nullptr, false);
    if (summary.is_discarded()) return;
    for (const auto& c : summary["components"]) {
        std::ostringstream line;
        line << c["component_id"].get<std::string>() << ": n="
             << c["n"].get<std::int64_t>()
             << (c["segmentation_applied"].get<bool>() ? ", segmented" : ", full series");
        for (const auto& seg : c["segments"]) {
            line << " | " << seg["label"].get<std::string>() << " n="
                 << seg["n"].get<std::int64_t>();
            if (seg.contains("tau")) {
                char buf[64];
                std::snprintf(buf, sizeof buf, " tau=%.3f p=%.3g (%s)",
                              seg["tau"].get<double>(), seg["p"].get<double>(),
                              seg["magnitude"].get<std::string>().c_str());
                line << buf;
            } else {
                line << " skipped";
            }
        }
        std::cout << line.str() << "\n";
    }
    for (const auto& s : summary["skipped"]) {
        std::cout << s["component_id"].get<std::string>() << ": skipped ("
                  << s["reason"].get<std::string>() << ")\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mines development records into weekly ownership-contribution alignment "
                 "and technical-debt density, and runs the nonparametric analysis"};
    app.require_subcommand(1);
    const LogLevel level = log_level();

    std::string config_path, scenario_path, out_dir, report_path, report_format = "csv";

    auto* ingest = app.add_subcommand("ingest", "Validate inputs into the event store");
    ingest->add_option("--config", config_path, "Run configuration JSON")->required();
    Overrides ingest_overrides;
    ingest_overrides.attach(ingest);

    auto* analyze = app.add_subcommand("analyze", "Compute metrics, statistics, reports");
    analyze->add_option("--config", config_path, "Run configuration JSON")->required();
    Overrides analyze_overrides;
    analyze_overrides.attach(analyze);

    auto* report = app.add_subcommand("report", "Re-render an existing report.json");
    report->add_option("--report", report_path, "Path to report.json")->required();
    report->add_option("--format", report_format, "json|csv|markdown|all");
    report->add_option("--out", out_dir, "Output directory")->required();

    auto* synth = app.add_subcommand("synth", "Generate a synthetic input fileset");
    synth->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    synth->add_option("--out", out_dir, "Output directory")->required();

    auto* selftest = app.add_subcommand("selftest", "Run the oracle-equivalence suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // usage errors are exit 1, --help is 0
    }

    if (ingest->parsed() || analyze->parsed()) {
        const Overrides& overrides =
            ingest->parsed() ? ingest_overrides : analyze_overrides;
        std::string config_json;
        if (const int rc = load_config(config_path, overrides, config_json); rc != 0) {
            return rc;
        }
        ocam_run* run = nullptr;
        const ocam_status created = ocam_run_create(config_json.c_str(), &run);
        if (created != OCAM_OK) return fail(ocam_last_error());

        ocam_status status;
        if (ingest->parsed()) {
            char* diagnostics = nullptr;
            status = ocam_run_ingest(run, &diagnostics);
            const std::string text = take(diagnostics);
            if (!text.empty()) {
                const json d = json::parse(text, nullptr, false);
                if (!d.is_discarded() && level >= kInfo) {
                    std::cout << "records read: " << d["records_read"]
                              << ", rejected: " << d["records_rejected"]
                              << ", unknown identities: " << d["unknown_identities"]
                              << "\n";
                    if (level >= kDebug) {
                        for (const auto& w : d["warnings"]) {
                            std::cerr << "warning: " << w.get<std::string>() << "\n";
                        }
                    }
                }
            }
        } else {
            char* summary = nullptr;
            status = ocam_run_analyze(run, &summary);
            const std::string text = take(summary);
            if (status == OCAM_OK && level >= kInfo) print_analyze_summary(text);
        }
        if (status != OCAM_OK && level >= kQuiet) std::cerr << "ocam: " << ocam_last_error()
                                                            << "\n";
        ocam_run_destroy(run);
        return exit_code_for(status);
    }

    if (report->parsed()) {
        char* summary = nullptr;
        const ocam_status status = ocam_render_report(report_path.c_str(),
                                                      report_format.c_str(),
                                                      out_dir.c_str(), &summary);
        const std::string text = take(summary);
        if (status != OCAM_OK) return fail(ocam_last_error());
        if (level >= kInfo) {
            const json s = json::parse(text, nullptr, false);
            if (!s.is_discarded()) {
                for (const auto& f : s["files"]) {
                    std::cout << "wrote " << f.get<std::string>() << "\n";
                }
            }
        }
        return 0;
    }

    if (synth->parsed()) {
        std::string scenario_json;
        if (!read_file(scenario_path, scenario_json)) {
            return fail("cannot open scenario file " + scenario_path);
        }
        char* manifest = nullptr;
        const ocam_status status =
            ocam_synth_generate(scenario_json.c_str(), out_dir.c_str(), &manifest);
        const std::string text = take(manifest);
        if (status != OCAM_OK) return fail(ocam_last_error());
        if (level >= kInfo) {
            const json m = json::parse(text, nullptr, false);
            if (!m.is_discarded()) {
                std::cout << "generated " << m["commits"] << " commits, " << m["prs"]
                          << " prs, " << m["tickets"] << " tickets, " << m["td_issues"]
                          << " td issues in " << out_dir << "\n";
            }
        }
        return 0;
    }

    if (selftest->parsed()) {
        char* results = nullptr;
        const ocam_status status = ocam_selftest(&results);
        const std::string text = take(results);
        const json r = json::parse(text, nullptr, false);
        if (!r.is_discarded()) {
            for (const auto& c : r["checks"]) {
                std::cout << (c["passed"].get<bool>() ? "PASS " : "FAIL ")
                          << c["name"].get<std::string>() << " ("
                          << c["detail"].get<std::string>() << ")\n";
            }
        }
        if (status != OCAM_OK) return fail(ocam_last_error());
        return 0;
    }

    return fail("no subcommand given");
}
