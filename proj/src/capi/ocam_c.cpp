#include "ocam/ocam.h"

#include <cstring>
#include <exception>
#include <string>

#include "core/result.hpp"
#include "core/time.hpp"
#include "run/config.hpp"
#include "run/runner.hpp"
#include "run/selftest.hpp"
#include "stats/descriptive.hpp"
#include "stats/kendall.hpp"
#include "stats/magnitude.hpp"
#include "stats/mann_whitney.hpp"
#include "stats/shapiro_wilk.hpp"
#include "synth/scenario.hpp"

namespace {

thread_local std::string t_last_error;

ocam_status set_error(ocam_status status, const std::string& message) {
    t_last_error = message;
    return status;
}

ocam_status status_from(ocam::core::Errc code) {
    using ocam::core::Errc;
    switch (code) {
        case Errc::invalid_argument: return OCAM_ERR_INVALID_ARGUMENT;
        case Errc::out_of_range: return OCAM_ERR_INVALID_ARGUMENT;
        case Errc::io_error: return OCAM_ERR_IO;
        case Errc::parse_error: return OCAM_ERR_PARSE;
        case Errc::data_error: return OCAM_ERR_DATA;
        case Errc::undefined_result: return OCAM_ERR_UNDEFINED;
    }
    return OCAM_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void maybe_out(char** slot, const std::string& value) {
    if (slot) *slot = dup_string(value);
}

}  // namespace

struct ocam_run {
    ocam::run::RunConfig config;
};

extern "C" {

const char* ocam_version(void) { return "1.0.0"; }

const char* ocam_status_name(ocam_status status) {
    switch (status) {
        case OCAM_OK: return "ok";
        case OCAM_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case OCAM_ERR_PARSE: return "parse-error";
        case OCAM_ERR_IO: return "io-error";
        case OCAM_ERR_DATA: return "data-error";
        case OCAM_ERR_UNDEFINED: return "undefined-result";
        case OCAM_ERR_REJECTED: return "records-rejected";
        case OCAM_ERR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* ocam_last_error(void) { return t_last_error.c_str(); }

void ocam_string_free(char* s) { delete[] s; }

ocam_status ocam_run_create(const char* config_json, ocam_run** out_run) {
    if (!config_json || !out_run) {
        return set_error(OCAM_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out_run = nullptr;
    try {
        auto parsed = ocam::run::parse_config_text(config_json);
        if (!parsed.ok()) {
            return set_error(status_from(parsed.error().code), parsed.error().message);
        }
        *out_run = new ocam_run{std::move(parsed).value()};
        return OCAM_OK;
    } catch (const std::exception& e) {
        return set_error(OCAM_ERR_INTERNAL, e.what());
    }
}

void ocam_run_destroy(ocam_run* run) { delete run; }

ocam_status ocam_run_ingest(ocam_run* run, char** diagnostics_json_out) {
    if (!run) return set_error(OCAM_ERR_INVALID_ARGUMENT, "null run handle");
    try {
        auto outcome = ocam::run::run_ingest(run->config);
        if (!outcome.ok()) {
            return set_error(status_from(outcome.error().code), outcome.error().message);
        }
        maybe_out(diagnostics_json_out, outcome.value().summary.dump(1) + "\n");
        if (run->config.strict && outcome.value().any_rejected) {
            return set_error(OCAM_ERR_REJECTED, "strict mode: records were rejected");
        }
        return OCAM_OK;
    } catch (const std::exception& e) {
        return set_error(OCAM_ERR_INTERNAL, e.what());
    }
}

ocam_status ocam_run_analyze(ocam_run* run, char** summary_json_out) {
    if (!run) return set_error(OCAM_ERR_INVALID_ARGUMENT, "null run handle");
    try {
        auto summary = ocam::run::run_analyze(run->config);
        if (!summary.ok()) {
            return set_error(status_from(summary.error().code), summary.error().message);
        }
        maybe_out(summary_json_out, summary.value().dump(1) + "\n");
        return OCAM_OK;
    } catch (const std::exception& e) {
        return set_error(OCAM_ERR_INTERNAL, e.what());
    }
}

ocam_status ocam_render_report(const char* report_json_path, const char* format,
                               const char* out_dir, char** summary_json_out) {
    if (!report_json_path || !format || !out_dir) {
        return set_error(OCAM_ERR_INVALID_ARGUMENT, "null argument");
    }
    try {
        auto summary = ocam::run::run_render(report_json_path, format, out_dir);
        if (!summary.ok()) {
            return set_error(status_from(summary.error().code), summary.error().message);
        }
        maybe_out(summary_json_out, summary.value().dump(1) + "\n");
        return OCAM_OK;
    } catch (const std::exception& e) {
        return set_error(OCAM_ERR_INTERNAL, e.what());
    }
}

ocam_status ocam_synth_generate(const char* scenario_json, const char* out_dir,
                                char** manifest_json_out) {
    if (!scenario_json || !out_dir) {
        return set_error(OCAM_ERR_INVALID_ARGUMENT, "null argument");
    }
    try {
        auto scenario = ocam::synth::parse_scenario_text(scenario_json);
        if (!scenario.ok()) {
            return set_error(status_from(scenario.error().code), scenario.error().message);
        }
        auto manifest = ocam::synth::generate_scenario(scenario.value(), out_dir);
        if (!manifest.ok()) {
            return set_error(status_from(manifest.error().code), manifest.error().message);
        }
        nlohmann::ordered_json j;
        j["files"] = manifest.value().files;
        j["commits"] = manifest.value().commit_count;
        j["prs"] = manifest.value().pr_count;
        j["tickets"] = manifest.value().ticket_count;
        j["td_issues"] = manifest.value().issue_count;
        maybe_out(manifest_json_out, j.dump(1) + "\n");
        return OCAM_OK;
    } catch (const std::exception& e) {
        return set_error(OCAM_ERR_INTERNAL, e.what());
    }
}

ocam_status ocam_selftest(char** results_json_out) {
    try {
        const auto results = ocam::run::run_selftest();
        maybe_out(results_json_out, results.dump(1) + "\n");
        if (!results["all_passed"].get<bool>()) {
            return set_error(OCAM_ERR_DATA, "selftest: at least one check failed");
        }
        return OCAM_OK;
    } catch (const std::exception& e) {
        return set_error(OCAM_ERR_INTERNAL, e.what());
    }
}

ocam_status ocam_describe(const double* xs, size_t n, ocam_describe_result* out) {
    if (!xs || !out) return set_error(OCAM_ERR_INVALID_ARGUMENT, "null argument");
    const auto r = ocam::stats::describe({xs, n});
    if (!r.ok()) return set_error(status_from(r.error().code), r.error().message);
    out->n = r.value().n;
    out->mean = r.value().mean;
    out->has_std = r.value().std_dev.has_value() ? 1 : 0;
    out->std_dev = r.value().std_dev.value_or(0.0);
    out->min = r.value().min;
    out->max = r.value().max;
    return OCAM_OK;
}

ocam_status ocam_kendall_tau_b(const double* xs, const double* ys, size_t n,
                               ocam_kendall_result* out) {
    if (!xs || !ys || !out) return set_error(OCAM_ERR_INVALID_ARGUMENT, "null argument");
    const auto r = ocam::stats::kendall_tau_b({xs, n}, {ys, n});
    if (!r.ok()) return set_error(status_from(r.error().code), r.error().message);
    out->tau_b = r.value().tau_b;
    out->p_value = r.value().p_value;
    out->n = r.value().n;
    out->concordant = r.value().concordant;
    out->discordant = r.value().discordant;
    out->ties_x = r.value().ties_x;
    out->ties_y = r.value().ties_y;
    return OCAM_OK;
}

ocam_status ocam_mann_whitney_u(const double* xs, size_t n1, const double* ys, size_t n2,
                                int method, ocam_mwu_result* out) {
    if (!xs || !ys || !out) return set_error(OCAM_ERR_INVALID_ARGUMENT, "null argument");
    if (method < 0 || method > 2) {
        return set_error(OCAM_ERR_INVALID_ARGUMENT, "method must be 0, 1 or 2");
    }
    const auto r = ocam::stats::mann_whitney_u(
        {xs, n1}, {ys, n2}, static_cast<ocam::stats::MwuMethod>(method));
    if (!r.ok()) return set_error(status_from(r.error().code), r.error().message);
    out->u_statistic = r.value().u_statistic;
    out->p_value = r.value().p_value;
    out->n1 = r.value().n1;
    out->n2 = r.value().n2;
    out->exact = r.value().exact ? 1 : 0;
    return OCAM_OK;
}

ocam_status ocam_shapiro_wilk(const double* xs, size_t n, ocam_sw_result* out) {
    if (!xs || !out) return set_error(OCAM_ERR_INVALID_ARGUMENT, "null argument");
    const auto r = ocam::stats::shapiro_wilk({xs, n});
    if (!r.ok()) return set_error(status_from(r.error().code), r.error().message);
    out->w_statistic = r.value().w_statistic;
    out->p_value = r.value().p_value;
    out->n = r.value().n;
    return OCAM_OK;
}

ocam_status ocam_classify_magnitude(double tau_b, const char** label_out) {
    if (!label_out) return set_error(OCAM_ERR_INVALID_ARGUMENT, "null argument");
    if (tau_b < -1.0 || tau_b > 1.0) {
        return set_error(OCAM_ERR_INVALID_ARGUMENT, "tau_b outside [-1, 1]");
    }
    *label_out = ocam::stats::to_string(ocam::stats::classify_magnitude(tau_b)).data();
    return OCAM_OK;
}

ocam_status ocam_week_of(const char* timestamp_iso, const char* epoch_date,
                         int64_t* week_out) {
    if (!timestamp_iso || !epoch_date || !week_out) {
        return set_error(OCAM_ERR_INVALID_ARGUMENT, "null argument");
    }
    const auto epoch = ocam::core::parse_date(epoch_date);
    if (!epoch) return set_error(OCAM_ERR_PARSE, "invalid epoch date");
    const auto ts = ocam::core::parse_instant(timestamp_iso);
    if (!ts) return set_error(OCAM_ERR_PARSE, "invalid timestamp");
    const auto week = ocam::core::week_of(*ts, *epoch);
    if (!week.ok()) return set_error(status_from(week.error().code), week.error().message);
    *week_out = week.value().value;
    return OCAM_OK;
}

}  // extern "C"
