#include "pipeline/report.hpp"

#include <cstdio>

namespace ocam::pipeline {

using nlohmann::ordered_json;

namespace {

std::string fmt(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

ordered_json descriptive_json(const std::optional<stats::DescriptiveStats>& d) {
    if (!d) return nullptr;
    ordered_json j;
    j["n"] = d->n;
    j["mean"] = d->mean;
    if (d->std_dev) j["std"] = *d->std_dev;
    else j["std"] = nullptr;
    j["min"] = d->min;
    j["max"] = d->max;
    return j;
}

ordered_json sw_json(const VariableAnalysis& v) {
    if (!v.shapiro) {
        if (v.shapiro_note) {
            ordered_json j;
            j["note"] = *v.shapiro_note;
            return j;
        }
        return nullptr;
    }
    ordered_json j;
    j["w"] = v.shapiro->w_statistic;
    j["p"] = v.shapiro->p_value;
    return j;
}

ordered_json mwu_entry_json(const MwuEntry& e, std::int64_t n_total) {
    if (!e.result) {
        if (!e.skip_reason) return nullptr;
        ordered_json j;
        j["skip_reason"] = *e.skip_reason;
        return j;
    }
    ordered_json j;
    j["u"] = e.result->u_statistic;
    j["p"] = e.result->p_value;
    j["n"] = n_total;
    j["method"] = e.result->exact ? "exact" : "normal-approx";
    return j;
}

}  // namespace

std::string format_p(double p) {
    if (p < 0.001) return "<0.001";
    return fmt(p, 3);
}

std::string format_tau(double tau) { return fmt(tau, 3); }

ordered_json analysis_to_json(const SegmentedAnalysis& a, double alpha) {
    ordered_json jc;
    jc["component_id"] = a.component_id;
    jc["segmentation_applied"] = a.segmentation_applied;

    ordered_json segments = ordered_json::array();
    for (const auto& seg : a.segments) {
        ordered_json js;
        js["label"] = seg.label;
        js["n"] = seg.n;
        js["descriptive"]["degree"] = descriptive_json(seg.degree.descriptive);
        js["descriptive"]["tdd"] = descriptive_json(seg.tdd.descriptive);
        js["sw"]["degree"] = sw_json(seg.degree);
        js["sw"]["tdd"] = sw_json(seg.tdd);
        if (seg.kendall) {
            ordered_json jk;
            jk["tau"] = seg.kendall->tau_b;
            jk["p"] = seg.kendall->p_value;
            jk["magnitude"] = std::string(stats::to_string(*seg.magnitude));
            jk["significant_05"] = seg.kendall->p_value < 0.05;
            jk["significant_01"] = seg.kendall->p_value < 0.01;
            js["kendall"] = jk;
        } else {
            js["kendall"] = nullptr;
            if (seg.skip_reason) js["skip_reason"] = *seg.skip_reason;
        }
        segments.push_back(std::move(js));
    }
    jc["segments"] = std::move(segments);

    if (a.boundaries.size() == 1) {
        const auto& b = a.boundaries[0];
        ordered_json jm;
        jm["split_week"] = b.split_week.value;
        jm["degree"] = mwu_entry_json(b.degree, b.n_total);
        jm["tdd"] = mwu_entry_json(b.tdd, b.n_total);
        jc["mwu"] = jm;
    } else if (a.boundaries.size() > 1) {
        ordered_json arr = ordered_json::array();
        for (const auto& b : a.boundaries) {
            ordered_json jm;
            jm["split_week"] = b.split_week.value;
            jm["degree"] = mwu_entry_json(b.degree, b.n_total);
            jm["tdd"] = mwu_entry_json(b.tdd, b.n_total);
            arr.push_back(std::move(jm));
        }
        jc["mwu_boundaries"] = std::move(arr);
    } else {
        jc["mwu"] = nullptr;
    }
    jc["skip_reasons"] = a.skip_reasons;
    (void)alpha;
    return jc;
}

ordered_json report_to_json(const std::vector<SegmentedAnalysis>& analyses, double alpha,
                            std::int64_t min_n) {
    ordered_json j;
    j["alpha"] = alpha;
    j["min_n"] = min_n;
    ordered_json comps = ordered_json::array();
    for (const auto& a : analyses) comps.push_back(analysis_to_json(a, alpha));
    j["components"] = std::move(comps);
    return j;
}

namespace {

// variable-aware descriptive formatting: contribution degree uses one
// decimal for min/max (percent scale), TDD keeps three everywhere
std::string fmt_desc(double v, const std::string& variable, bool is_extent) {
    if (variable == "degree" && is_extent) return fmt(v, 1);
    return fmt(v, 3);
}

std::string render_descriptive_csv(const ordered_json& report) {
    std::string out = "component_id,variable,segment,n,mean,std,min,max,note\n";
    for (const auto& c : report["components"]) {
        for (const char* variable : {"degree", "tdd"}) {
            for (const auto& seg : c["segments"]) {
                const auto& d = seg["descriptive"][variable];
                out += c["component_id"].get<std::string>();
                out += ",";
                out += variable;
                out += "," + seg["label"].get<std::string>();
                out += "," + std::to_string(seg["n"].get<std::int64_t>());
                if (d.is_null()) {
                    out += ",-,-,-,-," + csv_escape(
                        "† no descriptive statistics due to lack or limited number of "
                        "observations");
                } else {
                    out += "," + fmt_desc(d["mean"].get<double>(), variable, false);
                    out += d["std"].is_null()
                               ? ",-"
                               : "," + fmt_desc(d["std"].get<double>(), variable, false);
                    out += "," + fmt_desc(d["min"].get<double>(), variable, true);
                    out += "," + fmt_desc(d["max"].get<double>(), variable, true);
                    out += ",";
                }
                out += "\n";
            }
        }
    }
    return out;
}

void mwu_rows(std::string& out, const ordered_json& jm, const std::string& component) {
    for (const char* variable : {"degree", "tdd"}) {
        const auto& e = jm[variable];
        out += component;
        out += ",";
        out += variable;
        out += "," + std::to_string(jm["split_week"].get<std::int64_t>());
        if (e.is_null() || !e.contains("p")) {
            std::string reason = "† no statistical test due to lack or limited number of "
                                 "observations";
            if (!e.is_null() && e.contains("skip_reason")) {
                reason = "† " + e["skip_reason"].get<std::string>();
            }
            out += ",-,-,-,-," + csv_escape(reason);
        } else {
            const double p = e["p"].get<double>();
            out += "," + format_p(p);
            out += "," + std::to_string(e["n"].get<std::int64_t>());
            out += std::string(",") + yesno(p < 0.05) + "," + yesno(p < 0.01) + ",";
        }
        out += "\n";
    }
}

std::string render_mwu_csv(const ordered_json& report) {
    std::string out =
        "component_id,variable,split_week,p_value,n,significant_05,significant_01,note\n";
    for (const auto& c : report["components"]) {
        const std::string component = c["component_id"].get<std::string>();
        if (c.contains("mwu") && !c["mwu"].is_null()) {
            mwu_rows(out, c["mwu"], component);
        } else if (c.contains("mwu_boundaries")) {
            for (const auto& b : c["mwu_boundaries"]) mwu_rows(out, b, component);
        }
    }
    return out;
}

std::string render_kendall_csv(const ordered_json& report) {
    std::string out =
        "component_id,segment,p_value,tau,magnitude,n,significant_05,significant_01,note\n";
    for (const auto& c : report["components"]) {
        for (const auto& seg : c["segments"]) {
            out += c["component_id"].get<std::string>();
            out += "," + seg["label"].get<std::string>();
            const auto& k = seg["kendall"];
            if (k.is_null()) {
                out += ",-,-,-," + std::to_string(seg["n"].get<std::int64_t>()) + ",-,-,";
                std::string reason = "† no statistical test";
                if (seg.contains("skip_reason")) {
                    reason = "† " + seg["skip_reason"].get<std::string>();
                }
                out += csv_escape(reason);
            } else {
                const double p = k["p"].get<double>();
                out += "," + format_p(p);
                out += "," + format_tau(k["tau"].get<double>());
                out += "," + k["magnitude"].get<std::string>();
                out += "," + std::to_string(seg["n"].get<std::int64_t>());
                out += std::string(",") + yesno(p < 0.05) + "," + yesno(p < 0.01) + ",";
            }
            out += "\n";
        }
    }
    return out;
}

void markdown_kendall_row(std::string& out, const ordered_json& seg,
                          const std::string& component) {
    const auto& k = seg["kendall"];
    out += "| " + component + " | " + seg["label"].get<std::string>() + " | ";
    if (k.is_null()) {
        out += "- | - | - | " + std::to_string(seg["n"].get<std::int64_t>()) + " |";
        if (seg.contains("skip_reason")) out += " †";
        out += "\n";
        return;
    }
    const double p = k["p"].get<double>();
    const bool sig = p < 0.05;
    const std::string pstr = format_p(p);
    const std::string taustr = format_tau(k["tau"].get<double>());
    const std::string mag = k["magnitude"].get<std::string>();
    auto bold = [&](const std::string& s) { return sig ? "**" + s + "**" : s; };
    out += bold(pstr) + " | " + bold(taustr);
    if (p < 0.01) out += " §";
    else if (sig) out += " \\*";
    out += " | " + bold(mag) + " | " + std::to_string(seg["n"].get<std::int64_t>()) + " |\n";
}

std::string render_markdown(const ordered_json& report) {
    std::string out = "# Ownership-contribution alignment and TDD report\n\n";

    out += "## Descriptive statistics\n\n";
    out += "| Component | Variable | Segment | N | Mean | STD | Min | Max |\n";
    out += "|---|---|---|---|---|---|---|---|\n";
    bool any_desc_skip = false;
    for (const auto& c : report["components"]) {
        const std::string component = c["component_id"].get<std::string>();
        for (const char* variable : {"degree", "tdd"}) {
            for (const auto& seg : c["segments"]) {
                const auto& d = seg["descriptive"][variable];
                out += "| " + component + " | " + variable + " | " +
                       seg["label"].get<std::string>() + " | " +
                       std::to_string(seg["n"].get<std::int64_t>()) + " | ";
                if (d.is_null()) {
                    out += "- | - | - | - |†\n";
                    any_desc_skip = true;
                } else {
                    out += fmt_desc(d["mean"].get<double>(), variable, false) + " | ";
                    out += (d["std"].is_null()
                                ? std::string("-")
                                : fmt_desc(d["std"].get<double>(), variable, false)) +
                           " | ";
                    out += fmt_desc(d["min"].get<double>(), variable, true) + " | ";
                    out += fmt_desc(d["max"].get<double>(), variable, true) + " |\n";
                }
            }
        }
    }
    if (any_desc_skip) {
        out += "\n† No descriptive statistics due to lack or limited number of "
               "observations.\n";
    }

    out += "\n## Split-confound test (Mann-Whitney U)\n\n";
    out += "| Component | Variable | Split week | P-value | N |\n";
    out += "|---|---|---|---|---|\n";
    bool any_mwu_skip = false;
    auto md_mwu_rows = [&](const ordered_json& jm, const std::string& component) {
        for (const char* variable : {"degree", "tdd"}) {
            const auto& e = jm[variable];
            out += "| " + component + " | " + variable + " | " +
                   std::to_string(jm["split_week"].get<std::int64_t>()) + " | ";
            if (e.is_null() || !e.contains("p")) {
                out += "- | - |†\n";
                any_mwu_skip = true;
            } else {
                const double p = e["p"].get<double>();
                const std::string pstr = format_p(p);
                out += (p < 0.05 ? "**" + pstr + "**" : pstr) + " | " +
                       std::to_string(e["n"].get<std::int64_t>()) + " |\n";
            }
        }
    };
    for (const auto& c : report["components"]) {
        const std::string component = c["component_id"].get<std::string>();
        if (c.contains("mwu") && !c["mwu"].is_null()) {
            md_mwu_rows(c["mwu"], component);
        } else if (c.contains("mwu_boundaries")) {
            for (const auto& b : c["mwu_boundaries"]) md_mwu_rows(b, component);
        }
    }
    if (any_mwu_skip) {
        out += "\n† No statistical test due to lack or limited number of observations.\n";
    }

    out += "\n## Correlation (Kendall's tau-b)\n\n";
    out += "| Component | Segment | P-value | tau | Magnitude | N |\n";
    out += "|---|---|---|---|---|---|\n";
    bool any_kendall_skip = false;
    for (const auto& c : report["components"]) {
        const std::string component = c["component_id"].get<std::string>();
        for (const auto& seg : c["segments"]) {
            if (seg["kendall"].is_null()) any_kendall_skip = true;
            markdown_kendall_row(out, seg, component);
        }
    }
    out += "\n\\* Correlation is significant at the 0.05 level (2-tailed).\n";
    out += "§ Correlation is significant at the 0.01 level (2-tailed).\n";
    if (any_kendall_skip) {
        out += "† No statistical test due to lack or limited number of observations.\n";
    }
    return out;
}

}  // namespace

core::Result<std::vector<ReportFile>> render_report(const ordered_json& report,
                                                    const std::string& format) {
    using R = core::Result<std::vector<ReportFile>>;
    std::vector<ReportFile> files;
    if (format == "json" || format == "all") {
        files.push_back({"report.json", report.dump(1) + "\n"});
    }
    if (format == "csv" || format == "all") {
        files.push_back({"descriptive.csv", render_descriptive_csv(report)});
        files.push_back({"mwu.csv", render_mwu_csv(report)});
        files.push_back({"kendall.csv", render_kendall_csv(report)});
    }
    if (format == "markdown" || format == "all") {
        files.push_back({"report.md", render_markdown(report)});
    }
    if (files.empty()) {
        return R::failure(core::Errc::invalid_argument, "unknown report format: " + format);
    }
    return files;
}

}  // namespace ocam::pipeline
