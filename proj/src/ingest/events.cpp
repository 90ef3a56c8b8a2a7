#include "ingest/events.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <string>

#include "core/glob.hpp"

namespace ocam::ingest {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

bool get_string(const json& j, const char* key, std::string& out) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return false;
    out = it->get<std::string>();
    return true;
}

bool get_instant(const json& j, const char* key, core::Instant& out) {
    std::string text;
    if (!get_string(j, key, text)) return false;
    const auto t = core::parse_instant(text);
    if (!t) return false;
    out = *t;
    return true;
}

core::MicroMinutes micro_from_minutes(double minutes) {
    return static_cast<core::MicroMinutes>(
        std::llround(minutes * static_cast<double>(core::kMicroPerMinute)));
}

json parse_line(const std::string& line) {
    return json::parse(line, nullptr, /*allow_exceptions=*/false);
}

}  // namespace

ItemLoadResult load_items(std::istream& stream, EventKind kind,
                          core::IdentityResolver& resolver) {
    ItemLoadResult out;
    auto& diag = out.diagnostics;
    const char* what = kind == EventKind::pull_request ? "pull request" : "ticket";
    std::set<std::pair<std::string, std::string>> seen;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++diag.records_read;
        const json j = parse_line(line);
        if (j.is_discarded() || !j.is_object()) {
            diag.reject(std::string(what) + " line " + std::to_string(lineno) +
                        ": invalid JSON");
            continue;
        }
        core::CreatedItemRecord rec;
        std::string author_name, author_email;
        if (!get_string(j, "item_id", rec.item_id) ||
            !get_string(j, "component_id", rec.component_id) ||
            !get_instant(j, "created_at", rec.created_at)) {
            diag.reject(std::string(what) + " line " + std::to_string(lineno) +
                        ": missing or invalid required field");
            continue;
        }
        get_string(j, "author_name", author_name);
        get_string(j, "author_email", author_email);
        const auto ident = resolver.resolve(author_name, author_email);
        if (!ident.ok()) {
            diag.reject(std::string(what) + " " + rec.item_id + ": " + ident.error().message);
            continue;
        }
        rec.creator_id = ident.value();
        if (!seen.insert({rec.component_id, rec.item_id}).second) {
            diag.reject(std::string(what) + " " + rec.item_id + ": duplicate item id");
            continue;
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

TdIssueLoadResult load_td_issues(std::istream& stream) {
    TdIssueLoadResult out;
    auto& diag = out.diagnostics;
    std::set<std::pair<std::string, std::string>> seen;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++diag.records_read;
        const json j = parse_line(line);
        if (j.is_discarded() || !j.is_object()) {
            diag.reject("td issue line " + std::to_string(lineno) + ": invalid JSON");
            continue;
        }
        core::TdIssueRecord rec;
        if (!get_string(j, "issue_id", rec.issue_id) ||
            !get_string(j, "component_id", rec.component_id) ||
            !get_instant(j, "introduced_at", rec.introduced_at) ||
            !j.contains("remediation_minutes") ||
            !j["remediation_minutes"].is_number()) {
            diag.reject("td issue line " + std::to_string(lineno) +
                        ": missing or invalid required field");
            continue;
        }
        const double minutes = j["remediation_minutes"].get<double>();
        if (minutes < 0) {
            diag.reject("td issue " + rec.issue_id + ": negative remediation time");
            continue;
        }
        rec.remediation = micro_from_minutes(minutes);
        if (j.contains("removed_at") && !j["removed_at"].is_null()) {
            core::Instant removed;
            if (!get_instant(j, "removed_at", removed)) {
                diag.reject("td issue " + rec.issue_id + ": invalid removed_at");
                continue;
            }
            if (removed <= rec.introduced_at) {
                diag.reject("td issue " + rec.issue_id +
                            ": removed_at not after introduced_at");
                continue;
            }
            rec.removed_at = removed;
        }
        if (!seen.insert({rec.component_id, rec.issue_id}).second) {
            diag.reject("td issue " + rec.issue_id + ": duplicate issue id");
            continue;
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

CommitJsonlResult load_commits_jsonl(std::istream& stream,
                                     const core::ComponentSpec& component,
                                     core::IdentityResolver& resolver) {
    CommitJsonlResult out;
    auto& diag = out.diagnostics;
    const std::int64_t unknown_before = resolver.unknown_count();
    std::set<std::string> seen_hashes;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++diag.records_read;
        const json j = parse_line(line);
        if (j.is_discarded() || !j.is_object()) {
            diag.reject("commit line " + std::to_string(lineno) + ": invalid JSON");
            continue;
        }
        core::CommitRecord rec;
        std::string author_name, author_email;
        if (!get_string(j, "hash", rec.hash) || !get_instant(j, "timestamp", rec.timestamp) ||
            !j.contains("files") || !j["files"].is_array()) {
            diag.reject("commit line " + std::to_string(lineno) +
                        ": missing or invalid required field");
            continue;
        }
        get_string(j, "author_name", author_name);
        get_string(j, "author_email", author_email);
        const auto ident = resolver.resolve(author_name, author_email);
        if (!ident.ok()) {
            diag.reject("commit " + rec.hash + ": " + ident.error().message);
            continue;
        }
        rec.author_id = ident.value();
        rec.component_id = component.component_id;
        rec.is_merge = j.value("is_merge", false);
        if (!seen_hashes.insert(rec.hash).second) {
            diag.reject("duplicate commit hash " + rec.hash);
            continue;
        }
        bool touched = false;
        bool bad_file = false;
        for (const auto& f : j["files"]) {
            std::string path;
            if (!f.is_object() || !get_string(f, "path", path)) {
                diag.warn("commit " + rec.hash + ": skipping malformed file entry");
                bad_file = true;
                continue;
            }
            const std::int64_t adds = f.value("additions", 0);
            const std::int64_t dels = f.value("deletions", 0);
            if (adds < 0 || dels < 0) {
                diag.warn("commit " + rec.hash + ": negative churn on " + path + ", skipped");
                bad_file = true;
                continue;
            }
            if (core::any_glob_match(component.path_globs, path)) {
                touched = true;
                rec.additions += adds;
                rec.deletions += dels;
            }
        }
        (void)bad_file;
        if (touched) out.commits.push_back(std::move(rec));
    }
    diag.unknown_identities = resolver.unknown_count() - unknown_before;
    return out;
}

SizeLoadResult load_sizes_csv(std::istream& stream) {
    SizeLoadResult out;
    auto& diag = out.diagnostics;
    std::string line;
    std::size_t lineno = 0;
    std::set<std::pair<std::string, std::int64_t>> seen;
    while (std::getline(stream, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("component_id", 0) == 0) continue;  // header
        ++diag.records_read;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                                       : line.find(',', c1 + 1);
        if (c2 == std::string::npos) {
            diag.reject("sizes.csv line " + std::to_string(lineno) + ": expected 3 columns");
            continue;
        }
        const std::string component = line.substr(0, c1);
        std::int64_t week = 0, loc = 0;
        const char* wb = line.data() + c1 + 1;
        const char* we = line.data() + c2;
        const char* lb = line.data() + c2 + 1;
        const char* le = line.data() + line.size();
        const auto wr = std::from_chars(wb, we, week);
        const auto lr = std::from_chars(lb, le, loc);
        if (wr.ec != std::errc() || wr.ptr != we || lr.ec != std::errc() || lr.ptr != le ||
            week < 1 || loc <= 0 || component.empty()) {
            diag.reject("sizes.csv line " + std::to_string(lineno) + ": invalid row");
            continue;
        }
        if (!seen.insert({component, week}).second) {
            diag.reject("sizes.csv line " + std::to_string(lineno) +
                        ": duplicate component/week");
            continue;
        }
        out.records.push_back(core::SizeSnapshot{component, core::WeekIndex{week}, loc});
    }
    return out;
}

core::Result<core::AffiliationTimeline> load_affiliations(std::istream& stream) {
    using R = core::Result<core::AffiliationTimeline>;
    json j = json::parse(stream, nullptr, false);
    if (j.is_discarded() || !j.is_array()) {
        return R::failure(core::Errc::parse_error,
                          "affiliations.json: expected a JSON array");
    }
    std::vector<core::Membership> memberships;
    for (const auto& entry : j) {
        core::Membership m;
        std::string start, end;
        if (!entry.is_object() || !get_string(entry, "canonical_id", m.canonical_id) ||
            !get_string(entry, "team_id", m.team_id) || !get_string(entry, "start", start)) {
            return R::failure(core::Errc::parse_error,
                              "affiliations.json: entry missing canonical_id/team_id/start");
        }
        const auto start_date = core::parse_date(start);
        if (!start_date) {
            return R::failure(core::Errc::parse_error,
                              "affiliations.json: bad start date '" + start + "'");
        }
        m.start_day = core::day_number(*start_date);
        if (entry.contains("end") && !entry["end"].is_null()) {
            if (!get_string(entry, "end", end)) {
                return R::failure(core::Errc::parse_error,
                                  "affiliations.json: bad end field");
            }
            const auto end_date = core::parse_date(end);
            if (!end_date) {
                return R::failure(core::Errc::parse_error,
                                  "affiliations.json: bad end date '" + end + "'");
            }
            m.end_day = core::day_number(*end_date);
        }
        memberships.push_back(std::move(m));
    }
    return core::AffiliationTimeline::create(std::move(memberships));
}

core::Result<core::AliasMap> load_aliases(std::istream& stream) {
    using R = core::Result<core::AliasMap>;
    json j = json::parse(stream, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return R::failure(core::Errc::parse_error, "aliases.json: expected a JSON object");
    }
    core::AliasMap map;
    for (const auto& [email, canonical] : j.items()) {
        if (!canonical.is_string() || canonical.get<std::string>().empty()) {
            return R::failure(core::Errc::parse_error,
                              "aliases.json: alias for '" + email + "' must be a string");
        }
        std::string key = email;
        for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        map[key] = canonical.get<std::string>();
    }
    return map;
}

ordered_json commit_to_json(const core::CommitRecord& r) {
    ordered_json j;
    j["component_id"] = r.component_id;
    j["hash"] = r.hash;
    j["author"] = r.author_id;
    j["timestamp"] = core::format_instant_utc(r.timestamp);
    j["additions"] = r.additions;
    j["deletions"] = r.deletions;
    j["is_merge"] = r.is_merge;
    return j;
}

ordered_json item_to_json(const core::CreatedItemRecord& r) {
    ordered_json j;
    j["component_id"] = r.component_id;
    j["item_id"] = r.item_id;
    j["creator"] = r.creator_id;
    j["created_at"] = core::format_instant_utc(r.created_at);
    return j;
}

ordered_json td_issue_to_json(const core::TdIssueRecord& r) {
    ordered_json j;
    j["component_id"] = r.component_id;
    j["issue_id"] = r.issue_id;
    if (r.remediation % core::kMicroPerMinute == 0) {
        j["remediation_minutes"] = r.remediation / core::kMicroPerMinute;
    } else {
        j["remediation_minutes"] = core::minutes_from_micro(r.remediation);
    }
    j["introduced_at"] = core::format_instant_utc(r.introduced_at);
    if (r.removed_at) j["removed_at"] = core::format_instant_utc(*r.removed_at);
    return j;
}

NormalizedCommitsResult load_normalized_commits(std::istream& stream) {
    NormalizedCommitsResult out;
    auto& diag = out.diagnostics;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++diag.records_read;
        const json j = parse_line(line);
        if (j.is_discarded() || !j.is_object()) {
            diag.reject("store commits line " + std::to_string(lineno) + ": invalid JSON");
            continue;
        }
        core::CommitRecord rec;
        if (!get_string(j, "component_id", rec.component_id) ||
            !get_string(j, "hash", rec.hash) || !get_string(j, "author", rec.author_id) ||
            !get_instant(j, "timestamp", rec.timestamp)) {
            diag.reject("store commits line " + std::to_string(lineno) + ": invalid record");
            continue;
        }
        rec.additions = j.value("additions", 0);
        rec.deletions = j.value("deletions", 0);
        rec.is_merge = j.value("is_merge", false);
        out.commits.push_back(std::move(rec));
    }
    return out;
}

}  // namespace ocam::ingest
