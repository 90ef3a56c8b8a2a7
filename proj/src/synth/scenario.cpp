#include "synth/scenario.hpp"

#include <algorithm>
#include <deque>
#include <fstream>

#include "core/records.hpp"
#include "synth/rng.hpp"

namespace ocam::synth {

using nlohmann::json;
using nlohmann::ordered_json;

core::Result<Scenario> parse_scenario(const json& j) {
    using R = core::Result<Scenario>;
    if (!j.is_object()) {
        return R::failure(core::Errc::parse_error, "scenario: expected a JSON object");
    }
    Scenario s;
    s.seed = j.value("seed", std::uint64_t{1});
    s.component_id = j.value("component_id", std::string("SYN1"));
    s.weeks = j.value("weeks", std::int64_t{90});
    if (j.contains("teams")) {
        s.teams.clear();
        for (const auto& t : j["teams"]) {
            if (!t.is_string()) {
                return R::failure(core::Errc::parse_error, "scenario: teams must be strings");
            }
            s.teams.push_back(t.get<std::string>());
        }
    }
    if (j.contains("split_week") && !j["split_week"].is_null()) {
        s.split_week = core::WeekIndex{j["split_week"].get<std::int64_t>()};
    }
    s.coupling_before = j.value("coupling_before", 0.0);
    s.coupling_after = j.value("coupling_after", 0.0);
    s.noise_scale = j.value("noise_scale", 0.0);
    if (j.contains("event_rates")) {
        const auto& r = j["event_rates"];
        s.rates.commits = r.value("commits", s.rates.commits);
        s.rates.prs = r.value("prs", s.rates.prs);
        s.rates.tickets = r.value("tickets", s.rates.tickets);
    }
    s.loc = j.value("loc", std::int64_t{10000});
    s.base_tdd = j.value("base_tdd", 0.2);
    if (j.contains("epoch")) {
        const auto d = core::parse_date(j["epoch"].get<std::string>());
        if (!d || !core::is_monday(*d)) {
            return R::failure(core::Errc::parse_error,
                              "scenario: epoch must be a Monday date");
        }
        s.epoch = *d;
    }

    if (s.weeks < 1) return R::failure(core::Errc::invalid_argument, "scenario: weeks < 1");
    if (s.noise_scale < 0) {
        return R::failure(core::Errc::invalid_argument, "scenario: negative noise_scale");
    }
    if (s.rates.commits < 0 || s.rates.prs < 0 || s.rates.tickets < 0) {
        return R::failure(core::Errc::invalid_argument, "scenario: negative event rate");
    }
    if (s.loc <= 0) return R::failure(core::Errc::invalid_argument, "scenario: loc <= 0");
    if (s.teams.empty()) {
        return R::failure(core::Errc::invalid_argument, "scenario: need at least one team");
    }
    if (s.split_week && (s.split_week->value < 2 || s.split_week->value > s.weeks)) {
        return R::failure(core::Errc::invalid_argument,
                          "scenario: split_week outside (1, weeks]");
    }
    if (s.split_week && s.teams.size() < 3) {
        return R::failure(core::Errc::invalid_argument,
                          "scenario: a split needs at least three teams");
    }
    return s;
}

core::Result<Scenario> parse_scenario_text(const std::string& text) {
    const json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        return core::Result<Scenario>::failure(core::Errc::parse_error,
                                               "scenario: invalid JSON");
    }
    return parse_scenario(j);
}

namespace {

struct Member {
    std::string id;
    std::string email;
    std::string name;
};

std::vector<Member> make_members(const std::string& team, int count) {
    std::vector<Member> out;
    for (int i = 0; i < count; ++i) {
        Member m;
        m.id = team + ".dev" + std::to_string(i);
        m.email = m.id + "@synth.example";
        m.name = team + " Dev " + std::to_string(i);
        out.push_back(std::move(m));
    }
    return out;
}

std::string instant_in_week(core::WeekIndex week, const core::Date& epoch, SplitMix64& rng,
                            std::int64_t min_second = 0) {
    const core::Instant start = core::week_start(week, epoch);
    const std::int64_t offset =
        std::clamp<std::int64_t>(min_second + rng.range(0, 6 * 86400 - 1), 0,
                                 7 * 86400 - 1);
    return core::format_instant_utc(core::Instant{start.seconds + offset});
}

double coupling_for_week(const Scenario& s, core::WeekIndex w) {
    if (s.split_week && w >= *s.split_week) return s.coupling_after;
    return s.coupling_before;
}

// Target degree path. Non-zero coupling rides a one-sided ramp so the
// accumulated drift stays monotone in the degree; zero coupling is an
// i.i.d. level, which keeps the tau null valid.
std::vector<double> degree_targets(const Scenario& s, SplitMix64& rng) {
    std::vector<double> targets(static_cast<std::size_t>(s.weeks) + 1, 0.0);
    const std::int64_t split = s.split_week ? s.split_week->value : s.weeks + 1;

    auto fill_segment = [&](std::int64_t first, std::int64_t last, double beta) {
        const std::int64_t len = last - first + 1;
        if (len <= 0) return;
        for (std::int64_t w = first; w <= last; ++w) {
            const double frac =
                len == 1 ? 0.0
                         : static_cast<double>(w - first) / static_cast<double>(len - 1);
            double target;
            if (beta > 0) {
                target = 48.0 - 32.0 * frac;  // descending, below 50
            } else if (beta < 0) {
                target = 52.0 + 32.0 * frac;  // ascending, above 50
            } else {
                target = 35.0 + 30.0 * rng.uniform();
            }
            target += s.noise_scale * 2.0 * rng.gauss();
            if (beta > 0) target = std::clamp(target, 4.0, 49.5);
            else if (beta < 0) target = std::clamp(target, 50.5, 96.0);
            else target = std::clamp(target, 2.0, 98.0);
            targets[static_cast<std::size_t>(w)] = target;
        }
    };
    fill_segment(1, std::min(split - 1, s.weeks), s.coupling_before);
    if (split <= s.weeks) fill_segment(split, s.weeks, s.coupling_after);
    return targets;
}

}  // namespace

core::Result<GeneratedFileset> generate_scenario(const Scenario& s,
                                                 const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    using R = core::Result<GeneratedFileset>;

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        return R::failure(core::Errc::io_error,
                          "cannot create " + out_dir.string() + ": " + ec.message());
    }

    SplitMix64 root(s.seed);
    SplitMix64 rng_degree = root.fork(1);
    SplitMix64 rng_commits = root.fork(2);
    SplitMix64 rng_items = root.fork(3);
    SplitMix64 rng_debt = root.fork(4);

    const std::string owner_before = s.teams[0];
    const std::string owner_after = s.split_week ? s.teams[1] : s.teams[0];
    const std::string sibling_after = s.split_week ? s.teams[2] : s.teams[0];
    const std::string outsider_team = s.teams.size() > (s.split_week ? 3u : 1u)
                                          ? s.teams[s.split_week ? 3 : 1]
                                          : "external";

    const auto owner_after_members = make_members(owner_after, 3);
    const auto sibling_members = make_members(sibling_after, 3);
    const auto outsiders = make_members(outsider_team, 3);
    // pre-split the owning team is the union that later splits in two
    std::vector<Member> owner_before_members = owner_after_members;
    owner_before_members.insert(owner_before_members.end(), sibling_members.begin(),
                                sibling_members.end());

    const std::string split_date =
        s.split_week ? core::format_date(
                           core::week_start(*s.split_week, s.epoch).utc_date())
                     : "";

    auto owner_pool_at = [&](core::WeekIndex w) -> const std::vector<Member>& {
        return (s.split_week && w >= *s.split_week) ? owner_after_members
                                                    : owner_before_members;
    };

    const auto targets = degree_targets(s, rng_degree);

    GeneratedFileset manifest;
    std::string commits_jsonl, prs_jsonl, tickets_jsonl, issues_jsonl, sizes_csv;
    sizes_csv = "component_id,week,loc\n";

    // rolling technical-debt book; records are written once, when an
    // issue closes or at the end while still open
    struct OpenIssue {
        std::string id;
        std::int64_t micro;
        core::WeekIndex intro_week;
        std::string introduced_at;
    };
    std::deque<OpenIssue> open_issues;
    std::int64_t issue_seq = 0;
    std::int64_t current_micro = 0;
    double tdd_target = s.base_tdd;
    const double drift_unit = 0.02 * s.base_tdd;

    auto emit_issue = [&](const OpenIssue& issue, const std::string& removed_at) {
        ordered_json ji;
        ji["issue_id"] = issue.id;
        ji["component_id"] = s.component_id;
        if (issue.micro % core::kMicroPerMinute == 0) {
            ji["remediation_minutes"] = issue.micro / core::kMicroPerMinute;
        } else {
            ji["remediation_minutes"] = core::minutes_from_micro(issue.micro);
        }
        ji["introduced_at"] = issue.introduced_at;
        if (!removed_at.empty()) ji["removed_at"] = removed_at;
        issues_jsonl += ji.dump() + "\n";
        ++manifest.issue_count;
    };
    auto open_new_issue = [&](std::int64_t amount, core::WeekIndex week) {
        OpenIssue issue;
        issue.id = "TD-" + std::to_string(++issue_seq);
        issue.micro = amount;
        issue.intro_week = week;
        issue.introduced_at = instant_in_week(week, s.epoch, rng_debt);
        open_issues.push_back(std::move(issue));
        current_micro += amount;
    };

    for (std::int64_t wv = 1; wv <= s.weeks; ++wv) {
        const core::WeekIndex week{wv};
        const double share = targets[static_cast<std::size_t>(wv)];
        const auto& owner_pool = owner_pool_at(week);

        auto pick = [&](const std::vector<Member>& pool, SplitMix64& rng) -> const Member& {
            return pool[static_cast<std::size_t>(
                rng.range(0, static_cast<std::int64_t>(pool.size()) - 1))];
        };

        // commits (every week has at least one, so every week is active)
        const std::int64_t n_commits = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(
                   std::llround(s.rates.commits + rng_commits.gauss() *
                                                      std::sqrt(s.rates.commits) * 0.5)));
        const std::int64_t owner_commits = std::clamp<std::int64_t>(
            static_cast<std::int64_t>(std::llround(
                static_cast<double>(n_commits) * share / 100.0)),
            0, n_commits);
        for (std::int64_t k = 0; k < n_commits; ++k) {
            const bool ours = k < owner_commits;
            const Member& author =
                ours ? pick(owner_pool, rng_commits) : pick(outsiders, rng_commits);
            ordered_json jc;
            char hash[32];
            std::snprintf(hash, sizeof hash, "%016llx%04llx",
                          static_cast<unsigned long long>(rng_commits.next()),
                          static_cast<unsigned long long>(wv));
            jc["hash"] = hash;
            jc["author_name"] = author.name;
            jc["author_email"] = author.email;
            jc["timestamp"] = instant_in_week(week, s.epoch, rng_commits);
            ordered_json file;
            file["path"] =
                "src/main/java/Module" + std::to_string(rng_commits.range(0, 9)) + ".java";
            file["additions"] = rng_commits.range(5, 120);
            file["deletions"] = rng_commits.range(0, 60);
            jc["files"] = ordered_json::array({file});
            commits_jsonl += jc.dump() + "\n";
            ++manifest.commit_count;
        }

        // pull requests and tickets
        auto emit_items = [&](double rate, const char* prefix, std::string& sink,
                              std::int64_t& counter) {
            const std::int64_t n = std::max<std::int64_t>(
                0, static_cast<std::int64_t>(std::llround(
                       rate + rng_items.gauss() * std::sqrt(std::max(rate, 1.0)) * 0.5)));
            const std::int64_t owned = std::clamp<std::int64_t>(
                static_cast<std::int64_t>(
                    std::llround(static_cast<double>(n) * share / 100.0)),
                0, n);
            for (std::int64_t k = 0; k < n; ++k) {
                const bool ours = k < owned;
                const Member& author =
                    ours ? pick(owner_pool, rng_items) : pick(outsiders, rng_items);
                ordered_json ji;
                ji["item_id"] =
                    std::string(prefix) + std::to_string(wv) + "-" + std::to_string(k);
                ji["author_name"] = author.name;
                ji["author_email"] = author.email;
                ji["created_at"] = instant_in_week(week, s.epoch, rng_items);
                ji["component_id"] = s.component_id;
                sink += ji.dump() + "\n";
                ++counter;
            }
        };
        emit_items(s.rates.prs, "PR-", prs_jsonl, manifest.pr_count);
        emit_items(s.rates.tickets, "T-", tickets_jsonl, manifest.ticket_count);

        // technical debt: walk the target path, realise it as issues
        if (wv > 1) {
            const double beta = coupling_for_week(s, week);
            const double drift = -beta * (share - 50.0) / 50.0 * drift_unit +
                                 s.noise_scale * rng_debt.gauss() * drift_unit;
            tdd_target = std::max(0.001, tdd_target + drift);
        }
        const std::int64_t target_micro = std::llround(
            tdd_target * static_cast<double>(s.loc) *
            static_cast<double>(core::kMicroPerMinute));
        std::int64_t delta = target_micro - current_micro;
        if (delta > 0) {
            const std::int64_t parts = rng_debt.range(1, 3);
            std::int64_t remaining = delta;
            for (std::int64_t p = 0; p < parts && remaining > 0; ++p) {
                std::int64_t amount =
                    p == parts - 1 ? remaining
                                   : std::max<std::int64_t>(1, remaining / (parts - p) +
                                                                   rng_debt.range(-50, 50));
                amount = std::min(amount, remaining);
                open_new_issue(amount, week);
                remaining -= amount;
            }
        } else if (delta < 0) {
            std::int64_t to_remove = -delta;
            while (to_remove > 0 && !open_issues.empty() &&
                   open_issues.front().intro_week < week) {
                OpenIssue victim = std::move(open_issues.front());
                open_issues.pop_front();
                emit_issue(victim, instant_in_week(week, s.epoch, rng_debt, 6 * 86400));
                current_micro -= victim.micro;
                to_remove -= victim.micro;
            }
            if (to_remove < 0) {
                // closed slightly too much; top back up with a fresh issue
                open_new_issue(-to_remove, week);
            }
        }

        sizes_csv += s.component_id + "," + std::to_string(wv) + "," +
                     std::to_string(s.loc) + "\n";
    }

    // issues still open at the end of the window
    for (const auto& issue : open_issues) emit_issue(issue, "");

    // affiliations and aliases
    ordered_json affiliations = ordered_json::array();
    ordered_json aliases = ordered_json::object();
    const std::string epoch_str = core::format_date(s.epoch);
    auto add_member = [&](const Member& m, const std::string& team, const std::string& start,
                          const std::optional<std::string>& end) {
        ordered_json ja;
        ja["canonical_id"] = m.id;
        ja["team_id"] = team;
        ja["start"] = start;
        if (end) ja["end"] = *end;
        affiliations.push_back(std::move(ja));
        aliases[m.email] = m.id;
    };
    if (s.split_week) {
        for (const auto& m : owner_after_members) {
            add_member(m, owner_before, epoch_str, split_date);
            add_member(m, owner_after, split_date, std::nullopt);
        }
        for (const auto& m : sibling_members) {
            add_member(m, owner_before, epoch_str, split_date);
            add_member(m, sibling_after, split_date, std::nullopt);
        }
    } else {
        for (const auto& m : owner_before_members) {
            add_member(m, owner_before, epoch_str, std::nullopt);
        }
    }
    for (const auto& m : outsiders) add_member(m, outsider_team, epoch_str, std::nullopt);

    // run configuration covering this fileset
    ordered_json config;
    config["epoch"] = epoch_str;
    config["alpha"] = 0.05;
    config["min_n"] = 5;
    config["merge_commits"] = false;
    config["output_dir"] = "out";
    config["store_dir"] = "store";
    config["format"] = "json";
    ordered_json component;
    component["component_id"] = s.component_id;
    component["repo_path"] = "synthetic";
    component["path_globs"] = ordered_json::array({"**/*.java", "**/*.xml"});
    ordered_json owner_periods = ordered_json::array();
    if (s.split_week) {
        ordered_json p1;
        p1["team_id"] = owner_before;
        p1["start"] = epoch_str;
        p1["end"] = split_date;
        owner_periods.push_back(p1);
        ordered_json p2;
        p2["team_id"] = owner_after;
        p2["start"] = split_date;
        owner_periods.push_back(p2);
        ordered_json ev;
        ev["date"] = split_date;
        ev["description"] = "team split";
        component["split_events"] = ordered_json::array({ev});
    } else {
        ordered_json p1;
        p1["team_id"] = owner_before;
        p1["start"] = epoch_str;
        owner_periods.push_back(p1);
        component["split_events"] = ordered_json::array();
    }
    component["owner_timeline"] = owner_periods;
    config["components"] = ordered_json::array({component});
    ordered_json inputs;
    inputs["commits_jsonl"] = "commits.jsonl";
    inputs["prs"] = "prs.jsonl";
    inputs["tickets"] = "tickets.jsonl";
    inputs["td_issues"] = "td_issues.jsonl";
    inputs["affiliations"] = "affiliations.json";
    inputs["aliases"] = "aliases.json";
    inputs["sizes"] = "sizes.csv";
    config["inputs"] = inputs;

    auto write = [&](const std::string& name, const std::string& content) -> bool {
        std::ofstream out(out_dir / name, std::ios::binary);
        if (!out) return false;
        out << content;
        manifest.files.push_back(name);
        return out.good();
    };
    if (!write("commits.jsonl", commits_jsonl) || !write("prs.jsonl", prs_jsonl) ||
        !write("tickets.jsonl", tickets_jsonl) || !write("td_issues.jsonl", issues_jsonl) ||
        !write("affiliations.json", affiliations.dump(1) + "\n") ||
        !write("aliases.json", aliases.dump(1) + "\n") || !write("sizes.csv", sizes_csv) ||
        !write("config.json", config.dump(1) + "\n")) {
        return R::failure(core::Errc::io_error, "failed writing fileset to " +
                                                    out_dir.string());
    }
    return manifest;
}

}  // namespace ocam::synth
