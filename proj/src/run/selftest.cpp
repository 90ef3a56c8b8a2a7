#include "run/selftest.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "core/time.hpp"
#include "metrics/contribution.hpp"
#include "metrics/tdd.hpp"
#include "stats/kendall.hpp"
#include "stats/magnitude.hpp"
#include "stats/mann_whitney.hpp"
#include "synth/oracles.hpp"
#include "synth/rng.hpp"

namespace ocam::run {

using nlohmann::ordered_json;

namespace {

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

Check check_week_anchor() {
    const core::Date epoch{2020, 1, 6};
    const auto t = core::parse_instant("2021-03-01T09:00:00Z");
    const auto w = core::week_of(*t, epoch);
    const bool ok = w.ok() && w.value().value == 61;
    return {"week_anchor_2021_03_01_is_week_61", ok,
            ok ? "week 61" : "unexpected week index"};
}

Check check_kendall_vs_brute_force() {
    synth::SplitMix64 rng(20240901);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = static_cast<std::size_t>(rng.range(2, 120));
        std::vector<double> xs(n), ys(n);
        for (std::size_t k = 0; k < n; ++k) {
            xs[k] = static_cast<double>(rng.range(0, 20));
            ys[k] = static_cast<double>(rng.range(0, 20));
        }
        const auto fast = stats::kendall_tau_b(xs, ys);
        const auto slow = synth::brute_force_tau(xs, ys);
        if (fast.ok() != slow.ok()) {
            return {"kendall_matches_brute_force", false, "definedness disagrees"};
        }
        if (!fast.ok()) continue;
        if (fast.value().concordant != slow.value().concordant ||
            fast.value().discordant != slow.value().discordant ||
            fast.value().ties_x != slow.value().ties_x ||
            fast.value().ties_y != slow.value().ties_y) {
            return {"kendall_matches_brute_force", false, "pair counts disagree"};
        }
        worst = std::max(worst, std::fabs(fast.value().tau_b - slow.value().tau_b));
    }
    return {"kendall_matches_brute_force", worst <= 1e-12,
            "max |tau diff| = " + std::to_string(worst)};
}

Check check_mwu_exact_vs_permutation() {
    synth::SplitMix64 rng(20240902);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n1 = static_cast<std::size_t>(rng.range(1, 6));
        const std::size_t n2 = static_cast<std::size_t>(rng.range(1, 6));
        std::vector<double> xs(n1), ys(n2);
        // tie-free by construction
        double v = 0.0;
        for (auto& x : xs) x = (v += 1.0 + rng.uniform());
        for (auto& y : ys) y = (v += 1.0 + rng.uniform());
        // shuffle values between groups
        for (std::size_t k = 0; k < n1; ++k) {
            if (rng.uniform() < 0.5) std::swap(xs[k], ys[k % n2]);
        }
        const auto imp = stats::mann_whitney_u(xs, ys);
        const auto oracle = synth::permutation_mwu_p(xs, ys);
        if (!imp.ok() || !oracle.ok()) {
            return {"mwu_exact_matches_permutation", false, "unexpected error"};
        }
        if (!imp.value().exact) {
            return {"mwu_exact_matches_permutation", false, "exact mode not chosen"};
        }
        if (imp.value().p_value != oracle.value()) {
            return {"mwu_exact_matches_permutation", false,
                    "p mismatch at instance " + std::to_string(i)};
        }
    }
    return {"mwu_exact_matches_permutation", true, "100 instances"};
}

Check check_tdd_incremental_vs_rescan() {
    synth::SplitMix64 rng(20240903);
    const core::Date epoch{2020, 1, 6};
    for (int round = 0; round < 50; ++round) {
        const std::int64_t horizon = rng.range(10, 120);
        std::vector<core::TdIssueRecord> issues;
        const std::int64_t n_issues = rng.range(1, 200);
        for (std::int64_t i = 0; i < n_issues; ++i) {
            core::TdIssueRecord issue;
            issue.component_id = "S";
            issue.issue_id = "I" + std::to_string(i);
            issue.remediation = rng.range(0, 5000) * 1000;
            const std::int64_t intro_day = rng.range(0, (horizon - 1) * 7);
            issue.introduced_at =
                core::Instant{(core::day_number(epoch) + intro_day) * 86400};
            if (rng.uniform() < 0.5) {
                const std::int64_t removed_day = intro_day + rng.range(1, 200);
                issue.removed_at =
                    core::Instant{(core::day_number(epoch) + removed_day) * 86400};
            }
            issues.push_back(std::move(issue));
        }
        std::vector<core::WeekIndex> weeks;
        std::map<core::WeekIndex, std::int64_t> sizes;
        for (std::int64_t w = 1; w <= horizon; ++w) {
            weeks.push_back(core::WeekIndex{w});
            sizes[core::WeekIndex{w}] = 10000;
        }
        const auto inc = metrics::tdd_series("S", issues, sizes, weeks, epoch);
        const auto oracle = metrics::brute_force_td_stock(issues, weeks, epoch);
        if (!inc.ok() || !oracle.ok()) {
            return {"tdd_incremental_matches_rescan", false, "unexpected error"};
        }
        for (std::size_t k = 0; k < weeks.size(); ++k) {
            if (inc.value().points[k].td_stock != oracle.value()[k]) {
                return {"tdd_incremental_matches_rescan", false,
                        "stock mismatch at week " + std::to_string(weeks[k].value)};
            }
        }
    }
    return {"tdd_incremental_matches_rescan", true, "50 random issue sets"};
}

Check check_contribution_conservation() {
    synth::SplitMix64 rng(20240904);
    const core::Date epoch{2020, 1, 6};
    for (int round = 0; round < 50; ++round) {
        std::vector<core::Membership> memberships;
        const std::vector<std::string> teams = {"t1", "t2", "t3"};
        std::vector<std::string> people;
        for (int p = 0; p < 8; ++p) {
            const std::string id = "p" + std::to_string(p);
            people.push_back(id);
            if (rng.uniform() < 0.8) {
                memberships.push_back(core::Membership{
                    id, teams[static_cast<std::size_t>(rng.range(0, 2))],
                    core::day_number(epoch), std::nullopt});
            }
        }
        const auto timeline = core::AffiliationTimeline::create(memberships);
        const core::WeekIndex week{rng.range(1, 50)};
        const core::Instant base = core::week_start(week, epoch);

        std::vector<core::CommitRecord> commits;
        std::vector<core::CreatedItemRecord> prs, tickets;
        const std::int64_t n = rng.range(1, 30);
        for (std::int64_t i = 0; i < n; ++i) {
            core::CommitRecord c;
            c.component_id = "S";
            c.hash = "h" + std::to_string(i);
            c.author_id = people[static_cast<std::size_t>(rng.range(0, 7))];
            c.timestamp = core::Instant{base.seconds + rng.range(0, 7 * 86400 - 1)};
            c.additions = rng.range(0, 100);
            c.deletions = rng.range(0, 50);
            commits.push_back(std::move(c));
        }
        for (std::int64_t i = 0; i < rng.range(0, 10); ++i) {
            prs.push_back(core::CreatedItemRecord{
                "S", "pr" + std::to_string(i),
                people[static_cast<std::size_t>(rng.range(0, 7))],
                core::Instant{base.seconds + rng.range(0, 7 * 86400 - 1)}});
        }
        for (std::int64_t i = 0; i < rng.range(0, 10); ++i) {
            tickets.push_back(core::CreatedItemRecord{
                "S", "tk" + std::to_string(i),
                people[static_cast<std::size_t>(rng.range(0, 7))],
                core::Instant{base.seconds + rng.range(0, 7 * 86400 - 1)}});
        }

        const auto team_set = metrics::teams_active_in_week(week, commits, prs, tickets,
                                                            timeline.value(), epoch);
        double sum_c = 0, sum_ch = 0, sum_p = 0, sum_t = 0;
        for (const auto& team : team_set) {
            const auto b = metrics::contribution_breakdown("S", week, team, commits, prs,
                                                           tickets, timeline.value(), epoch);
            if (!b.ok()) return {"contribution_conservation", false, b.error().message};
            if (b.value().degree < 0 || b.value().degree > 100) {
                return {"contribution_conservation", false, "degree out of [0,100]"};
            }
            sum_c += b.value().commits_pct.value_or(0.0);
            sum_ch += b.value().churn_pct.value_or(0.0);
            sum_p += b.value().prs_pct.value_or(0.0);
            sum_t += b.value().tickets_pct.value_or(0.0);
        }
        std::int64_t total_churn = 0;
        for (const auto& c : commits) total_churn += c.churn();
        auto near = [](double v, double target) { return std::fabs(v - target) <= 1e-9; };
        if (!near(sum_c, 100.0)) {
            return {"contribution_conservation", false, "commit shares do not sum to 100"};
        }
        if (total_churn > 0 && !near(sum_ch, 100.0)) {
            return {"contribution_conservation", false, "churn shares do not sum to 100"};
        }
        if (!prs.empty() && !near(sum_p, 100.0)) {
            return {"contribution_conservation", false, "pr shares do not sum to 100"};
        }
        if (!tickets.empty() && !near(sum_t, 100.0)) {
            return {"contribution_conservation", false, "ticket shares do not sum to 100"};
        }
    }
    return {"contribution_conservation", true, "50 random component-weeks"};
}

Check check_magnitude_anchors() {
    const std::vector<std::pair<double, stats::Magnitude>> anchors = {
        {-0.332, stats::Magnitude::strong},   {-0.199, stats::Magnitude::moderate},
        {0.237, stats::Magnitude::moderate},  {0.093, stats::Magnitude::very_weak},
        {0.148, stats::Magnitude::weak},      {0.770, stats::Magnitude::strong},
    };
    for (const auto& [tau, expected] : anchors) {
        if (stats::classify_magnitude(tau) != expected) {
            return {"magnitude_anchor_labels", false, "label mismatch at tau"};
        }
    }
    return {"magnitude_anchor_labels", true, "6 anchor labels"};
}

}  // namespace

ordered_json run_selftest() {
    const std::vector<Check> checks = {
        check_week_anchor(),
        check_kendall_vs_brute_force(),
        check_mwu_exact_vs_permutation(),
        check_tdd_incremental_vs_rescan(),
        check_contribution_conservation(),
        check_magnitude_anchors(),
    };
    ordered_json out;
    ordered_json list = ordered_json::array();
    bool all = true;
    for (const auto& c : checks) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["passed"] = c.passed;
        jc["detail"] = c.detail;
        all = all && c.passed;
        list.push_back(std::move(jc));
    }
    out["checks"] = std::move(list);
    out["all_passed"] = all;
    return out;
}

}  // namespace ocam::run
