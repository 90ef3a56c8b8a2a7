#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "metrics/contribution.hpp"
#include "metrics/series.hpp"
#include "metrics/tdd.hpp"
#include "synth/rng.hpp"

using namespace ocam;

namespace {

const core::Date kEpoch{2020, 1, 6};

core::Instant in_week(std::int64_t week, std::int64_t offset_seconds = 3600) {
    return core::Instant{core::week_start(core::WeekIndex{week}, kEpoch).seconds +
                         offset_seconds};
}

core::CommitRecord commit(std::string author, std::int64_t week, std::int64_t adds,
                          std::int64_t dels, bool merge = false) {
    static int seq = 0;
    core::CommitRecord c;
    c.component_id = "C1";
    c.hash = "h" + std::to_string(++seq);
    c.author_id = std::move(author);
    c.timestamp = in_week(week, 3600 + seq);
    c.additions = adds;
    c.deletions = dels;
    c.is_merge = merge;
    return c;
}

core::CreatedItemRecord item(std::string creator, std::int64_t week, std::string id) {
    core::CreatedItemRecord r;
    r.component_id = "C1";
    r.item_id = std::move(id);
    r.creator_id = std::move(creator);
    r.created_at = in_week(week, 7200);
    return r;
}

core::AffiliationTimeline two_teams() {
    std::vector<core::Membership> ms;
    for (const char* member : {"t1", "t2", "t3"}) {
        ms.push_back(core::Membership{member, "team", 0, std::nullopt});
    }
    for (const char* member : {"o1", "o2", "o3"}) {
        ms.push_back(core::Membership{member, "others", 0, std::nullopt});
    }
    return core::AffiliationTimeline::create(ms).value();
}

}  // namespace

TEST_CASE("active weeks") {
    SUBCASE("definition") {
        std::vector<core::CommitRecord> commits = {commit("t1", 3, 1, 0),
                                                   commit("t1", 3, 1, 0),
                                                   commit("t2", 5, 1, 0)};
        const auto weeks = metrics::active_weeks(commits, kEpoch, false);
        REQUIRE(weeks.ok());
        CHECK(weeks.value() == std::set<core::WeekIndex>{core::WeekIndex{3},
                                                         core::WeekIndex{5}});
    }
    SUBCASE("merge-only week is inactive unless merges are included") {
        std::vector<core::CommitRecord> commits = {commit("t1", 4, 1, 0, true)};
        CHECK(metrics::active_weeks(commits, kEpoch, false).value().empty());
        CHECK(metrics::active_weeks(commits, kEpoch, true).value().size() == 1);
    }
    SUBCASE("a 122-active-week stream reports exactly 122") {
        std::vector<core::CommitRecord> commits;
        for (std::int64_t w = 1; w <= 162; ++w) {
            if (w % 4 == 0) continue;  // 40 inactive weeks in 1..162
            commits.push_back(commit("t1", w, 2, 1));
        }
        const auto weeks = metrics::active_weeks(commits, kEpoch, false);
        REQUIRE(weeks.ok());
        CHECK(weeks.value().size() == 122);
    }
    SUBCASE("empty input yields the empty set") {
        CHECK(metrics::active_weeks({}, kEpoch, false).value().empty());
    }
}

TEST_CASE("contribution breakdown arithmetic") {
    const auto affiliation = two_teams();

    SUBCASE("direct ratios: 3/12 commits, 500/1000 churn, 4/10 prs, 2/5 tickets") {
        std::vector<core::CommitRecord> commits;
        // team: 3 commits of churn 500 total; others: 9 commits of churn 500
        commits.push_back(commit("t1", 7, 200, 0));
        commits.push_back(commit("t2", 7, 200, 0));
        commits.push_back(commit("t3", 7, 50, 50));
        for (int i = 0; i < 9; ++i) {
            commits.push_back(commit("o" + std::to_string(i % 3 + 1), 7,
                                     i == 0 ? 100 : 50, 0));
        }
        std::vector<core::CreatedItemRecord> prs, tickets;
        for (int i = 0; i < 4; ++i) prs.push_back(item("t1", 7, "p" + std::to_string(i)));
        for (int i = 0; i < 6; ++i) prs.push_back(item("o1", 7, "q" + std::to_string(i)));
        tickets.push_back(item("t2", 7, "k1"));
        tickets.push_back(item("t3", 7, "k2"));
        for (int i = 0; i < 3; ++i) {
            tickets.push_back(item("o2", 7, "m" + std::to_string(i)));
        }

        const auto b = metrics::contribution_breakdown("C1", core::WeekIndex{7}, "team",
                                                       commits, prs, tickets, affiliation,
                                                       kEpoch);
        REQUIRE(b.ok());
        CHECK(b.value().commits_pct.value() == doctest::Approx(25.0));
        CHECK(b.value().churn_pct.value() == doctest::Approx(50.0));
        CHECK(b.value().prs_pct.value() == doctest::Approx(40.0));
        CHECK(b.value().tickets_pct.value() == doctest::Approx(40.0));
        CHECK(b.value().degree == doctest::Approx(38.75));
        CHECK(b.value().measures_present() == 4);
    }

    SUBCASE("sole contributing team scores 100") {
        std::vector<core::CommitRecord> commits = {commit("t1", 7, 10, 0)};
        std::vector<core::CreatedItemRecord> prs = {item("t2", 7, "p1")};
        std::vector<core::CreatedItemRecord> tickets = {item("t3", 7, "k1")};
        const auto b = metrics::contribution_breakdown("C1", core::WeekIndex{7}, "team",
                                                       commits, prs, tickets, affiliation,
                                                       kEpoch);
        REQUIRE(b.ok());
        CHECK(b.value().degree == doctest::Approx(100.0));
    }

    SUBCASE("zero-denominator measures are omitted from the average") {
        std::vector<core::CommitRecord> commits = {commit("t1", 7, 20, 10),
                                                   commit("o1", 7, 25, 5)};
        const auto b = metrics::contribution_breakdown("C1", core::WeekIndex{7}, "team",
                                                       commits, {}, {}, affiliation, kEpoch);
        REQUIRE(b.ok());
        CHECK(b.value().measures_present() == 2);
        CHECK_FALSE(b.value().prs_pct.has_value());
        CHECK_FALSE(b.value().tickets_pct.has_value());
        CHECK(b.value().commits_pct.value() == doctest::Approx(50.0));
        CHECK(b.value().churn_pct.value() == doctest::Approx(50.0));
        CHECK(b.value().degree == doctest::Approx(50.0));
    }

    SUBCASE("events attributed at their own timestamp across a membership change") {
        std::vector<core::Membership> ms = {
            {"ann", "team", 0, core::day_number(kEpoch) + 7 * 10},  // leaves during week 11
            {"ann", "others", core::day_number(kEpoch) + 7 * 10, std::nullopt},
        };
        const auto timeline = core::AffiliationTimeline::create(ms).value();
        std::vector<core::CommitRecord> commits = {commit("ann", 10, 5, 0),
                                                   commit("ann", 11, 5, 0)};
        const auto b10 = metrics::contribution_breakdown("C1", core::WeekIndex{10}, "team",
                                                         commits, {}, {}, timeline, kEpoch);
        const auto b11 = metrics::contribution_breakdown("C1", core::WeekIndex{11}, "team",
                                                         commits, {}, {}, timeline, kEpoch);
        REQUIRE(b10.ok());
        REQUIRE(b11.ok());
        CHECK(b10.value().commits_pct.value() == doctest::Approx(100.0));
        CHECK(b11.value().commits_pct.value() == doctest::Approx(0.0));
    }

    SUBCASE("no events in the window is a caller error") {
        CHECK_FALSE(metrics::contribution_breakdown("C1", core::WeekIndex{7}, "team", {},
                                                    {}, {}, affiliation, kEpoch)
                        .ok());
    }

    SUBCASE("rolling window widens the event pool") {
        std::vector<core::CommitRecord> commits = {commit("t1", 5, 10, 0),
                                                   commit("o1", 6, 10, 0)};
        const auto narrow = metrics::contribution_breakdown(
            "C1", core::WeekIndex{6}, "team", commits, {}, {}, affiliation, kEpoch, false,
            1);
        REQUIRE(narrow.ok());
        CHECK(narrow.value().commits_pct.value() == doctest::Approx(0.0));
        const auto wide = metrics::contribution_breakdown(
            "C1", core::WeekIndex{6}, "team", commits, {}, {}, affiliation, kEpoch, false,
            2);
        REQUIRE(wide.ok());
        CHECK(wide.value().commits_pct.value() == doctest::Approx(50.0));
    }
}

TEST_CASE("contribution conservation and duplication invariance") {
    synth::SplitMix64 rng(71);
    const auto affiliation = two_teams();
    for (int round = 0; round < 100; ++round) {
        const core::WeekIndex week{rng.range(1, 100)};
        const std::vector<std::string> people = {"t1", "t2", "t3", "o1", "o2", "nobody"};
        std::vector<core::CommitRecord> commits;
        std::vector<core::CreatedItemRecord> prs, tickets;
        const auto pick = [&]() { return people[(std::size_t)rng.range(0, 5)]; };
        for (std::int64_t i = 0, n = rng.range(1, 25); i < n; ++i) {
            commits.push_back(commit(pick(), week.value, rng.range(0, 80), rng.range(0, 40),
                                     rng.uniform() < 0.15));
        }
        for (std::int64_t i = 0, n = rng.range(0, 8); i < n; ++i) {
            prs.push_back(item(pick(), week.value, "p" + std::to_string(i)));
        }
        for (std::int64_t i = 0, n = rng.range(0, 8); i < n; ++i) {
            tickets.push_back(item(pick(), week.value, "k" + std::to_string(i)));
        }
        bool any_nonmerge = false;
        for (const auto& c : commits) any_nonmerge = any_nonmerge || !c.is_merge;
        if (!any_nonmerge && prs.empty() && tickets.empty()) continue;

        const auto teams = metrics::teams_active_in_week(week, commits, prs, tickets,
                                                         affiliation, kEpoch);
        double sums[4] = {0, 0, 0, 0};
        for (const auto& team : teams) {
            const auto b = metrics::contribution_breakdown("C1", week, team, commits, prs,
                                                           tickets, affiliation, kEpoch);
            REQUIRE(b.ok());
            CHECK(b.value().degree >= 0.0);
            CHECK(b.value().degree <= 100.0);
            sums[0] += b.value().commits_pct.value_or(0);
            sums[1] += b.value().churn_pct.value_or(0);
            sums[2] += b.value().prs_pct.value_or(0);
            sums[3] += b.value().tickets_pct.value_or(0);

            // doubling every event leaves all ratios unchanged
            auto doubled_commits = commits;
            doubled_commits.insert(doubled_commits.end(), commits.begin(), commits.end());
            auto doubled_prs = prs;
            doubled_prs.insert(doubled_prs.end(), prs.begin(), prs.end());
            auto doubled_tickets = tickets;
            doubled_tickets.insert(doubled_tickets.end(), tickets.begin(), tickets.end());
            const auto b2 = metrics::contribution_breakdown("C1", week, team,
                                                            doubled_commits, doubled_prs,
                                                            doubled_tickets, affiliation,
                                                            kEpoch);
            REQUIRE(b2.ok());
            CHECK(b2.value().degree == doctest::Approx(b.value().degree).epsilon(1e-12));
        }
        std::int64_t total_churn = 0;
        bool any_commit = false;
        for (const auto& c : commits) {
            if (c.is_merge) continue;
            any_commit = true;
            total_churn += c.churn();
        }
        if (any_commit) CHECK(sums[0] == doctest::Approx(100.0).epsilon(1e-11));
        if (total_churn > 0) CHECK(sums[1] == doctest::Approx(100.0).epsilon(1e-11));
        if (!prs.empty()) CHECK(sums[2] == doctest::Approx(100.0).epsilon(1e-11));
        if (!tickets.empty()) CHECK(sums[3] == doctest::Approx(100.0).epsilon(1e-11));
    }
}

TEST_CASE("tdd series") {
    std::map<core::WeekIndex, std::int64_t> sizes;
    for (std::int64_t w = 1; w <= 20; ++w) sizes[core::WeekIndex{w}] = 10000;

    SUBCASE("one open issue of 1200 minutes over 10000 loc is 0.12 min/loc") {
        core::TdIssueRecord issue;
        issue.component_id = "C1";
        issue.issue_id = "I1";
        issue.remediation = 1200 * core::kMicroPerMinute;
        issue.introduced_at = in_week(2);
        const std::vector<core::TdIssueRecord> issues = {issue};
        const auto series = metrics::tdd_series("C1", issues, sizes,
                                                {core::WeekIndex{3}}, kEpoch);
        REQUIRE(series.ok());
        REQUIRE(series.value().points.size() == 1);
        CHECK(series.value().points[0].tdd() == doctest::Approx(0.12));
        CHECK(series.value().points[0].td_minutes() == doctest::Approx(1200.0));
    }

    SUBCASE("issue removed in week 8 counts for weeks 5..7 only") {
        core::TdIssueRecord issue;
        issue.component_id = "C1";
        issue.issue_id = "I1";
        issue.remediation = 100 * core::kMicroPerMinute;
        issue.introduced_at = in_week(5);
        issue.removed_at = in_week(8);
        const std::vector<core::TdIssueRecord> issues = {issue};
        std::vector<core::WeekIndex> weeks;
        for (std::int64_t w = 4; w <= 9; ++w) weeks.push_back(core::WeekIndex{w});
        const auto series = metrics::tdd_series("C1", issues, sizes, weeks, kEpoch);
        REQUIRE(series.ok());
        std::vector<double> stocks;
        for (const auto& p : series.value().points) stocks.push_back(p.td_minutes());
        CHECK(stocks == std::vector<double>{0, 100, 100, 100, 0, 0});
    }

    SUBCASE("missing size snapshot drops the week with a warning") {
        std::map<core::WeekIndex, std::int64_t> sparse = {{core::WeekIndex{1}, 100}};
        const auto series = metrics::tdd_series(
            "C1", {}, sparse, {core::WeekIndex{1}, core::WeekIndex{2}}, kEpoch);
        REQUIRE(series.ok());
        CHECK(series.value().points.size() == 1);
        CHECK(series.value().warnings.size() == 1);
    }

    SUBCASE("incremental equals the brute-force rescan exactly, and stock is monotone "
            "under issue insertion/removal") {
        synth::SplitMix64 rng(73);
        for (int round = 0; round < 100; ++round) {
            std::vector<core::TdIssueRecord> issues;
            const std::int64_t n = rng.range(1, 200);
            for (std::int64_t i = 0; i < n; ++i) {
                core::TdIssueRecord issue;
                issue.component_id = "C1";
                issue.issue_id = "I" + std::to_string(i);
                issue.remediation = rng.range(0, 2000) * 1000;
                const std::int64_t intro_week = rng.range(1, 50);
                issue.introduced_at = in_week(intro_week, rng.range(0, 600000));
                if (rng.uniform() < 0.6) {
                    issue.removed_at =
                        core::Instant{issue.introduced_at.seconds + rng.range(1, 90) * 86400};
                }
                issues.push_back(std::move(issue));
            }
            std::vector<core::WeekIndex> weeks;
            std::map<core::WeekIndex, std::int64_t> size_map;
            for (std::int64_t w = 1; w <= 60; ++w) {
                weeks.push_back(core::WeekIndex{w});
                size_map[core::WeekIndex{w}] = 5000;
            }
            const auto inc = metrics::tdd_series("C1", issues, size_map, weeks, kEpoch);
            const auto oracle = metrics::brute_force_td_stock(issues, weeks, kEpoch);
            REQUIRE(inc.ok());
            REQUIRE(oracle.ok());
            REQUIRE(inc.value().points.size() == weeks.size());
            for (std::size_t k = 0; k < weeks.size(); ++k) {
                CHECK(inc.value().points[k].td_stock == oracle.value()[k]);
                CHECK(inc.value().points[k].td_stock >= 0);
            }

            // dropping one issue never increases any week's stock
            auto fewer = issues;
            fewer.pop_back();
            const auto reduced = metrics::brute_force_td_stock(fewer, weeks, kEpoch);
            REQUIRE(reduced.ok());
            for (std::size_t k = 0; k < weeks.size(); ++k) {
                CHECK(reduced.value()[k] <= oracle.value()[k]);
            }
        }
    }
}

TEST_CASE("weekly series assembly") {
    core::ComponentSpec spec;
    spec.component_id = "C1";
    spec.path_globs = {"**/*.java"};
    spec.owner_timeline = {{"team", 0, std::nullopt}};
    const auto affiliation = two_teams();

    std::vector<core::CommitRecord> commits = {commit("t1", 1, 10, 0),
                                               commit("o1", 2, 10, 0),
                                               commit("t1", 4, 10, 0)};
    std::vector<core::TdIssueRecord> issues;
    {
        core::TdIssueRecord issue;
        issue.component_id = "C1";
        issue.issue_id = "I1";
        issue.remediation = 500 * core::kMicroPerMinute;
        issue.introduced_at = in_week(1);
        issues.push_back(issue);
    }
    std::vector<core::SizeSnapshot> sizes;
    for (std::int64_t w = 1; w <= 4; ++w) {
        sizes.push_back(core::SizeSnapshot{"C1", core::WeekIndex{w}, 1000});
    }

    metrics::SeriesOptions options;
    options.epoch = kEpoch;
    const auto built = metrics::build_weekly_series(spec, commits, {}, {}, issues, sizes,
                                                    affiliation, options);
    REQUIRE(built.ok());
    const auto& series = built.value().series;
    REQUIRE(series.observations.size() == 3);  // weeks 1, 2, 4
    CHECK(series.observations[0].week.value == 1);
    CHECK(series.observations[1].week.value == 2);
    CHECK(series.observations[2].week.value == 4);
    // weeks strictly increasing and both constructs aligned
    for (const auto& o : series.observations) {
        CHECK(o.tdd.tdd() == doctest::Approx(0.5));
        CHECK(o.contribution.week == o.week);
    }
    CHECK(series.observations[0].contribution.degree == doctest::Approx(100.0));
    CHECK(series.observations[1].contribution.degree == doctest::Approx(0.0));

    SUBCASE("strict measures mode drops weeks lacking any measure") {
        metrics::SeriesOptions strict = options;
        strict.require_all_measures = true;
        const auto strict_build = metrics::build_weekly_series(
            spec, commits, {}, {}, issues, sizes, affiliation, strict);
        REQUIRE(strict_build.ok());
        // no prs/tickets anywhere: every week lacks two measures
        CHECK(strict_build.value().series.observations.empty());
        CHECK(strict_build.value().warnings.size() >= 3);
    }
}
