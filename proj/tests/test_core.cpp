#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/glob.hpp"
#include "core/identity.hpp"
#include "core/records.hpp"
#include "core/time.hpp"
#include "synth/rng.hpp"

using namespace ocam;

TEST_CASE("civil date arithmetic round-trips") {
    CHECK(core::days_from_civil(1970, 1, 1) == 0);
    CHECK(core::days_from_civil(2020, 1, 6) == 18267);
    synth::SplitMix64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t day = rng.range(-100000, 100000);
        const auto d = core::civil_from_days(day);
        CHECK(core::day_number(d) == day);
    }
}

TEST_CASE("epoch 2020-01-06 is a Monday") {
    CHECK(core::is_monday(core::Date{2020, 1, 6}));
    CHECK_FALSE(core::is_monday(core::Date{2020, 1, 7}));
    CHECK(core::is_monday(core::Date{1970, 1, 5}));
}

TEST_CASE("instant parsing handles zones and normalises to UTC") {
    const auto utc = core::parse_instant("2020-01-06T10:00:00Z");
    REQUIRE(utc.has_value());
    const auto offset = core::parse_instant("2020-01-06T11:00:00+01:00");
    REQUIRE(offset.has_value());
    CHECK(utc->seconds == offset->seconds);
    const auto compact = core::parse_instant("2020-01-06 11:00:00 +0100");
    REQUIRE(compact.has_value());  // git's default iso format
    CHECK(compact->seconds == utc->seconds);
    const auto compact2 = core::parse_instant("2020-01-06T11:00:00+0100");
    REQUIRE(compact2.has_value());
    CHECK(compact2->seconds == utc->seconds);
    const auto fractional = core::parse_instant("2020-01-06T10:00:00.123Z");
    REQUIRE(fractional.has_value());
    CHECK(fractional->seconds == utc->seconds);
    const auto date_only = core::parse_instant("2020-01-06");
    REQUIRE(date_only.has_value());
    CHECK(date_only->seconds == utc->seconds - 36000);

    CHECK_FALSE(core::parse_instant("not a date").has_value());
    CHECK_FALSE(core::parse_instant("2020-13-01T00:00:00Z").has_value());
    CHECK_FALSE(core::parse_instant("2020-02-30T00:00:00Z").has_value());
}

TEST_CASE("instant formatting round-trips") {
    synth::SplitMix64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const core::Instant t{rng.range(0, 4'000'000'000LL)};
        const auto parsed = core::parse_instant(core::format_instant_utc(t));
        REQUIRE(parsed.has_value());
        CHECK(parsed->seconds == t.seconds);
    }
}

TEST_CASE("week_of anchors") {
    const core::Date epoch{2020, 1, 6};

    SUBCASE("epoch week is week 1") {
        const auto w = core::week_of(*core::parse_instant("2020-01-06T10:00:00Z"), epoch);
        REQUIRE(w.ok());
        CHECK(w.value().value == 1);
    }
    SUBCASE("the paper's split anchor: 2021-03-01 is week 61") {
        const auto w = core::week_of(*core::parse_instant("2021-03-01T09:00:00Z"), epoch);
        REQUIRE(w.ok());
        CHECK(w.value().value == 61);
    }
    SUBCASE("bucket boundary at midnight Monday") {
        const auto sunday = core::week_of(*core::parse_instant("2020-01-12T23:59:00Z"), epoch);
        const auto monday = core::week_of(*core::parse_instant("2020-01-13T00:00:00Z"), epoch);
        REQUIRE(sunday.ok());
        REQUIRE(monday.ok());
        CHECK(sunday.value().value == 1);
        CHECK(monday.value().value == 2);
    }
    SUBCASE("timestamp before epoch is rejected") {
        const auto w = core::week_of(*core::parse_instant("2019-12-31T00:00:00Z"), epoch);
        CHECK_FALSE(w.ok());
    }
    SUBCASE("non-Monday epoch is rejected") {
        const auto w = core::week_of(*core::parse_instant("2020-02-01T00:00:00Z"),
                                     core::Date{2020, 1, 7});
        CHECK_FALSE(w.ok());
    }
}

TEST_CASE("week_of is monotone and steps by at most one per day") {
    const core::Date epoch{2020, 1, 6};
    synth::SplitMix64 rng(13);
    const std::int64_t epoch_seconds = core::day_number(epoch) * 86400;
    core::Instant prev{epoch_seconds};
    auto prev_week = core::week_of(prev, epoch).value();
    for (int day = 1; day < 400; ++day) {
        const core::Instant t{epoch_seconds + day * 86400 + rng.range(0, 86399)};
        const auto w = core::week_of(core::Instant{epoch_seconds + day * 86400}, epoch);
        REQUIRE(w.ok());
        CHECK(w.value().value >= prev_week.value);
        CHECK(w.value().value - prev_week.value <= 1);
        prev_week = w.value();
        // random timestamps inside the same day bin identically
        CHECK(core::week_of(t, epoch).value() == prev_week);
    }
}

TEST_CASE("glob matching") {
    CHECK(core::glob_match("**/*.java", "a.java"));
    CHECK(core::glob_match("**/*.java", "src/main/java/A.java"));
    CHECK_FALSE(core::glob_match("**/*.java", "src/a.md"));
    CHECK(core::glob_match("*.java", "A.java"));
    CHECK_FALSE(core::glob_match("*.java", "src/A.java"));
    CHECK(core::glob_match("src/**/*.xml", "src/res/values/strings.xml"));
    CHECK(core::glob_match("src/**/*.xml", "src/pom.xml"));
    CHECK_FALSE(core::glob_match("src/**/*.xml", "test/pom.xml"));
    CHECK(core::glob_match("a?c/*.txt", "abc/x.txt"));
    CHECK_FALSE(core::glob_match("a?c/*.txt", "abbc/x.txt"));
    CHECK(core::glob_match("**", "anything/at/all"));
    CHECK_FALSE(core::glob_match("", "x"));
    CHECK_FALSE(core::any_glob_match({}, "x.java"));
    CHECK(core::any_glob_match({"**/*.xml", "**/*.java"}, "x.java"));
}

TEST_CASE("identity resolution") {
    core::AliasMap aliases{{"jane@x.com", "jane"}, {"jd@corp.com", "jane"}};
    core::IdentityResolver resolver(aliases);

    SUBCASE("direct table hit") {
        const auto id = resolver.resolve("Jane D", "jane@x.com");
        REQUIRE(id.ok());
        CHECK(id.value() == "jane");
        CHECK(resolver.unknown_count() == 0);
    }
    SUBCASE("unknown falls back to lowercased email with a warning") {
        const auto id = resolver.resolve("Bob", "Bob@X.com");
        REQUIRE(id.ok());
        CHECK(id.value() == "bob@x.com");
        CHECK(resolver.unknown_count() == 1);
        CHECK(resolver.warnings().size() == 1);
    }
    SUBCASE("two emails aliased to the same canonical merge") {
        const auto a = resolver.resolve("Jane", "jane@x.com");
        const auto b = resolver.resolve("J. Doe", "jd@corp.com");
        REQUIRE(a.ok());
        REQUIRE(b.ok());
        CHECK(a.value() == b.value());
        const auto& ident = resolver.identities().at("jane");
        CHECK(ident.raw_emails.size() == 2);
        CHECK(ident.raw_names.size() == 2);
    }
    SUBCASE("empty name and email is rejected") {
        CHECK_FALSE(resolver.resolve("", "").ok());
    }
    SUBCASE("resolution is idempotent and case-stable") {
        const auto first = resolver.resolve("Ann", "ann@y.org");
        const auto second = resolver.resolve("Ann", "ANN@Y.ORG");
        REQUIRE(first.ok());
        REQUIRE(second.ok());
        CHECK(first.value() == second.value());
    }
}

TEST_CASE("affiliation timeline") {
    const core::Date epoch{2020, 1, 6};
    const std::int64_t split_day = core::day_number(core::Date{2021, 3, 1});
    std::vector<core::Membership> memberships = {
        {"ann", "blue", core::day_number(epoch), split_day},
        {"ann", "brown", split_day, std::nullopt},
        {"bob", "blue", core::day_number(epoch), std::nullopt},
    };
    const auto timeline = core::AffiliationTimeline::create(memberships);
    REQUIRE(timeline.ok());

    SUBCASE("membership before and after the split") {
        const auto before = *core::parse_instant("2021-02-28T12:00:00Z");
        const auto after = *core::parse_instant("2021-03-01T00:00:00Z");
        CHECK(timeline.value().team_of("ann", before) == "blue");
        CHECK(timeline.value().team_of("ann", after) == "brown");
    }
    SUBCASE("query before any membership is unaffiliated") {
        const auto early = *core::parse_instant("2019-06-01T00:00:00Z");
        CHECK(timeline.value().team_of("ann", early) == core::kUnaffiliated);
        CHECK(timeline.value().team_of("stranger", early) == core::kUnaffiliated);
    }
    SUBCASE("overlapping intervals are rejected at load") {
        std::vector<core::Membership> bad = {
            {"x", "a", 100, 200},
            {"x", "b", 150, std::nullopt},
        };
        CHECK_FALSE(core::AffiliationTimeline::create(bad).ok());
    }
    SUBCASE("end before start is rejected") {
        std::vector<core::Membership> bad = {{"x", "a", 100, 50}};
        CHECK_FALSE(core::AffiliationTimeline::create(bad).ok());
    }
}

TEST_CASE("team_of returns exactly one team on randomized timelines") {
    synth::SplitMix64 rng(17);
    for (int round = 0; round < 100; ++round) {
        // build non-overlapping intervals by construction
        std::vector<core::Membership> memberships;
        std::int64_t cursor = 18000;
        const int n = static_cast<int>(rng.range(1, 6));
        for (int i = 0; i < n; ++i) {
            const std::int64_t start = cursor + rng.range(0, 50);
            const std::int64_t end = start + rng.range(1, 300);
            memberships.push_back(core::Membership{
                "p", "team" + std::to_string(i), start,
                i == n - 1 && rng.uniform() < 0.3
                    ? std::nullopt
                    : std::optional<std::int64_t>(end)});
            cursor = end;
        }
        const auto timeline = core::AffiliationTimeline::create(memberships);
        REQUIRE(timeline.ok());
        for (int probe = 0; probe < 50; ++probe) {
            const std::int64_t day = 18000 + rng.range(-100, 3000);
            const auto team = timeline.value().team_of("p", core::Instant{day * 86400});
            int containing = 0;
            for (const auto& m : memberships) {
                if (day >= m.start_day && (!m.end_day || day < *m.end_day)) ++containing;
            }
            CHECK(containing <= 1);
            if (containing == 0) CHECK(team == core::kUnaffiliated);
            else CHECK(team != core::kUnaffiliated);
        }
    }
}

TEST_CASE("component owner timeline validation") {
    core::ComponentSpec spec;
    spec.component_id = "C1";
    spec.owner_timeline = {
        {"blue", 100, 200},
        {"brown", 200, std::nullopt},
    };
    CHECK(spec.validate().ok());
    CHECK(spec.owner_at(150) == "blue");
    CHECK(spec.owner_at(200) == "brown");
    CHECK_FALSE(spec.owner_at(50).has_value());

    core::ComponentSpec overlapping = spec;
    overlapping.owner_timeline = {{"blue", 100, 250}, {"brown", 200, std::nullopt}};
    CHECK_FALSE(overlapping.validate().ok());
}
