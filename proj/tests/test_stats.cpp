#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

#include "json.hpp"

#include "stats/descriptive.hpp"
#include "stats/kendall.hpp"
#include "stats/magnitude.hpp"
#include "stats/mann_whitney.hpp"
#include "stats/normal.hpp"
#include "stats/shapiro_wilk.hpp"
#include "synth/oracles.hpp"
#include "synth/rng.hpp"

using namespace ocam;

namespace {

std::vector<double> random_values(synth::SplitMix64& rng, std::size_t n, int levels) {
    std::vector<double> out(n);
    for (auto& v : out) {
        v = levels > 0 ? static_cast<double>(rng.range(0, levels))
                       : rng.gauss() * 10.0;
    }
    return out;
}

// compensated (Neumaier) summation oracle for describe()
double neumaier_sum(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) comp += (sum - t) + x;
        else comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

}  // namespace

TEST_CASE("normal distribution helpers") {
    CHECK(stats::normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(stats::normal_cdf(1.959963985) == doctest::Approx(0.975).epsilon(1e-9));
    CHECK(stats::normal_sf(1.959963985) == doctest::Approx(0.025).epsilon(1e-9));
    for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.7, 0.99, 1 - 1e-6}) {
        const double x = stats::normal_ppf(p);
        CHECK(stats::normal_cdf(x) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(stats::two_sided_p(0.0) == doctest::Approx(1.0));
    CHECK(stats::two_sided_p(1.959963985) == doctest::Approx(0.05).epsilon(1e-8));
}

TEST_CASE("describe") {
    SUBCASE("constant series") {
        const std::vector<double> xs = {2, 2, 2};
        const auto d = stats::describe(xs);
        REQUIRE(d.ok());
        CHECK(d.value().mean == 2.0);
        CHECK(d.value().std_dev.value() == 0.0);
        CHECK(d.value().min == 2.0);
        CHECK(d.value().max == 2.0);
    }
    SUBCASE("hand arithmetic") {
        const std::vector<double> xs = {1, 2, 3};
        const auto d = stats::describe(xs);
        REQUIRE(d.ok());
        CHECK(d.value().mean == doctest::Approx(2.0));
        CHECK(d.value().std_dev.value() == doctest::Approx(1.0));
        CHECK(d.value().min == 1.0);
        CHECK(d.value().max == 3.0);
    }
    SUBCASE("n = 1 has no std") {
        const std::vector<double> xs = {5};
        const auto d = stats::describe(xs);
        REQUIRE(d.ok());
        CHECK_FALSE(d.value().std_dev.has_value());
    }
    SUBCASE("empty input is rejected") {
        CHECK_FALSE(stats::describe(std::vector<double>{}).ok());
    }
    SUBCASE("matches the compensated-summation oracle on random data") {
        synth::SplitMix64 rng(31);
        for (int round = 0; round < 200; ++round) {
            const auto xs = random_values(rng, static_cast<std::size_t>(rng.range(2, 500)),
                                          0);
            const auto d = stats::describe(xs);
            REQUIRE(d.ok());
            const double mean = neumaier_sum(xs) / static_cast<double>(xs.size());
            std::vector<double> sq(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) {
                sq[i] = (xs[i] - mean) * (xs[i] - mean);
            }
            const double var = neumaier_sum(sq) / static_cast<double>(xs.size() - 1);
            CHECK(d.value().mean ==
                  doctest::Approx(mean).epsilon(1e-9));
            CHECK(d.value().std_dev.value() ==
                  doctest::Approx(std::sqrt(var)).epsilon(1e-9));
        }
    }
}

TEST_CASE("kendall tau-b on the anchored examples") {
    SUBCASE("perfect concordance") {
        const std::vector<double> x = {1, 2, 3}, y = {1, 2, 3};
        const auto r = stats::kendall_tau_b(x, y);
        REQUIRE(r.ok());
        CHECK(r.value().tau_b == doctest::Approx(1.0));
    }
    SUBCASE("perfect discordance") {
        const std::vector<double> x = {1, 2, 3}, y = {3, 2, 1};
        const auto r = stats::kendall_tau_b(x, y);
        REQUIRE(r.ok());
        CHECK(r.value().tau_b == doctest::Approx(-1.0));
    }
    SUBCASE("tie-corrected hand enumeration: 5/sqrt(30)") {
        const std::vector<double> x = {1, 2, 2, 3}, y = {1, 3, 2, 4};
        const auto r = stats::kendall_tau_b(x, y);
        REQUIRE(r.ok());
        CHECK(r.value().concordant == 5);
        CHECK(r.value().discordant == 0);
        CHECK(r.value().ties_x == 1);
        CHECK(r.value().ties_y == 0);
        CHECK(r.value().tau_b == doctest::Approx(5.0 / std::sqrt(30.0)).epsilon(1e-12));
    }
    SUBCASE("degenerate inputs are errors") {
        const std::vector<double> constant = {1, 1, 1}, varying = {1, 2, 3};
        CHECK_FALSE(stats::kendall_tau_b(constant, varying).ok());
        CHECK_FALSE(stats::kendall_tau_b(varying, constant).ok());
        CHECK_FALSE(stats::kendall_tau_b({}, {}).ok());
    }
}

TEST_CASE("kendall matches the brute-force oracle on 1000 random tied instances") {
    synth::SplitMix64 rng(37);
    double worst = 0.0;
    int defined = 0;
    for (int round = 0; round < 1000; ++round) {
        const std::size_t n = static_cast<std::size_t>(rng.range(2, 200));
        const int levels = static_cast<int>(rng.range(1, 30));
        const auto xs = random_values(rng, n, levels);
        const auto ys = random_values(rng, n, levels);
        const auto fast = stats::kendall_tau_b(xs, ys);
        const auto slow = synth::brute_force_tau(xs, ys);
        REQUIRE(fast.ok() == slow.ok());
        if (!fast.ok()) continue;
        ++defined;
        CHECK(fast.value().concordant == slow.value().concordant);
        CHECK(fast.value().discordant == slow.value().discordant);
        CHECK(fast.value().ties_x == slow.value().ties_x);
        CHECK(fast.value().ties_y == slow.value().ties_y);
        worst = std::max(worst, std::fabs(fast.value().tau_b - slow.value().tau_b));
    }
    CHECK(defined > 900);
    CHECK(worst <= 1e-12);
}

TEST_CASE("kendall is antisymmetric and rank-invariant") {
    synth::SplitMix64 rng(41);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = static_cast<std::size_t>(rng.range(3, 60));
        const auto xs = random_values(rng, n, 8);
        const auto ys = random_values(rng, n, 8);
        const auto base = stats::kendall_tau_b(xs, ys);
        if (!base.ok()) continue;

        std::vector<double> neg(ys.size());
        for (std::size_t i = 0; i < ys.size(); ++i) neg[i] = -ys[i];
        const auto negated = stats::kendall_tau_b(xs, neg);
        REQUIRE(negated.ok());
        CHECK(negated.value().tau_b == doctest::Approx(-base.value().tau_b).epsilon(1e-15));
        CHECK(negated.value().p_value == base.value().p_value);

        // strictly increasing transforms leave tau and p exactly unchanged
        std::vector<double> tx(xs.size()), ty(ys.size());
        for (std::size_t i = 0; i < n; ++i) {
            tx[i] = std::exp(xs[i] / 4.0);
            ty[i] = ys[i] * 3.0 + 17.0;
        }
        const auto transformed = stats::kendall_tau_b(tx, ty);
        REQUIRE(transformed.ok());
        CHECK(transformed.value().tau_b == base.value().tau_b);
        CHECK(transformed.value().p_value == base.value().p_value);
    }
}

TEST_CASE("mann-whitney anchored examples") {
    SUBCASE("disjoint groups: U=0, exact two-sided p = 0.1") {
        const std::vector<double> x = {1, 2, 3}, y = {4, 5, 6};
        const auto r = stats::mann_whitney_u(x, y);
        REQUIRE(r.ok());
        CHECK(r.value().u_statistic == 0.0);
        CHECK(r.value().exact);
        CHECK(r.value().p_value == doctest::Approx(0.1).epsilon(1e-15));
    }
    SUBCASE("identical multisets: U = n1*n2/2, p = 1") {
        const std::vector<double> x = {1, 2, 3, 4}, y = {4, 3, 2, 1};
        const auto r = stats::mann_whitney_u(x, y);
        REQUIRE(r.ok());
        CHECK(r.value().u_statistic == doctest::Approx(8.0));
        CHECK(r.value().p_value == doctest::Approx(1.0));
    }
    SUBCASE("empty group is rejected") {
        const std::vector<double> empty, one = {1.0};
        CHECK_FALSE(stats::mann_whitney_u(empty, one).ok());
    }
}

TEST_CASE("mann-whitney invariants") {
    synth::SplitMix64 rng(43);
    for (int round = 0; round < 300; ++round) {
        const std::size_t n1 = static_cast<std::size_t>(rng.range(1, 30));
        const std::size_t n2 = static_cast<std::size_t>(rng.range(1, 30));
        const auto xs = random_values(rng, n1, 10);
        const auto ys = random_values(rng, n2, 10);
        const auto fwd = stats::mann_whitney_u(xs, ys);
        const auto rev = stats::mann_whitney_u(ys, xs);
        REQUIRE(fwd.ok());
        REQUIRE(rev.ok());
        // U_x + U_y = n1 * n2
        CHECK(fwd.value().u_statistic + rev.value().u_statistic ==
              doctest::Approx(static_cast<double>(n1 * n2)).epsilon(1e-12));
        // p invariant under group swap
        CHECK(fwd.value().p_value == doctest::Approx(rev.value().p_value).epsilon(1e-12));
    }
}

TEST_CASE("mann-whitney automatic mode is exact for small tied samples") {
    synth::SplitMix64 rng(101);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n1 = static_cast<std::size_t>(rng.range(2, 6));
        const std::size_t n2 = static_cast<std::size_t>(rng.range(2, 6));
        const auto xs = random_values(rng, n1, 5);  // heavy ties
        const auto ys = random_values(rng, n2, 5);
        const auto imp = stats::mann_whitney_u(xs, ys);
        const auto oracle = synth::permutation_mwu_p(xs, ys);
        REQUIRE(imp.ok());
        REQUIRE(oracle.ok());
        CHECK(imp.value().exact);
        CHECK(imp.value().p_value == oracle.value());
    }
}

TEST_CASE("mann-whitney exact mode equals permutation enumeration on tie-free input") {
    synth::SplitMix64 rng(47);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n1 = static_cast<std::size_t>(rng.range(1, 6));
        const std::size_t n2 = static_cast<std::size_t>(rng.range(1, 6));
        std::vector<double> pool(n1 + n2);
        double v = 0;
        for (auto& p : pool) p = (v += 1.0 + rng.uniform());
        // random assignment of distinct values to groups
        for (std::size_t i = pool.size(); i > 1; --i) {
            std::swap(pool[i - 1], pool[static_cast<std::size_t>(rng.range(0, i - 1))]);
        }
        const std::vector<double> xs(pool.begin(), pool.begin() + n1);
        const std::vector<double> ys(pool.begin() + n1, pool.end());
        const auto imp = stats::mann_whitney_u(xs, ys);
        const auto oracle = synth::permutation_mwu_p(xs, ys);
        REQUIRE(imp.ok());
        REQUIRE(oracle.ok());
        CHECK(imp.value().exact);
        CHECK(imp.value().p_value == oracle.value());
    }
}

TEST_CASE("mann-whitney approx mode tracks the permutation oracle in the tails") {
    // At these sample sizes the exact two-sided p is a coarse staircase
    // (steps of P(U = u), often 0.05-0.3), so no smooth approximation
    // can track it tightly near the centre; the tails are what the
    // alpha = 0.05/0.01 decisions consume.
    synth::SplitMix64 rng(53);
    int tail_cases = 0;
    double worst_tail = 0.0;
    for (int round = 0; round < 1000; ++round) {
        const std::size_t n1 = static_cast<std::size_t>(rng.range(3, 7));
        const std::size_t n2 = static_cast<std::size_t>(rng.range(3, 7));
        if (n1 + n2 > 10) continue;
        const auto xs = random_values(rng, n1, 8);
        const auto ys = random_values(rng, n2, 8);
        const auto approx = stats::mann_whitney_u(xs, ys, stats::MwuMethod::approx);
        const auto oracle = synth::permutation_mwu_p(xs, ys);
        REQUIRE(approx.ok());
        REQUIRE(oracle.ok());
        if (oracle.value() <= 0.10) {
            ++tail_cases;
            worst_tail = std::max(worst_tail,
                                  std::fabs(approx.value().p_value - oracle.value()));
        }
    }
    CHECK(tail_cases > 20);
    CHECK(worst_tail <= 0.05);
}

TEST_CASE("shapiro-wilk") {
    SUBCASE("constant sample is an error") {
        const std::vector<double> xs(10, 3.14);
        CHECK_FALSE(stats::shapiro_wilk(xs).ok());
    }
    SUBCASE("n out of range is an error") {
        CHECK_FALSE(stats::shapiro_wilk(std::vector<double>{1.0, 2.0}).ok());
        CHECK_FALSE(stats::shapiro_wilk(std::vector<double>(5001, 0.0)).ok());
    }
    SUBCASE("fixed normal draws do not reject") {
        synth::SplitMix64 rng(59);
        std::vector<double> xs(20);
        for (auto& x : xs) x = rng.gauss();
        const auto r = stats::shapiro_wilk(xs);
        REQUIRE(r.ok());
        CHECK(r.value().p_value > 0.05);
    }
    SUBCASE("strongly bimodal n=50 rejects hard") {
        std::vector<double> xs;
        synth::SplitMix64 rng(61);
        for (int i = 0; i < 25; ++i) xs.push_back(-4.0 + 0.3 * rng.gauss());
        for (int i = 0; i < 25; ++i) xs.push_back(4.0 + 0.3 * rng.gauss());
        const auto r = stats::shapiro_wilk(xs);
        REQUIRE(r.ok());
        CHECK(r.value().p_value < 0.01);
    }
    SUBCASE("matches the reference fixture") {
        std::ifstream in(std::string(OCAM_TEST_DATA_DIR) + "/shapiro_wilk_reference.json");
        REQUIRE(in.good());
        const auto fixture = nlohmann::json::parse(in);
        for (const auto& dataset : fixture["datasets"]) {
            const auto xs = dataset["data"].get<std::vector<double>>();
            const auto r = stats::shapiro_wilk(xs);
            REQUIRE(r.ok());
            INFO("dataset ", dataset["name"].get<std::string>());
            CHECK(std::fabs(r.value().w_statistic - dataset["w"].get<double>()) < 1e-3);
            CHECK(std::fabs(r.value().p_value - dataset["p"].get<double>()) < 5e-3);
        }
    }
}

TEST_CASE("magnitude classification reproduces every anchored label") {
    using stats::Magnitude;
    const std::vector<std::pair<double, Magnitude>> table = {
        // all printed (tau, label) pairs of the correlation table
        {-0.332, Magnitude::strong},   {-0.199, Magnitude::moderate},
        {-0.840, Magnitude::strong},   {0.237, Magnitude::moderate},
        {0.093, Magnitude::very_weak}, {-0.353, Magnitude::strong},
        {-0.529, Magnitude::strong},   {0.353, Magnitude::strong},
        {0.148, Magnitude::weak},      {-0.301, Magnitude::strong},
        {0.229, Magnitude::moderate},  {-0.107, Magnitude::weak},
        {-0.464, Magnitude::strong},   {0.770, Magnitude::strong},
        {-0.918, Magnitude::strong},   {0.104, Magnitude::weak},
        {0.039, Magnitude::very_weak}, {0.454, Magnitude::strong},
    };
    for (const auto& [tau, expected] : table) {
        INFO("tau = ", tau);
        CHECK(stats::classify_magnitude(tau) == expected);
    }
    CHECK(std::string(stats::to_string(Magnitude::very_weak)) == "Very Weak");
    CHECK(std::string(stats::to_string(Magnitude::strong)) == "Strong");

    SUBCASE("bin boundaries round half away from zero") {
        CHECK(stats::classify_magnitude(0.095) == Magnitude::weak);       // rounds to 0.10
        CHECK(stats::classify_magnitude(0.0949) == Magnitude::very_weak); // rounds to 0.09
        CHECK(stats::classify_magnitude(-0.195) == Magnitude::moderate);  // rounds to 0.20
        CHECK(stats::classify_magnitude(0.295) == Magnitude::strong);     // rounds to 0.30
        CHECK(stats::classify_magnitude(0.0) == Magnitude::very_weak);
        CHECK(stats::classify_magnitude(1.0) == Magnitude::strong);
        CHECK(stats::classify_magnitude(-1.0) == Magnitude::strong);
    }
}
