#include "synth/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ocam::synth {

core::Result<BruteForceTau> brute_force_tau(std::span<const double> xs,
                                            std::span<const double> ys) {
    using R = core::Result<BruteForceTau>;
    if (xs.size() != ys.size() || xs.size() < 2) {
        return R::failure(core::Errc::invalid_argument, "brute_force_tau: bad input sizes");
    }
    BruteForceTau out;
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = xs[j] - xs[i];
            const double dy = ys[j] - ys[i];
            if (dx == 0.0 && dy == 0.0) {
                ++out.ties_x;
                ++out.ties_y;
            } else if (dx == 0.0) {
                ++out.ties_x;
            } else if (dy == 0.0) {
                ++out.ties_y;
            } else if ((dx > 0.0) == (dy > 0.0)) {
                ++out.concordant;
            } else {
                ++out.discordant;
            }
        }
    }
    const std::int64_t n0 =
        static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
    if (out.ties_x == n0 || out.ties_y == n0) {
        return R::failure(core::Errc::undefined_result,
                          "brute_force_tau: degenerate, all pairs tied");
    }
    out.tau_b = static_cast<double>(out.concordant - out.discordant) /
                (std::sqrt(static_cast<double>(n0 - out.ties_x)) *
                 std::sqrt(static_cast<double>(n0 - out.ties_y)));
    return out;
}

namespace {

double rank_u(const std::vector<double>& ranks, const std::vector<std::size_t>& subset) {
    double r = 0.0;
    for (std::size_t i : subset) r += ranks[i];
    const double n1 = static_cast<double>(subset.size());
    return r - n1 * (n1 + 1.0) / 2.0;
}

void enumerate(std::size_t next, std::size_t total, std::size_t want,
               std::vector<std::size_t>& subset, const std::vector<double>& ranks, double mu,
               double d_obs, std::int64_t& hits, std::int64_t& count) {
    if (subset.size() == want) {
        ++count;
        if (std::fabs(rank_u(ranks, subset) - mu) >= d_obs - 1e-9) ++hits;
        return;
    }
    if (total - next < want - subset.size()) return;
    subset.push_back(next);
    enumerate(next + 1, total, want, subset, ranks, mu, d_obs, hits, count);
    subset.pop_back();
    enumerate(next + 1, total, want, subset, ranks, mu, d_obs, hits, count);
}

}  // namespace

core::Result<double> permutation_mwu_p(std::span<const double> xs,
                                       std::span<const double> ys) {
    using R = core::Result<double>;
    if (xs.empty() || ys.empty()) {
        return R::failure(core::Errc::invalid_argument, "permutation_mwu_p: empty group");
    }
    const std::size_t total = xs.size() + ys.size();
    if (total > 14) {
        return R::failure(core::Errc::out_of_range,
                          "permutation_mwu_p: enumeration bound is n1+n2 <= 14");
    }

    std::vector<double> pooled(xs.begin(), xs.end());
    pooled.insert(pooled.end(), ys.begin(), ys.end());

    // average ranks of the pooled sample
    std::vector<std::size_t> order(total);
    for (std::size_t i = 0; i < total; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
    std::vector<double> ranks(total);
    std::size_t i = 0;
    while (i < total) {
        std::size_t j = i;
        while (j + 1 < total && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double avg = static_cast<double>(i + j) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }

    std::vector<std::size_t> observed(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) observed[k] = k;
    const double mu = static_cast<double>(xs.size() * ys.size()) / 2.0;
    const double d_obs = std::fabs(rank_u(ranks, observed) - mu);

    std::int64_t hits = 0, count = 0;
    std::vector<std::size_t> subset;
    subset.reserve(xs.size());
    enumerate(0, total, xs.size(), subset, ranks, mu, d_obs, hits, count);
    return static_cast<double>(hits) / static_cast<double>(count);
}

}  // namespace ocam::synth
