#include "stats/mann_whitney.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "stats/normal.hpp"

namespace ocam::stats {

void average_ranks(std::span<const double> pooled, std::span<double> ranks_out) {
    std::vector<std::size_t> order(pooled.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double avg = static_cast<double>(i + j) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks_out[order[k]] = avg;
        i = j + 1;
    }
}

namespace {

// Exact two-sided p over the permutation distribution of the rank sum.
// Average ranks are multiples of 1/2, so doubling them gives integers;
// the subset-sum table counts, for every achievable doubled rank sum,
// how many n1-subsets of the pooled sample realise it.
double exact_p_rank_distribution(const std::vector<double>& ranks, std::size_t n1,
                                 double u_obs) {
    const std::size_t total = ranks.size();
    std::vector<std::int64_t> doubled(total);
    std::int64_t sum_all = 0;
    for (std::size_t i = 0; i < total; ++i) {
        doubled[i] = static_cast<std::int64_t>(std::llround(ranks[i] * 2.0));
        sum_all += doubled[i];
    }
    std::sort(doubled.begin(), doubled.end(), std::greater<>());
    // max achievable doubled sum for k chosen elements, for table sizing
    std::int64_t max_sum = 0;
    for (std::size_t i = 0; i < n1; ++i) max_sum += doubled[i];

    // counts[k][t]: n1-subsets of size k with doubled rank sum t
    std::vector<std::vector<std::int64_t>> counts(
        n1 + 1, std::vector<std::int64_t>(static_cast<std::size_t>(max_sum) + 1, 0));
    counts[0][0] = 1;
    for (std::size_t i = 0; i < total; ++i) {
        const std::int64_t s = doubled[i];
        for (std::size_t k = std::min(n1, i + 1); k >= 1; --k) {
            auto& row = counts[k];
            const auto& prev = counts[k - 1];
            for (std::int64_t t = max_sum; t >= s; --t) {
                const std::int64_t from = t - s;
                if (prev[static_cast<std::size_t>(from)] != 0) {
                    row[static_cast<std::size_t>(t)] +=
                        prev[static_cast<std::size_t>(from)];
                }
            }
        }
    }

    const double offset = static_cast<double>(n1 * (n1 + 1)) / 2.0;
    const double mu =
        static_cast<double>(n1 * (total - n1)) / 2.0;
    const double d_obs = std::fabs(u_obs - mu);
    std::int64_t hits = 0, all = 0;
    for (std::int64_t t = 0; t <= max_sum; ++t) {
        const std::int64_t c = counts[n1][static_cast<std::size_t>(t)];
        if (c == 0) continue;
        all += c;
        const double u = static_cast<double>(t) / 2.0 - offset;
        if (std::fabs(u - mu) >= d_obs - 1e-9) hits += c;
    }
    return static_cast<double>(hits) / static_cast<double>(all);
}

}  // namespace

core::Result<MwuResult> mann_whitney_u(std::span<const double> xs, std::span<const double> ys,
                                       MwuMethod method) {
    using R = core::Result<MwuResult>;
    if (xs.empty() || ys.empty()) {
        return R::failure(core::Errc::invalid_argument, "mann_whitney_u: empty group");
    }
    const std::int64_t n1 = static_cast<std::int64_t>(xs.size());
    const std::int64_t n2 = static_cast<std::int64_t>(ys.size());
    const std::int64_t total = n1 + n2;

    std::vector<double> pooled;
    pooled.reserve(static_cast<std::size_t>(total));
    pooled.insert(pooled.end(), xs.begin(), xs.end());
    pooled.insert(pooled.end(), ys.begin(), ys.end());
    std::vector<double> ranks(pooled.size());
    average_ranks(pooled, ranks);

    double r1 = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) r1 += ranks[i];
    const double u1 = r1 - static_cast<double>(n1 * (n1 + 1)) / 2.0;
    const double mu = static_cast<double>(n1 * n2) / 2.0;

    MwuResult res;
    res.u_statistic = u1;
    res.n1 = n1;
    res.n2 = n2;

    bool use_exact = false;
    if (method == MwuMethod::automatic) {
        use_exact = total <= 12;
    } else if (method == MwuMethod::exact) {
        if (total > 64) {
            return R::failure(core::Errc::out_of_range,
                              "mann_whitney_u: exact distribution infeasible for n1+n2 = " +
                                  std::to_string(total));
        }
        use_exact = true;
    }

    if (use_exact) {
        res.p_value =
            exact_p_rank_distribution(ranks, static_cast<std::size_t>(n1), u1);
        res.exact = true;
        return res;
    }

    // normal approximation, tie-corrected variance, 0.5 continuity correction
    std::sort(pooled.begin(), pooled.end());
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j + 1 < pooled.size() && pooled[j + 1] == pooled[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    const double dn = static_cast<double>(total);
    const double var = static_cast<double>(n1 * n2) / 12.0 *
                       ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    if (var <= 0.0) {
        res.p_value = 1.0;  // all observations identical
        return res;
    }
    const double z = std::max(std::fabs(u1 - mu) - 0.5, 0.0) / std::sqrt(var);
    res.p_value = two_sided_p(z);
    return res;
}

}  // namespace ocam::stats
