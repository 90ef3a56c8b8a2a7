#include "stats/kendall.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "stats/normal.hpp"

namespace ocam::stats {

namespace {

struct TieCounts {
    std::int64_t pairs = 0;       // sum t(t-1)/2
    std::int64_t v1 = 0;          // sum t(t-1)(2t+5)
    std::int64_t v2 = 0;          // sum t(t-1)(t-2)
    std::int64_t largest_group = 0;
};

TieCounts tie_counts(std::vector<double> sorted_values) {
    TieCounts tc;
    std::size_t i = 0;
    while (i < sorted_values.size()) {
        std::size_t j = i;
        while (j + 1 < sorted_values.size() && sorted_values[j + 1] == sorted_values[i]) ++j;
        const std::int64_t t = static_cast<std::int64_t>(j - i + 1);
        tc.pairs += t * (t - 1) / 2;
        tc.v1 += t * (t - 1) * (2 * t + 5);
        tc.v2 += t * (t - 1) * (t - 2);
        tc.largest_group = std::max(tc.largest_group, t);
        i = j + 1;
    }
    return tc;
}

// strict inversions (a_i > a_j for i < j)
std::int64_t count_inversions(std::vector<double>& a) {
    std::vector<double> buf(a.size());
    std::int64_t count = 0;
    for (std::size_t width = 1; width < a.size(); width *= 2) {
        for (std::size_t lo = 0; lo + width < a.size(); lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, a.size());
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (a[j] < a[i]) {
                    count += static_cast<std::int64_t>(mid - i);
                    buf[k++] = a[j++];
                } else {
                    buf[k++] = a[i++];
                }
            }
            while (i < mid) buf[k++] = a[i++];
            while (j < hi) buf[k++] = a[j++];
            std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
                      buf.begin() + static_cast<std::ptrdiff_t>(hi),
                      a.begin() + static_cast<std::ptrdiff_t>(lo));
        }
    }
    return count;
}

}  // namespace

core::Result<KendallResult> kendall_tau_b(std::span<const double> xs,
                                          std::span<const double> ys) {
    using R = core::Result<KendallResult>;
    if (xs.size() != ys.size()) {
        return R::failure(core::Errc::invalid_argument, "kendall_tau_b: length mismatch");
    }
    const std::int64_t n = static_cast<std::int64_t>(xs.size());
    if (n < 2) {
        return R::failure(core::Errc::invalid_argument, "kendall_tau_b: need n >= 2");
    }

    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (xs[a] != xs[b]) return xs[a] < xs[b];
        return ys[a] < ys[b];
    });

    // tied pairs in x, in y, and in both
    std::vector<double> sorted_x(xs.size()), sorted_y(ys.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted_x[i] = xs[order[i]];
    const TieCounts tx = tie_counts(sorted_x);
    sorted_y.assign(ys.begin(), ys.end());
    std::sort(sorted_y.begin(), sorted_y.end());
    const TieCounts ty = tie_counts(sorted_y);

    std::int64_t both_tied = 0;
    {
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]] &&
                   ys[order[j + 1]] == ys[order[i]])
                ++j;
            const std::int64_t t = static_cast<std::int64_t>(j - i + 1);
            both_tied += t * (t - 1) / 2;
            i = j + 1;
        }
    }

    const std::int64_t n0 = n * (n - 1) / 2;
    if (tx.pairs == n0 || ty.pairs == n0) {
        return R::failure(core::Errc::undefined_result,
                          "kendall_tau_b: tau undefined, a variable is constant");
    }

    // y in x-order; ties in x are y-ascending, so inversions = discordant pairs
    std::vector<double> y_seq(ys.size());
    for (std::size_t i = 0; i < order.size(); ++i) y_seq[i] = ys[order[i]];
    const std::int64_t discordant = count_inversions(y_seq);
    const std::int64_t concordant = n0 - tx.pairs - ty.pairs + both_tied - discordant;

    KendallResult r;
    r.n = n;
    r.concordant = concordant;
    r.discordant = discordant;
    r.ties_x = tx.pairs;
    r.ties_y = ty.pairs;

    const double s = static_cast<double>(concordant - discordant);
    const double denom = std::sqrt(static_cast<double>(n0 - tx.pairs)) *
                         std::sqrt(static_cast<double>(n0 - ty.pairs));
    r.tau_b = s / denom;

    // tie-adjusted variance of S (no continuity correction)
    const double dn = static_cast<double>(n);
    double var_s = (dn * (dn - 1) * (2 * dn + 5) - static_cast<double>(tx.v1) -
                    static_cast<double>(ty.v1)) /
                   18.0;
    if (n > 2) {
        var_s += static_cast<double>(tx.v2) * static_cast<double>(ty.v2) /
                 (9.0 * dn * (dn - 1) * (dn - 2));
    }
    var_s += static_cast<double>(2 * tx.pairs) * static_cast<double>(2 * ty.pairs) /
             (2.0 * dn * (dn - 1));

    if (var_s <= 0.0) {
        r.p_value = 1.0;
    } else {
        r.p_value = two_sided_p(s / std::sqrt(var_s));
    }
    return r;
}

}  // namespace ocam::stats
