#pragma once

#include <cstdint>
#include <span>

#include "core/result.hpp"

namespace ocam::stats {

enum class MwuMethod {
    automatic,  // exact when n1+n2 <= 12 (ties included), otherwise approximation
    exact,      // exact permutation distribution over rank sums
    approx,     // normal approximation, tie-corrected variance, 0.5 continuity correction
};

struct MwuResult {
    double u_statistic = 0.0;  // U of the first group, from average ranks
    double p_value = 1.0;      // two-sided
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    bool exact = false;
};

/// Mann-Whitney U. The exact two-sided p counts assignments at least
/// as far from n1*n2/2 as the observed U over all C(n1+n2, n1) group
/// assignments, computed with a subset-sum recurrence over the scaled
/// average ranks (shift algorithm), which handles ties. Feasible up to
/// n1+n2 = 64; automatic mode switches to the approximation above 12.
core::Result<MwuResult> mann_whitney_u(std::span<const double> xs, std::span<const double> ys,
                                       MwuMethod method = MwuMethod::automatic);

/// Average ranks of the pooled sample (1-based, ties share the mean rank).
void average_ranks(std::span<const double> pooled, std::span<double> ranks_out);

}  // namespace ocam::stats
