#pragma once

#include <cstdint>
#include <span>

#include "core/result.hpp"

namespace ocam::stats {

struct KendallResult {
    double tau_b = 0.0;
    double p_value = 1.0;  // two-sided, tie-adjusted normal approximation
    std::int64_t n = 0;
    std::int64_t concordant = 0;
    std::int64_t discordant = 0;
    std::int64_t ties_x = 0;  // tied pairs within x
    std::int64_t ties_y = 0;  // tied pairs within y
};

/// Kendall tau-b with tie correction. O(n log n) via merge-sort
/// inversion counting; exact pair counts, identical to full pair
/// enumeration. Undefined when all x or all y are tied.
core::Result<KendallResult> kendall_tau_b(std::span<const double> xs,
                                          std::span<const double> ys);

}  // namespace ocam::stats
