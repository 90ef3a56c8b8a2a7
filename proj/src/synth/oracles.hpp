#pragma once

#include <cstdint>
#include <span>

#include "core/result.hpp"

namespace ocam::synth {

struct BruteForceTau {
    std::int64_t concordant = 0;
    std::int64_t discordant = 0;
    std::int64_t ties_x = 0;  // tied pairs within x
    std::int64_t ties_y = 0;
    double tau_b = 0.0;
};

/// Definitional Kendall tau-b: O(n^2) enumeration of every pair.
core::Result<BruteForceTau> brute_force_tau(std::span<const double> xs,
                                            std::span<const double> ys);

/// Exact two-sided Mann-Whitney p by enumerating all group assignments.
/// Feasible for n1+n2 <= 14.
core::Result<double> permutation_mwu_p(std::span<const double> xs,
                                       std::span<const double> ys);

}  // namespace ocam::synth
