#pragma once

#include <cstdint>
#include <span>

#include "core/result.hpp"

namespace ocam::stats {

struct SwResult {
    double w_statistic = 0.0;
    double p_value = 0.0;
    std::int64_t n = 0;
};

/// Shapiro-Wilk normality test, Royston's polynomial approximation
/// (AS R94). Valid for 3 <= n <= 5000; undefined for constant samples.
core::Result<SwResult> shapiro_wilk(std::span<const double> xs);

}  // namespace ocam::stats
