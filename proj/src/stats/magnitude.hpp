#pragma once

#include <string_view>

namespace ocam::stats {

enum class Magnitude { very_weak, weak, moderate, strong };

/// Association strength from |tau_b|, rounded half-away-from-zero to
/// two decimals before binning: < 0.10 Very Weak, < 0.20 Weak,
/// < 0.30 Moderate, otherwise Strong.
Magnitude classify_magnitude(double tau_b);

std::string_view to_string(Magnitude m);

}  // namespace ocam::stats
