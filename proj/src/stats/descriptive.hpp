#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "core/result.hpp"

namespace ocam::stats {

struct DescriptiveStats {
    std::int64_t n = 0;
    double mean = 0.0;
    std::optional<double> std_dev;  // sample (n-1); absent for n = 1
    double min = 0.0;
    double max = 0.0;
};

core::Result<DescriptiveStats> describe(std::span<const double> xs);

}  // namespace ocam::stats
