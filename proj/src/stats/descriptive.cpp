#include "stats/descriptive.hpp"

#include <algorithm>
#include <cmath>

namespace ocam::stats {

core::Result<DescriptiveStats> describe(std::span<const double> xs) {
    if (xs.empty()) {
        return core::Result<DescriptiveStats>::failure(core::Errc::invalid_argument,
                                                       "describe: empty sample");
    }
    DescriptiveStats s;
    s.n = static_cast<std::int64_t>(xs.size());
    s.min = *std::min_element(xs.begin(), xs.end());
    s.max = *std::max_element(xs.begin(), xs.end());

    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(s.n);

    if (s.n > 1) {
        double ss = 0.0;
        for (double x : xs) {
            const double d = x - s.mean;
            ss += d * d;
        }
        s.std_dev = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    return s;
}

}  // namespace ocam::stats
