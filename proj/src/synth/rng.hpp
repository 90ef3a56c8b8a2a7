#pragma once

#include <cmath>
#include <cstdint>

namespace ocam::synth {

/// splitmix64; the whole fixture factory derives from one 64-bit seed
/// so generated filesets are reproducible across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// uniform integer in [lo, hi] inclusive
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// standard normal via Box-Muller
    double gauss() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    /// derived deterministic sub-stream
    SplitMix64 fork(std::uint64_t salt) const {
        SplitMix64 child(state_ ^ (salt * 0xD6E8FEB86659FD93ULL + 0x2545F4914F6CDD1DULL));
        child.next();
        return child;
    }

private:
    std::uint64_t state_;
};

}  // namespace ocam::synth
