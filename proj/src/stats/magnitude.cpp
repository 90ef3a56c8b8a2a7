#include "stats/magnitude.hpp"

#include <cmath>

namespace ocam::stats {

Magnitude classify_magnitude(double tau_b) {
    const double r = std::round(std::fabs(tau_b) * 100.0) / 100.0;
    if (r < 0.10) return Magnitude::very_weak;
    if (r < 0.20) return Magnitude::weak;
    if (r < 0.30) return Magnitude::moderate;
    return Magnitude::strong;
}

std::string_view to_string(Magnitude m) {
    switch (m) {
        case Magnitude::very_weak: return "Very Weak";
        case Magnitude::weak: return "Weak";
        case Magnitude::moderate: return "Moderate";
        case Magnitude::strong: return "Strong";
    }
    return "Very Weak";
}

}  // namespace ocam::stats
