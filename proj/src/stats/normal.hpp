#pragma once

namespace ocam::stats {

/// Standard normal CDF.
double normal_cdf(double x);

/// Upper tail, 1 - CDF(x), computed without cancellation.
double normal_sf(double x);

/// Inverse CDF. Rational approximation polished with Halley steps;
/// accurate to full double precision for p in (0, 1).
double normal_ppf(double p);

/// P(|Z| >= |z|) for a standard normal Z.
double two_sided_p(double z);

}  // namespace ocam::stats
