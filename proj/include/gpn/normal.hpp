#pragma once

namespace gpn {

/// Standard normal CDF. Accurate to ~1e-16 via erfc; handles +-inf.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Inverse standard normal CDF on (0,1).
///
/// Acklam's rational approximation polished with two Halley steps,
/// giving |error| < 1e-12 across the full domain. p in {0,1} maps to
/// -inf/+inf; p outside [0,1] or NaN throws std::domain_error.
double normal_quantile(double p);

}  // namespace gpn
