#pragma once

// Self-contained normal CDF. The solver's outputs must be reproducible
// bit-for-bit across platforms, so we avoid libm's erf (whose last-ulp
// behaviour varies between implementations) and evaluate our own:
//
//   |x| <= 2 : scaled power series with all-positive terms (no cancellation),
//              erf(x) = 2x/sqrt(pi) * exp(-x^2) * sum_n (2x^2)^n / (2n+1)!!
//   |x| >  2 : Legendre continued fraction for erfc, modified Lentz scheme.
//
// Both branches converge to better than 1e-15 relative error, comfortably
// inside the 1e-12 absolute tolerance the callers rely on.

#include <cmath>
#include <limits>

namespace persuasion {

namespace detail {

inline double erf_series(double x) {
  // erf(x) = 2x/sqrt(pi) * exp(-x^2) * sum_{n>=0} (2x^2)^n / (1*3*...*(2n+1))
  const double two_x2 = 2.0 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= two_x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  constexpr double two_over_sqrt_pi = 1.1283791670955125739;
  return two_over_sqrt_pi * x * std::exp(-x * x) * sum;
}

inline double erfc_cf(double x) {
  // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  // for x > 0, evaluated with the modified Lentz algorithm.
  constexpr double tiny = 1e-300;
  double f = x;
  if (f == 0.0) f = tiny;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 300; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  constexpr double one_over_sqrt_pi = 0.5641895835477562869;
  return one_over_sqrt_pi * std::exp(-x * x) / f;
}

}  // namespace detail

inline double erf_own(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::fabs(x);
  if (ax <= 2.0) return detail::erf_series(x);
  if (ax > 27.0) return x > 0 ? 1.0 : -1.0;
  const double tail = detail::erfc_cf(ax);
  return x > 0 ? 1.0 - tail : tail - 1.0;
}

inline double erfc_own(double x) {
  if (std::isnan(x)) return x;
  if (x > 2.0) {
    if (x > 27.0) return 0.0;
    return detail::erfc_cf(x);
  }
  if (x < -2.0) {
    if (x < -27.0) return 2.0;
    return 2.0 - detail::erfc_cf(-x);
  }
  return 1.0 - detail::erf_series(x);
}

// Standard normal CDF.
inline double normal_cdf(double z) {
  constexpr double inv_sqrt2 = 0.7071067811865475244;
  return 0.5 * erfc_own(-z * inv_sqrt2);
}

}  // namespace persuasion
