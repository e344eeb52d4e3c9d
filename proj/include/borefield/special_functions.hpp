#pragma once

#include <cmath>
#include <limits>
#include <numbers>

namespace borefield {

/// exp(x*x) with the rounding error of the square folded back in, so that
/// large arguments keep full relative accuracy.
inline double exp_square(double x) {
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(hi) * (1.0 + lo);
}

/// Scaled complementary error function erfcx(x) = exp(x^2) * erfc(x).
///
/// Direct product for moderate arguments, Laplace continued fraction in the
/// tail where erfc underflows. Relative accuracy is a few ulp for x >= 0;
/// for x < 0 the reflection 2 exp(x^2) - erfcx(-x) overflows below about
/// -26.6 and returns +inf there.
inline double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 * exp_square(x) - erfcx(-x);
  if (x < 25.0) return exp_square(x) * std::erfc(x);
  // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  double tail = x;
  for (int k = 60; k >= 1; --k) tail = x + 0.5 * k / tail;
  return 1.0 / (std::sqrt(std::numbers::pi) * tail);
}

}  // namespace borefield
