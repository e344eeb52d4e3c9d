#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

#include "borefield/errors.hpp"

namespace borefield {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

/// Adaptive Gauss-Kronrod (21-point) integration of `f` over [a, b].
///
/// Terminates when the error estimate drops below `rel_tol` times the L1 norm
/// of the integrand, or below `abs_tol`. Throws QuadratureError carrying the
/// achieved relative error if the recursion depth is exhausted first.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double rel_tol,
                                    unsigned max_depth = 24, double abs_tol = 0.0) {
  QuadratureResult r;
  if (a == b) return r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
      f, a, b, max_depth, rel_tol, &r.error, &r.l1);
  if (!std::isfinite(r.value)) {
    std::ostringstream msg;
    msg << "non-finite integral over [" << a << ", " << b << "]";
    throw QuadratureError(msg.str(), std::numeric_limits<double>::infinity());
  }
  // The estimate is pessimistic by construction; allow a small factor and an
  // absolute floor at the round-off level of the integrand.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * r.l1;
  if (r.error > 4.0 * rel_tol * r.l1 && r.error > floor && r.error > abs_tol) {
    const double achieved = r.l1 > 0.0 ? r.error / r.l1 : r.error;
    std::ostringstream msg;
    msg << "quadrature over [" << a << ", " << b << "] did not converge: relative error "
        << achieved << " > " << rel_tol;
    throw QuadratureError(msg.str(), achieved);
  }
  return r;
}

template <class F>
double integrate(F&& f, double a, double b, double rel_tol, unsigned max_depth = 24) {
  return integrate_adaptive(std::forward<F>(f), a, b, rel_tol, max_depth).value;
}

}  // namespace borefield
