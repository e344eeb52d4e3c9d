#pragma once

// Closed-form building blocks of the finite line source soil model and of
// the quasi-steady 1U borehole solution. All temperatures are deviations
// from the undisturbed ground temperature.

#include <cmath>
#include <numbers>
#include <sstream>

#include "borefield/errors.hpp"
#include "borefield/properties.hpp"
#include "borefield/quadrature.hpp"
#include "borefield/special_functions.hpp"

namespace borefield {

/// Largest gamma*L for which the hyperbolic terms are evaluated.
inline constexpr double kMaxGammaLength = 50.0;

namespace detail {

inline void require_time_and_length(double tau, double length) {
  if (!(tau > 0.0)) {
    std::ostringstream msg;
    msg << "time must be positive (got " << tau << ")";
    throw DomainError(msg.str());
  }
  if (!(length > 0.0)) {
    std::ostringstream msg;
    msg << "borehole length must be positive (got " << length << ")";
    throw DomainError(msg.str());
  }
}

inline void require_gamma_length(double gamma_length) {
  if (!(gamma_length <= kMaxGammaLength)) {
    std::ostringstream msg;
    msg << "gamma*L = " << gamma_length << " exceeds " << kMaxGammaLength
        << "; hyperbolic terms would overflow";
    throw OverflowError(msg.str());
  }
}

}  // namespace detail

/// Vertical response of a line source on [0, L] with its image sink on
/// [-L, 0], evaluated at depth z after elapsed time tau. Odd in z.
inline double vertical_kernel(double z, double tau, double length, const SoilProperties& soil) {
  detail::require_time_and_length(tau, length);
  const double s = 2.0 * std::sqrt(soil.thermal_diffusivity * tau);
  return 0.5 * (std::erf((length - z) / s) + 2.0 * std::erf(z / s) - std::erf((length + z) / s));
}

/// Horizontal response at radial distance r, in 1/s. Peaks at tau = r^2/(4 alpha).
inline double radial_kernel(double r, double tau, const SoilProperties& soil) {
  if (!(r > 0.0)) {
    std::ostringstream msg;
    msg << "radial distance must be positive (got " << r << "); the line source is singular on its axis";
    throw DomainError(msg.str());
  }
  if (!(tau > 0.0)) {
    std::ostringstream msg;
    msg << "time must be positive (got " << tau << ")";
    throw DomainError(msg.str());
  }
  return std::exp(-r * r / (4.0 * soil.thermal_diffusivity * tau)) / tau;
}

/// Elapsed time at which radial_kernel(r, .) is maximal.
inline double radial_peak_time(double r, const SoilProperties& soil) {
  return r * r / (4.0 * soil.thermal_diffusivity);
}

inline BoreholeCoefficients borehole_coefficients(const FluidCircuit& fluid,
                                                  const BoreholeSpec& bhe, double length) {
  if (!(length > 0.0)) {
    std::ostringstream msg;
    msg << "borehole length must be positive (got " << length << ")";
    throw DomainError(msg.str());
  }
  validate(fluid, "fluid");
  validate(bhe, "borehole");

  BoreholeCoefficients c;
  const double capacity_flow = fluid.borehole_capacity_flow();
  c.beta_soil = 1.0 / (bhe.soil_resistance * capacity_flow);
  c.beta_inter = 1.0 / (bhe.interpipe_resistance * capacity_flow);
  c.gamma = std::sqrt(c.beta_soil * (c.beta_soil + 2.0 * c.beta_inter));
  c.length = length;

  const double gl = c.gamma * length;
  detail::require_gamma_length(gl);
  c.psi1 = c.gamma / (2.0 * c.beta_soil * std::sinh(gl));
  c.psi2 = 0.5 * (c.gamma / (c.beta_soil * std::tanh(gl)) - 1.0);
  return c;
}

struct GValues {
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
};

inline GValues eval_g(double z, const BoreholeCoefficients& c) {
  if (!(z >= 0.0)) {
    std::ostringstream msg;
    msg << "g-functions need z >= 0 (got " << z << ")";
    throw DomainError(msg.str());
  }
  const double gz = c.gamma * z;
  detail::require_gamma_length(gz);
  const double ch = std::cosh(gz);
  const double sh = std::sinh(gz);
  GValues g;
  g.g1 = 2.0 * c.gamma / (c.beta_soil * std::tanh(gz) + c.gamma) - 1.0;
  g.g2 = c.gamma / (c.beta_soil * sh + c.gamma * ch);
  g.g3 = 2.0 * c.beta_soil * ch;
  return g;
}

/// Weight 2 beta_s cosh(gamma (L - z)) applied to the wall temperature at depth z.
inline double wall_weight(double z, const BoreholeCoefficients& c) {
  return 2.0 * c.beta_soil * std::cosh(c.gamma * (c.length - z));
}

/// Outlet temperature of one borehole for inlet `t_in` and wall profile
/// `wall(z)` on [0, L].
template <class WallProfile>
double outlet_from_wall_profile(double t_in, WallProfile&& wall, const BoreholeCoefficients& c,
                                double rel_tol = 1e-10) {
  const GValues end = eval_g(c.length, c);
  const double weighted = integrate(
      [&](double z) { return wall(z) * wall_weight(z, c); }, 0.0, c.length, rel_tol);
  return t_in * end.g1 + end.g2 * weighted;
}

/// E(xi, eta) = e^{eta^2} [e^{2 xi eta} erf(xi + eta) - e^{-2 xi eta} erf(xi - eta)],
/// evaluated literally. Overflows for large arguments; use aux_h for H.
inline double aux_e(double xi, double eta) {
  return std::exp(eta * eta) *
         (std::exp(2.0 * xi * eta) * std::erf(xi + eta) -
          std::exp(-2.0 * xi * eta) * std::erf(xi - eta));
}

/// H(xi, eta) = 4 cosh^2(xi eta) E(xi, eta) - E(2 xi, eta) - (1 + 2 cosh(2 xi eta)) E(0, eta).
///
/// Each E is split as e^{eta^2} P(x) - e^{-x^2} Q(x) with Q built from erfcx.
/// The e^{eta^2} parts combine into a closed expression per regime of
/// (xi, 2 xi) relative to eta, so no overflowing factor is ever formed.
inline double aux_h(double xi, double eta) {
  const double a = xi * eta;
  auto q = [eta](double x) {
    return x >= eta ? erfcx(x + eta) - erfcx(x - eta) : erfcx(x + eta) + erfcx(eta - x);
  };
  const double ch = std::cosh(a);
  const double scaled = 4.0 * ch * ch * std::exp(-xi * xi) * q(xi) -
                        std::exp(-4.0 * xi * xi) * q(2.0 * xi) -
                        (1.0 + 2.0 * std::cosh(2.0 * a)) * 2.0 * erfcx(eta);
  double growing = 0.0;
  if (xi >= eta) {
    growing = std::exp(eta * eta) * (-2.0 - 4.0 * std::exp(-2.0 * a));
  } else if (2.0 * xi >= eta) {
    growing = 2.0 * std::exp(eta * (eta - 4.0 * xi));
  }
  return growing - scaled;
}

/// Vertical kernel integrated against the wall weight over [0, L]:
/// int_0^L Z(z, tau; L) 2 beta_s cosh(gamma (L - z)) dz.
inline double integrated_vertical_kernel(double tau, double length, const BoreholeCoefficients& c,
                                         const SoilProperties& soil) {
  detail::require_time_and_length(tau, length);
  detail::require_gamma_length(c.gamma * length);
  const double root = std::sqrt(soil.thermal_diffusivity * tau);
  const double xi = length / (2.0 * root);
  const double eta = c.gamma * root;
  const double value = c.beta_soil / (2.0 * c.gamma) * aux_h(xi, eta);
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << "integrated vertical kernel not representable at xi=" << xi << ", eta=" << eta;
    throw OverflowError(msg.str());
  }
  return value;
}

}  // namespace borefield
