#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "borefield/field_response.hpp"
#include "borefield/kernels.hpp"
#include "borefield/scenario.hpp"

namespace borefield {

/// Fluid temperature series of a field on the fine load grid. Entry m
/// belongs to load step m and is sampled at its end, t = (m + 1) dt.
struct SimulationResult {
  double length = 0.0;
  double time_step = 0.0;
  std::vector<double> outlet;      // degC, field-averaged outlet
  std::vector<double> inlet;       // degC
  std::vector<double> pipe_drop;   // K, E / (m_tot c_p)
  std::vector<double> psi_self;    // K
  std::vector<double> psi_inter;   // K
  double max_outlet = 0.0;
  double min_outlet = 0.0;
  std::size_t argmax_outlet = 0;
  std::size_t argmin_outlet = 0;
  double energy_balance_residual = 0.0;  // K, max over the horizon
  double inclusive_bound_max_excess = 0.0;  // K, see DualGridResponse
  std::size_t distinct_distances = 0;
};

/// Averaged outlet of the field:
///   <T_out> = psi1 (Psi_inter + Psi_self) - psi2 dT_pipe,  T_in = <T_out> - dT_pipe,
/// with dT_pipe = E / (m_tot c_p). Temperatures are returned in degC.
inline SimulationResult simulate_outlet(const Scenario& scenario, double length,
                                        StepResponseCache* cache = nullptr) {
  const BoreholeCoefficients coeffs =
      borehole_coefficients(scenario.fluid, scenario.borehole, length);
  DualGridResponse field =
      dual_grid_response(scenario.layout, scenario.load, length, scenario.soil,
                         scenario.borehole, coeffs, scenario.coarse_factor, cache);

  const std::size_t nt = scenario.load.steps();
  const double ts = scenario.soil.undisturbed_temperature;
  const double capacity = scenario.fluid.total_capacity_flow();

  SimulationResult r;
  r.length = length;
  r.time_step = scenario.load.step_duration;
  r.outlet.resize(nt);
  r.inlet.resize(nt);
  r.pipe_drop.resize(nt);
  r.distinct_distances = field.distinct_distances;
  for (std::size_t m = 0; m < nt; ++m) {
    const double drop = scenario.load.values[m] / capacity;
    const double out_dev = coeffs.psi1 * (field.psi_inter[m] + field.psi_self[m]) - coeffs.psi2 * drop;
    const double in_dev = out_dev - drop;
    if (!std::isfinite(out_dev) || !std::isfinite(in_dev)) {
      std::ostringstream msg;
      msg << "non-finite fluid temperature at step " << m << " (L = " << length << " m)";
      throw NumericalError(msg.str());
    }
    r.pipe_drop[m] = drop;
    r.outlet[m] = ts + out_dev;
    r.inlet[m] = ts + in_dev;
    r.energy_balance_residual =
        std::max(r.energy_balance_residual, std::abs((r.outlet[m] - r.inlet[m]) - drop));
    r.inclusive_bound_max_excess = std::max(r.inclusive_bound_max_excess,
                                            std::abs(coeffs.psi1 * field.inclusive_bound_excess[m]));
  }
  const auto [lo, hi] = std::minmax_element(r.outlet.begin(), r.outlet.end());
  r.min_outlet = *lo;
  r.max_outlet = *hi;
  r.argmin_outlet = static_cast<std::size_t>(lo - r.outlet.begin());
  r.argmax_outlet = static_cast<std::size_t>(hi - r.outlet.begin());
  r.psi_self = std::move(field.psi_self);
  r.psi_inter = std::move(field.psi_inter);
  return r;
}

}  // namespace borefield
