#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "borefield/errors.hpp"

namespace borefield {

/// Homogeneous ground. SI units throughout (W/(m K), m^2/s, degC).
struct SoilProperties {
  double thermal_conductivity = 0.0;
  double thermal_diffusivity = 0.0;
  double undisturbed_temperature = 0.0;

  bool operator==(const SoilProperties&) const = default;
};

/// Heat-carrier circuit. Flow rates are mass flows in kg/s.
struct FluidCircuit {
  double specific_heat = 0.0;
  double density = 0.0;
  double total_mass_flow = 0.0;
  double per_borehole_mass_flow = 0.0;

  /// Thermal capacity flow through a single borehole, W/K.
  double borehole_capacity_flow() const { return per_borehole_mass_flow * specific_heat; }
  /// Thermal capacity flow of the whole field, W/K.
  double total_capacity_flow() const { return total_mass_flow * specific_heat; }

  bool operator==(const FluidCircuit&) const = default;
};

/// Single 1U borehole: radius plus the two lumped per-length resistances.
struct BoreholeSpec {
  double radius = 0.0;
  double soil_resistance = 0.0;
  double interpipe_resistance = 0.0;

  bool operator==(const BoreholeSpec&) const = default;
};

/// Length-dependent coefficients of the 1U borehole solution.
struct BoreholeCoefficients {
  double beta_soil = 0.0;   // 1/m
  double beta_inter = 0.0;  // 1/m
  double gamma = 0.0;       // 1/m
  double length = 0.0;      // m
  double psi1 = 0.0;
  double psi2 = 0.0;
};

namespace detail {

inline void require_positive(std::vector<std::string>& errors, const std::string& field,
                             double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << field << " must be positive and finite (got " << value << ")";
    errors.push_back(msg.str());
  }
}

inline void require_finite(std::vector<std::string>& errors, const std::string& field,
                           double value) {
  if (!std::isfinite(value)) errors.push_back(field + " must be finite");
}

inline std::string join_errors(const std::vector<std::string>& errors) {
  std::string out;
  for (const auto& e : errors) {
    if (!out.empty()) out += "; ";
    out += e;
  }
  return out;
}

}  // namespace detail

/// Appends every violated invariant to `errors`, prefixed with `path`.
inline void collect_errors(const SoilProperties& s, const std::string& path,
                           std::vector<std::string>& errors) {
  detail::require_positive(errors, path + ".thermal_conductivity_w_per_m_k", s.thermal_conductivity);
  detail::require_positive(errors, path + ".thermal_diffusivity", s.thermal_diffusivity);
  detail::require_finite(errors, path + ".undisturbed_temperature_c", s.undisturbed_temperature);
}

inline void collect_errors(const FluidCircuit& f, const std::string& path,
                           std::vector<std::string>& errors) {
  detail::require_positive(errors, path + ".specific_heat_j_per_kg_k", f.specific_heat);
  detail::require_positive(errors, path + ".density_kg_per_m3", f.density);
  detail::require_positive(errors, path + ".total_mass_flow_kg_per_s", f.total_mass_flow);
  detail::require_positive(errors, path + ".per_borehole_mass_flow_kg_per_s", f.per_borehole_mass_flow);
}

inline void collect_errors(const BoreholeSpec& b, const std::string& path,
                           std::vector<std::string>& errors) {
  detail::require_positive(errors, path + ".radius_m", b.radius);
  detail::require_positive(errors, path + ".soil_resistance_m_k_per_w", b.soil_resistance);
  detail::require_positive(errors, path + ".interpipe_resistance_m_k_per_w", b.interpipe_resistance);
}

template <class T>
void validate(const T& value, const std::string& path) {
  std::vector<std::string> errors;
  collect_errors(value, path, errors);
  if (!errors.empty()) throw ValidationError(detail::join_errors(errors));
}

}  // namespace borefield
