#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "borefield/field_response.hpp"
#include "borefield/geometry.hpp"
#include "borefield/placement.hpp"
#include "borefield/properties.hpp"

namespace borefield {

/// Bounds on the uniform borehole length and limits on the averaged outlet
/// temperature (degC).
struct LengthProblem {
  double min_length = 0.0;
  double max_length = 0.0;
  double min_outlet = 0.0;
  double max_outlet = 0.0;
  double temperature_tolerance = 1e-3;  // K
  double length_tolerance = 0.01;       // m

  bool operator==(const LengthProblem&) const = default;
};

inline void collect_errors(const LengthProblem& p, const std::string& path,
                           std::vector<std::string>& errors) {
  detail::require_positive(errors, path + ".min_length_m", p.min_length);
  detail::require_positive(errors, path + ".max_length_m", p.max_length);
  if (p.min_length > 0.0 && p.max_length > 0.0 && !(p.min_length < p.max_length)) {
    std::ostringstream msg;
    msg << path << ".min_length_m (" << p.min_length << ") must be below " << path
        << ".max_length_m (" << p.max_length << ")";
    errors.push_back(msg.str());
  }
  detail::require_finite(errors, path + ".min_outlet_c", p.min_outlet);
  detail::require_finite(errors, path + ".max_outlet_c", p.max_outlet);
  if (std::isfinite(p.min_outlet) && std::isfinite(p.max_outlet) &&
      !(p.min_outlet < p.max_outlet)) {
    std::ostringstream msg;
    msg << path << ".min_outlet_c (" << p.min_outlet << ") must be below " << path
        << ".max_outlet_c (" << p.max_outlet << ")";
    errors.push_back(msg.str());
  }
  detail::require_positive(errors, path + ".temperature_tolerance_k", p.temperature_tolerance);
  detail::require_positive(errors, path + ".length_tolerance_m", p.length_tolerance);
}

/// Automatic placement request: N_b boreholes inside a property polygon.
struct PlacementRequest {
  DomainPolygon domain;
  std::size_t count = 0;
  CvtOptions options;

  bool operator==(const PlacementRequest&) const = default;
};

/// Where the load series came from, kept so a scenario can be written back.
/// An empty `file` means the values were given inline.
struct LoadSource {
  std::string file;
  std::size_t repeat_years = 1;

  bool operator==(const LoadSource&) const = default;
};

struct Scenario {
  SoilProperties soil;
  FluidCircuit fluid;
  BoreholeSpec borehole;
  FieldLayout layout;  // always resolved; produced by `placement` when present
  std::optional<PlacementRequest> placement;
  std::optional<PlacementResult> placement_result;
  LoadProfile load;
  LoadSource load_source;
  LengthProblem limits;
  std::size_t coarse_factor = kDefaultCoarseFactor;

  bool operator==(const Scenario& o) const {
    return soil == o.soil && fluid == o.fluid && borehole == o.borehole && layout == o.layout &&
           placement == o.placement && load == o.load && load_source == o.load_source &&
           limits == o.limits && coarse_factor == o.coarse_factor;
  }
};

inline void collect_errors(const Scenario& s, std::vector<std::string>& errors) {
  collect_errors(s.soil, "soil", errors);
  collect_errors(s.fluid, "fluid", errors);
  collect_errors(s.borehole, "borehole", errors);
  collect_errors(s.layout, s.borehole.radius, "layout", errors);
  collect_errors(s.load, "load", errors);
  collect_errors(s.limits, "limits", errors);
  if (s.coarse_factor == 0) errors.push_back("coarse_factor must be at least 1");
  const double nb = static_cast<double>(s.layout.size());
  if (nb > 0 && s.fluid.total_mass_flow > 0.0 && s.fluid.per_borehole_mass_flow > 0.0) {
    const double expected = nb * s.fluid.per_borehole_mass_flow;
    if (std::abs(expected - s.fluid.total_mass_flow) > 1e-9 * s.fluid.total_mass_flow) {
      std::ostringstream msg;
      msg << "fluid.total_mass_flow_kg_per_s (" << s.fluid.total_mass_flow
          << ") must equal N_b * fluid.per_borehole_mass_flow_kg_per_s (" << expected << ")";
      errors.push_back(msg.str());
    }
  }
}

inline void validate(const Scenario& s) {
  std::vector<std::string> errors;
  collect_errors(s, errors);
  if (!errors.empty()) throw ValidationError(detail::join_errors(errors));
}

}  // namespace borefield
