#pragma once

// Shared fixtures for the test programs: realistic soil and circuit
// parameters and small random generators for property checks.

#include <random>

#include "borefield/borefield.hpp"

namespace borefield::testing {

inline SoilProperties demo_soil() {
  return {1.9, 0.08 / 86400.0, 15.0};
}

inline FluidCircuit demo_fluid(std::size_t boreholes = 25) {
  FluidCircuit f;
  f.specific_heat = 4019.0;
  f.density = 1026.0;
  f.total_mass_flow = 10.3397;
  f.per_borehole_mass_flow = f.total_mass_flow / static_cast<double>(boreholes);
  return f;
}

inline BoreholeSpec demo_borehole() {
  return {0.075, 0.10, 0.30};
}

/// Random but physically plausible soil / circuit / borehole draws.
struct ParameterDraw {
  SoilProperties soil;
  FluidCircuit fluid;
  BoreholeSpec borehole;
  double length = 100.0;
};

inline ParameterDraw random_parameters(std::mt19937_64& rng) {
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto log_uniform = [&](double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  };
  ParameterDraw d;
  d.soil = {uniform(0.8, 4.0), log_uniform(0.03, 0.15) / 86400.0, uniform(5.0, 20.0)};
  d.fluid.specific_heat = uniform(3500.0, 4200.0);
  d.fluid.density = uniform(990.0, 1080.0);
  d.fluid.per_borehole_mass_flow = log_uniform(0.1, 1.5);
  d.fluid.total_mass_flow = d.fluid.per_borehole_mass_flow;
  d.borehole = {uniform(0.05, 0.1), log_uniform(0.04, 0.3), log_uniform(0.1, 2.0)};
  d.length = uniform(20.0, 300.0);
  return d;
}

}  // namespace borefield::testing
