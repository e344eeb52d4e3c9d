#pragma once

// Multi-borehole transient response: step-response tables, temporal
// superposition by FFT, and the fine/coarse split between a borehole's own
// response and the interaction with its neighbours.

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <sstream>
#include <tuple>
#include <vector>

#include "borefield/convolution.hpp"
#include "borefield/errors.hpp"
#include "borefield/geometry.hpp"
#include "borefield/kernels.hpp"
#include "borefield/parallel.hpp"
#include "borefield/properties.hpp"
#include "borefield/quadrature.hpp"

namespace borefield {

/// Fine steps per coarse step for the interaction terms (monthly for hourly data).
inline constexpr std::size_t kDefaultCoarseFactor = 730;
/// Distances closer than this are treated as the same pair distance.
inline constexpr double kDistanceQuantum = 1e-6;
/// Per-interval relative tolerance of step-response quadrature.
inline constexpr double kStepResponseTolerance = 1e-12;

struct FieldLayout {
  std::vector<Point> positions;

  std::size_t size() const { return positions.size(); }
  bool operator==(const FieldLayout&) const = default;
};

/// Piecewise-constant ground load. Positive values extract heat from the ground.
struct LoadProfile {
  double step_duration = 3600.0;  // s
  std::vector<double> values;     // W

  std::size_t steps() const { return values.size(); }
  double horizon() const { return step_duration * static_cast<double>(values.size()); }
  bool operator==(const LoadProfile&) const = default;
};

/// h(t) on `times` (times[0] == 0) for unit line load: K per (W/m).
struct StepResponseTable {
  double distance = 0.0;
  std::vector<double> times;
  std::vector<double> values;
};

inline void collect_errors(const FieldLayout& layout, double borehole_radius,
                           const std::string& path, std::vector<std::string>& errors) {
  if (layout.positions.empty()) {
    errors.push_back(path + " must contain at least one borehole");
    return;
  }
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const Point p = layout.positions[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      errors.push_back(path + ".positions[" + std::to_string(i) + "] is not finite");
    }
  }
  for (std::size_t i = 0; i < layout.size(); ++i) {
    for (std::size_t j = i + 1; j < layout.size(); ++j) {
      const double d = distance(layout.positions[i], layout.positions[j]);
      if (d == 0.0) {
        errors.push_back(path + ".positions[" + std::to_string(i) + "] and [" +
                         std::to_string(j) + "] coincide");
      } else if (d < 2.0 * borehole_radius) {
        std::ostringstream msg;
        msg << path << ".positions[" << i << "] and [" << j << "] are " << d
            << " m apart, closer than one borehole diameter";
        errors.push_back(msg.str());
      }
    }
  }
}

inline void validate_layout(const FieldLayout& layout, double borehole_radius) {
  std::vector<std::string> errors;
  collect_errors(layout, borehole_radius, "layout", errors);
  if (!errors.empty()) throw ValidationError(detail::join_errors(errors));
}

inline void collect_errors(const LoadProfile& load, const std::string& path,
                           std::vector<std::string>& errors) {
  if (load.values.empty()) errors.push_back(path + " has no steps");
  detail::require_positive(errors, path + ".step_duration", load.step_duration);
  for (std::size_t i = 0; i < load.values.size(); ++i) {
    if (!std::isfinite(load.values[i])) {
      errors.push_back(path + ".values[" + std::to_string(i) + "] is not finite");
      break;
    }
  }
}

/// Dense symmetric matrix of borehole distances with r_b on the diagonal.
class DistanceMatrix {
public:
  DistanceMatrix(std::size_t n, std::vector<double> data) : n_(n), data_(std::move(data)) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

private:
  std::size_t n_;
  std::vector<double> data_;
};

inline DistanceMatrix distance_matrix(const FieldLayout& layout, double borehole_radius) {
  validate_layout(layout, borehole_radius);
  const std::size_t n = layout.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i * n + i] = borehole_radius;
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = d[j * n + i] = distance(layout.positions[i], layout.positions[j]);
    }
  }
  return DistanceMatrix(n, std::move(d));
}

/// Distinct off-diagonal pair distances with their multiplicities (i < j),
/// sorted ascending. Each group reports its smallest member distance.
struct PairDistance {
  double distance = 0.0;
  std::size_t count = 0;
};

inline std::vector<PairDistance> unique_pair_distances(const DistanceMatrix& m) {
  std::map<std::int64_t, PairDistance> groups;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const double d = m(i, j);
      const auto key = static_cast<std::int64_t>(std::llround(d / kDistanceQuantum));
      auto [it, inserted] = groups.try_emplace(key, PairDistance{d, 0});
      it->second.distance = std::min(it->second.distance, d);
      ++it->second.count;
    }
  }
  std::vector<PairDistance> out;
  out.reserve(groups.size());
  for (const auto& [key, g] : groups) out.push_back(g);
  return out;
}

inline std::vector<double> uniform_times(double dt, std::size_t steps) {
  std::vector<double> t(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) t[i] = dt * static_cast<double>(i);
  return t;
}

namespace detail {

inline void require_time_grid(std::span<const double> times) {
  if (times.empty() || times.front() != 0.0) {
    throw ValidationError("step-response time grid must start at 0");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ValidationError("step-response time grid must be strictly increasing");
    }
  }
}

/// Below e^{-690} (about 1e-300) the radial factor is treated as zero; past
/// that it turns subnormal and its rounding noise stalls the quadrature.
inline bool radial_underflows(double r, double tau, const SoilProperties& soil) {
  return r * r > 690.0 * 4.0 * soil.thermal_diffusivity * tau;
}

/// Accumulates int_0^{t_i} f over the grid one interval at a time.
template <class Integrand>
std::vector<double> accumulate_on_grid(Integrand&& f, std::span<const double> times,
                                       double rel_tol) {
  require_time_grid(times);
  std::vector<double> h(times.size(), 0.0);
  for (std::size_t i = 1; i < times.size(); ++i) {
    double piece = 0.0;
    try {
      // The table is cumulative, so a piece only needs accuracy relative to
      // the running total; pieces far below 1e-250 are noise either way.
      const double abs_tol = std::max(rel_tol * h[i - 1], 1e-250);
      piece = integrate_adaptive(f, times[i - 1], times[i], rel_tol, 24, abs_tol).value;
    } catch (const QuadratureError& e) {
      std::ostringstream msg;
      msg << "step response interval " << i << " [" << times[i - 1] << ", " << times[i]
          << "] s: " << e.what();
      throw QuadratureError(msg.str(), e.achieved());
    }
    h[i] = h[i - 1] + piece;
  }
  return h;
}

}  // namespace detail

/// Step response of the borehole-averaged (wall-weighted) temperature at
/// radial distance r: h(t) = 1/(4 pi lambda) int_0^t R(r, tau) Zhat(tau; L) dtau.
inline StepResponseTable step_response(double r, double length, std::span<const double> times,
                                       const SoilProperties& soil,
                                       const BoreholeCoefficients& coeffs,
                                       double rel_tol = kStepResponseTolerance) {
  if (!(r > 0.0)) {
    std::ostringstream msg;
    msg << "step response needs a positive distance (got " << r << ")";
    throw DomainError(msg.str());
  }
  detail::require_gamma_length(coeffs.gamma * length);
  const double scale = 1.0 / (4.0 * std::numbers::pi * soil.thermal_conductivity);
  auto integrand = [&](double tau) {
    if (tau <= 0.0 || detail::radial_underflows(r, tau, soil)) return 0.0;
    return scale * radial_kernel(r, tau, soil) *
           integrated_vertical_kernel(tau, length, coeffs, soil);
  };
  StepResponseTable table;
  table.distance = r;
  table.times.assign(times.begin(), times.end());
  table.values = detail::accumulate_on_grid(integrand, times, rel_tol);
  return table;
}

/// Step response of the soil temperature at a single point (radial distance
/// r, depth z): 1/(4 pi lambda) int_0^t R(r, tau) Z(z, tau; L) dtau.
inline StepResponseTable point_step_response(double r, double z, double length,
                                             std::span<const double> times,
                                             const SoilProperties& soil,
                                             double rel_tol = kStepResponseTolerance) {
  if (!(r > 0.0)) {
    std::ostringstream msg;
    msg << "point response needs a positive distance (got " << r << ")";
    throw DomainError(msg.str());
  }
  const double scale = 1.0 / (4.0 * std::numbers::pi * soil.thermal_conductivity);
  auto integrand = [&](double tau) {
    if (tau <= 0.0 || detail::radial_underflows(r, tau, soil)) return 0.0;
    return scale * radial_kernel(r, tau, soil) * vertical_kernel(z, tau, length, soil);
  };
  StepResponseTable table;
  table.distance = r;
  table.times.assign(times.begin(), times.end());
  table.values = detail::accumulate_on_grid(integrand, times, rel_tol);
  return table;
}

/// Differences of a piecewise-constant series: d[0] = v[0], d[l] = v[l] - v[l-1].
inline std::vector<double> load_increments(std::span<const double> values) {
  std::vector<double> d(values.size());
  double previous = 0.0;
  for (std::size_t l = 0; l < values.size(); ++l) {
    d[l] = values[l] - previous;
    previous = values[l];
  }
  return d;
}

/// Temporal superposition u(t_{m+1}) = sum_{l<=m} dq_l h(t_{m+1} - t_l).
/// The table must be on a uniform grid with exactly increments.size() + 1 samples.
inline std::vector<double> convolve_increments(std::span<const double> increments,
                                               const StepResponseTable& response) {
  if (response.values.size() != increments.size() + 1 ||
      response.times.size() != response.values.size()) {
    std::ostringstream msg;
    msg << "step response has " << response.values.size() << " samples, expected "
        << increments.size() + 1;
    throw ValidationError(msg.str());
  }
  if (response.times.size() > 1) {
    const double dt = response.times[1];
    for (std::size_t i = 1; i < response.times.size(); ++i) {
      const double expected = dt * static_cast<double>(i);
      if (std::abs(response.times[i] - expected) > 1e-9 * expected) {
        throw ValidationError("step response time grid is not uniform");
      }
    }
  }
  return fft_convolution(increments, std::span<const double>(response.values).subspan(1));
}

/// Averages consecutive blocks of `factor` values; the trailing block is
/// averaged over its actual length.
inline std::vector<double> coarse_average(std::span<const double> fine, std::size_t factor) {
  if (factor == 0) throw ValidationError("coarse factor must be at least 1");
  std::vector<double> coarse;
  coarse.reserve((fine.size() + factor - 1) / factor);
  for (std::size_t start = 0; start < fine.size(); start += factor) {
    const std::size_t end = std::min(fine.size(), start + factor);
    double sum = 0.0;
    for (std::size_t i = start; i < end; ++i) sum += fine[i];
    coarse.push_back(sum / static_cast<double>(end - start));
  }
  return coarse;
}

/// Linear interpolation of coarse-node values (node j at time j*factor*dt,
/// node 0 included) onto fine times (m+1)*dt, m in [0, fine_steps).
inline std::vector<double> interpolate_to_fine(std::span<const double> coarse_nodes,
                                               std::size_t factor, std::size_t fine_steps) {
  std::vector<double> fine(fine_steps);
  for (std::size_t m = 0; m < fine_steps; ++m) {
    const std::size_t n = m + 1;
    const std::size_t j = n / factor;
    const std::size_t rem = n % factor;
    if (rem == 0) {
      fine[m] = coarse_nodes[j];
    } else {
      const double w = static_cast<double>(rem) / static_cast<double>(factor);
      fine[m] = (1.0 - w) * coarse_nodes[j] + w * coarse_nodes[j + 1];
    }
  }
  return fine;
}

/// Shares step-response tables across simulations of the same field. Keyed
/// by (quantized distance, length, step, sample count).
class StepResponseCache {
public:
  using Key = std::tuple<std::int64_t, double, double, std::size_t>;

  template <class Compute>
  std::shared_ptr<const StepResponseTable> get(double distance, double length, double dt,
                                               std::size_t steps, Compute&& compute) {
    const Key key{std::llround(distance / kDistanceQuantum), length, dt, steps};
    {
      std::lock_guard lock(mutex_);
      if (auto it = tables_.find(key); it != tables_.end()) return it->second;
    }
    auto table = std::make_shared<const StepResponseTable>(compute());
    std::lock_guard lock(mutex_);
    return tables_.try_emplace(key, std::move(table)).first->second;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return tables_.size();
  }

private:
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<const StepResponseTable>> tables_;
};

struct DualGridResponse {
  std::vector<double> psi_self;   // K, fine grid
  std::vector<double> psi_inter;  // K, fine grid
  /// Extra interaction the inclusive pair bound (sum over khat <= k) would
  /// add: 2 (N_b - 1)/N_b * psi_self. Diagnostic only.
  std::vector<double> inclusive_bound_excess;
  std::size_t distinct_distances = 0;
};

/// Line load per unit length, q = -E / (L N_b), in W/m.
inline std::vector<double> line_loads(const LoadProfile& load, double length,
                                      std::size_t borehole_count) {
  std::vector<double> q(load.values.size());
  const double denom = length * static_cast<double>(borehole_count);
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = -load.values[i] / denom;
  return q;
}

/// Interaction response of one borehole pair at `distance`, on the coarse
/// nodes j*factor*dt (node 0 included), for fine line loads `q`.
inline std::vector<double> coarse_pair_response(double distance, std::span<const double> q,
                                                double dt, std::size_t factor, double length,
                                                const SoilProperties& soil,
                                                const BoreholeCoefficients& coeffs,
                                                StepResponseCache* cache = nullptr) {
  const std::vector<double> qc = coarse_average(q, factor);
  const double coarse_dt = dt * static_cast<double>(factor);
  auto compute = [&] {
    return step_response(distance, length, uniform_times(coarse_dt, qc.size()), soil, coeffs);
  };
  std::shared_ptr<const StepResponseTable> table =
      cache ? cache->get(distance, length, coarse_dt, qc.size(), compute)
            : std::make_shared<const StepResponseTable>(compute());
  const std::vector<double> inc = load_increments(qc);
  std::vector<double> u = convolve_increments(inc, *table);
  u.insert(u.begin(), 0.0);
  return u;
}

/// Self response on the fine grid plus the field-averaged interaction
/// (2/N_b) sum_{k>khat} uhat_{k->khat} on the coarse grid, interpolated back.
inline DualGridResponse dual_grid_response(const FieldLayout& layout, const LoadProfile& load,
                                           double length, const SoilProperties& soil,
                                           const BoreholeSpec& borehole,
                                           const BoreholeCoefficients& coeffs,
                                           std::size_t coarse_factor,
                                           StepResponseCache* cache = nullptr) {
  if (coarse_factor == 0) throw ValidationError("coarse factor must be at least 1");
  {
    std::vector<std::string> errors;
    collect_errors(load, "load", errors);
    if (!errors.empty()) throw ValidationError(detail::join_errors(errors));
  }
  const DistanceMatrix dist = distance_matrix(layout, borehole.radius);
  const std::size_t nb = layout.size();
  const std::size_t nt = load.steps();
  const double dt = load.step_duration;
  const std::vector<double> q = line_loads(load, length, nb);

  DualGridResponse out;
  {
    auto compute = [&] {
      return step_response(borehole.radius, length, uniform_times(dt, nt), soil, coeffs);
    };
    auto table = cache ? cache->get(borehole.radius, length, dt, nt, compute)
                       : std::make_shared<const StepResponseTable>(compute());
    out.psi_self = convolve_increments(load_increments(q), *table);
  }

  out.inclusive_bound_excess.resize(nt);
  const double excess_factor = 2.0 * static_cast<double>(nb - 1) / static_cast<double>(nb);
  for (std::size_t m = 0; m < nt; ++m) out.inclusive_bound_excess[m] = excess_factor * out.psi_self[m];

  const std::vector<PairDistance> pairs = unique_pair_distances(dist);
  out.distinct_distances = pairs.size();
  if (pairs.empty()) {
    out.psi_inter.assign(nt, 0.0);
    return out;
  }

  std::vector<std::vector<double>> per_pair(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    per_pair[i] = coarse_pair_response(pairs[i].distance, q, dt, coarse_factor, length, soil,
                                       coeffs, cache);
  });
  std::vector<double> nodes(per_pair.front().size(), 0.0);
  const double weight = 2.0 / static_cast<double>(nb);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double w = weight * static_cast<double>(pairs[i].count);
    for (std::size_t j = 0; j < nodes.size(); ++j) nodes[j] += w * per_pair[i][j];
  }
  out.psi_inter = interpolate_to_fine(nodes, coarse_factor, nt);
  return out;
}

struct SoilFieldOptions {
  std::size_t coarse_factor = 1;
  /// Evaluate points closer than r_b to an axis at the borehole wall instead
  /// of rejecting them.
  bool clamp_to_wall = false;
  double rel_tol = 1e-9;
};

/// Soil temperature deviation at depth z and time t (a multiple of the load
/// step) for every grid point, superposing all boreholes.
inline std::vector<double> soil_field(const FieldLayout& layout, const LoadProfile& load,
                                      double length, const SoilProperties& soil,
                                      const BoreholeSpec& borehole, std::span<const Point> grid,
                                      double z, double t, const SoilFieldOptions& options = {}) {
  validate_layout(layout, borehole.radius);
  if (options.coarse_factor == 0) throw ValidationError("coarse factor must be at least 1");
  if (!(length > 0.0)) throw DomainError("borehole length must be positive");
  const double steps_real = t / load.step_duration;
  const auto steps = static_cast<std::size_t>(std::llround(steps_real));
  if (!(t >= 0.0) || std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * (1.0 + steps_real)) {
    std::ostringstream msg;
    msg << "field time " << t << " s is not a multiple of the load step " << load.step_duration;
    throw ValidationError(msg.str());
  }
  if (steps > load.steps()) {
    std::ostringstream msg;
    msg << "field time " << t << " s lies beyond the load horizon " << load.horizon() << " s";
    throw ValidationError(msg.str());
  }

  std::vector<double> field(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (const Point& p : layout.positions) {
      if (distance(grid[i], p) < borehole.radius && !options.clamp_to_wall) {
        std::ostringstream msg;
        msg << "grid point " << i << " (" << grid[i].x << ", " << grid[i].y
            << ") lies inside a borehole radius";
        throw ValidationError(msg.str());
      }
    }
  }
  if (steps == 0) return field;

  const std::vector<double> q = line_loads(load, length, layout.size());
  const std::span<const double> history(q.data(), steps);
  const std::vector<double> qc = coarse_average(history, options.coarse_factor);
  const std::vector<double> inc = load_increments(qc);

  // Lags t - t_j in ascending order, j = last interval first.
  std::vector<double> lag_grid(qc.size() + 1, 0.0);
  for (std::size_t k = 0; k < qc.size(); ++k) {
    const std::size_t j = qc.size() - 1 - k;
    lag_grid[k + 1] = t - load.step_duration * static_cast<double>(j * options.coarse_factor);
  }

  parallel_for(grid.size(), [&](std::size_t i) {
    double u = 0.0;
    for (const Point& p : layout.positions) {
      const double r = std::max(distance(grid[i], p), borehole.radius);
      const StepResponseTable h = point_step_response(r, z, length, lag_grid, soil, options.rel_tol);
      for (std::size_t j = 0; j < qc.size(); ++j) u += inc[j] * h.values[qc.size() - j];
    }
    field[i] = u;
  });
  return field;
}

}  // namespace borefield
