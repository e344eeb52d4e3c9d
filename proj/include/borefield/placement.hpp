#pragma once

// Borehole placement by a discrete Lloyd iteration towards a centroidal
// Voronoi tessellation of a (possibly non-convex, holed) property polygon.
// Centroids that fall outside the polygon are projected back onto it.

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <sstream>
#include <vector>

#include "borefield/errors.hpp"
#include "borefield/geometry.hpp"

namespace borefield {

struct SamplePointSet {
  std::vector<Point> points;
  std::uint64_t seed = 0;
};

struct CvtOptions {
  std::size_t samples = 0;  // 0: max(100 N_b, 10000)
  std::size_t max_iterations = 500;
  double tolerance = 1e-6;  // m^2, on the summed squared generator movement
  std::uint64_t seed = 1;
  std::size_t restarts = 1;  // best of this many consecutive seeds
  double min_spacing = 5.0;  // m, spacing below this only raises a warning

  bool operator==(const CvtOptions&) const = default;
};

inline std::size_t default_sample_count(std::size_t generators) {
  return std::max<std::size_t>(100 * generators, 10000);
}

struct PlacementResult {
  std::vector<Point> generators;
  std::size_t iterations = 0;
  double final_movement = 0.0;      // m^2
  double objective = 0.0;           // m^2 per sample
  double raw_objective = 0.0;       // m^2 summed over samples
  std::vector<double> objective_history;  // per-sample objective before each update
  double min_pairwise_distance = 0.0;
  double min_boundary_distance = 0.0;
  bool spacing_warning = false;
  std::uint64_t seed = 0;
};

namespace detail {

/// Uniform double in [0, 1) from the top 53 bits; independent of the
/// standard library's distribution implementations.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// M points i.i.d. uniform over the domain by rejection from its bounding box.
inline SamplePointSet sample_domain(const DomainPolygon& domain, std::size_t count,
                                    std::uint64_t seed) {
  if (count == 0) throw ValidationError("sample count must be at least 1");
  validate(domain, "domain");
  const BoundingBox box = bounding_box(domain);
  std::mt19937_64 rng(seed);
  SamplePointSet set;
  set.seed = seed;
  set.points.reserve(count);
  std::size_t trials = 0;
  while (set.points.size() < count) {
    const Point p{box.lo.x + box.width() * detail::unit_uniform(rng),
                  box.lo.y + box.height() * detail::unit_uniform(rng)};
    ++trials;
    if (contains(domain, p)) set.points.push_back(p);
    if (trials >= 1000000 &&
        static_cast<double>(set.points.size()) < 1e-4 * static_cast<double>(trials)) {
      std::ostringstream msg;
      msg << "degenerate domain: " << set.points.size() << " of " << trials
          << " bounding-box samples accepted";
      throw ValidationError(msg.str());
    }
  }
  return set;
}

/// Index of the nearest generator for every sample; ties go to the lowest index.
inline std::vector<std::size_t> assign_nearest(std::span<const Point> generators,
                                               std::span<const Point> samples) {
  std::vector<std::size_t> cell(samples.size(), 0);
  for (std::size_t j = 0; j < samples.size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const double d2 = squared_distance(generators[i], samples[j]);
      if (d2 < best) {
        best = d2;
        cell[j] = i;
      }
    }
  }
  return cell;
}

struct ObjectiveValue {
  double per_sample = 0.0;
  double raw = 0.0;
};

/// Discrete CVT energy sum_i sum_{p in S_i} |z_i - p|^2 under nearest assignment.
inline ObjectiveValue discrete_objective(std::span<const Point> generators,
                                         std::span<const Point> samples) {
  if (generators.empty()) throw ValidationError("objective needs at least one generator");
  const std::vector<std::size_t> cell = assign_nearest(generators, samples);
  ObjectiveValue v;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    v.raw += squared_distance(generators[cell[j]], samples[j]);
  }
  v.per_sample = samples.empty() ? 0.0 : v.raw / static_cast<double>(samples.size());
  return v;
}

namespace detail {

inline void fill_spacing_report(const DomainPolygon& domain, PlacementResult& r,
                                double min_spacing) {
  r.min_pairwise_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.generators.size(); ++i) {
    for (std::size_t j = i + 1; j < r.generators.size(); ++j) {
      r.min_pairwise_distance =
          std::min(r.min_pairwise_distance, distance(r.generators[i], r.generators[j]));
    }
  }
  r.min_boundary_distance = std::numeric_limits<double>::infinity();
  for (const Point& z : r.generators) {
    r.min_boundary_distance = std::min(r.min_boundary_distance, boundary_distance(domain, z));
  }
  r.spacing_warning = r.generators.size() > 1 && r.min_pairwise_distance < min_spacing;
}

inline PlacementResult lloyd_single(const DomainPolygon& domain, std::size_t n,
                                    std::size_t samples, std::size_t max_iterations,
                                    double tolerance, std::uint64_t seed, double min_spacing) {
  const SamplePointSet set = sample_domain(domain, samples, seed);
  const std::vector<Point>& p = set.points;

  // Initial generators: n distinct samples by partial Fisher-Yates on a
  // stream derived from the seed.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> index(p.size());
  for (std::size_t j = 0; j < index.size(); ++j) index[j] = j;
  std::vector<Point> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto span = index.size() - i;
    const auto pick = i + static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(span));
    std::swap(index[i], index[std::min(pick, index.size() - 1)]);
    z[i] = p[index[i]];
  }

  PlacementResult r;
  r.seed = seed;
  std::vector<double> sx(n), sy(n);
  std::vector<std::size_t> count(n);
  for (std::size_t t = 0; t < max_iterations; ++t) {
    const std::vector<std::size_t> cell = assign_nearest(z, p);
    std::fill(sx.begin(), sx.end(), 0.0);
    std::fill(sy.begin(), sy.end(), 0.0);
    std::fill(count.begin(), count.end(), 0);
    double energy = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const std::size_t c = cell[j];
      sx[c] += p[j].x;
      sy[c] += p[j].y;
      ++count[c];
      energy += squared_distance(z[c], p[j]);
    }
    r.objective_history.push_back(energy / static_cast<double>(p.size()));

    double movement = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (count[i] == 0) continue;  // empty cell: generator stays
      const double inv = 1.0 / static_cast<double>(count[i]);
      const Point centroid{sx[i] * inv, sy[i] * inv};
      const Point next = nearest_point_in_domain(centroid, domain);
      movement += squared_distance(next, z[i]);
      z[i] = next;
    }
    r.iterations = t + 1;
    r.final_movement = movement;
    if (movement < tolerance) break;
  }

  r.generators = std::move(z);
  const ObjectiveValue obj = discrete_objective(r.generators, p);
  r.objective = obj.per_sample;
  r.raw_objective = obj.raw;
  fill_spacing_report(domain, r, min_spacing);
  return r;
}

}  // namespace detail

/// Modified Lloyd iteration on M uniform samples of the domain: nearest
/// assignment, centroid update, projection of outside centroids, empty
/// cells hold, stop when the summed squared movement drops below `tolerance`
/// or after `max_iterations`.
inline PlacementResult lloyd_cvt(const DomainPolygon& domain, std::size_t generators,
                                 const CvtOptions& options = {}) {
  if (generators == 0) throw ValidationError("number of boreholes must be at least 1");
  if (options.max_iterations == 0) throw ValidationError("max iterations must be at least 1");
  if (!(options.tolerance > 0.0)) throw ValidationError("convergence tolerance must be positive");
  if (options.restarts == 0) throw ValidationError("restarts must be at least 1");
  const std::size_t samples =
      options.samples == 0 ? default_sample_count(generators) : options.samples;
  if (generators > samples) {
    std::ostringstream msg;
    msg << "cannot place " << generators << " generators with only " << samples << " samples";
    throw ValidationError(msg.str());
  }
  PlacementResult best;
  for (std::size_t s = 0; s < options.restarts; ++s) {
    PlacementResult r =
        detail::lloyd_single(domain, generators, samples, options.max_iterations,
                             options.tolerance, options.seed + s, options.min_spacing);
    if (s == 0 || r.raw_objective < best.raw_objective) best = std::move(r);
  }
  return best;
}

inline PlacementResult lloyd_cvt(const DomainPolygon& domain, std::size_t generators,
                                 std::size_t samples, std::size_t max_iterations,
                                 double tolerance, std::uint64_t seed) {
  CvtOptions o;
  o.samples = samples;
  o.max_iterations = max_iterations;
  o.tolerance = tolerance;
  o.seed = seed;
  return lloyd_cvt(domain, generators, o);
}

}  // namespace borefield
