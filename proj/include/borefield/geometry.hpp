#pragma once

// Planar polygons with holes under the even-odd rule. Boundary points count
// as inside (the feasible region is closed).

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "borefield/errors.hpp"

namespace borefield {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double squared_distance(Point a, Point b) { return dot(a - b, a - b); }
inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

using Ring = std::vector<Point>;

struct BoundingBox {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void extend(Point p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
};

struct DomainPolygon {
  Ring outer;
  std::vector<Ring> holes;

  bool operator==(const DomainPolygon&) const = default;
};

/// Shoelace area, positive for counter-clockwise rings.
inline double signed_area(const Ring& ring) {
  double twice = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    twice += cross(ring[i], ring[(i + 1) % n]);
  }
  return 0.5 * twice;
}

inline double area(const DomainPolygon& d) {
  double a = std::abs(signed_area(d.outer));
  for (const auto& h : d.holes) a -= std::abs(signed_area(h));
  return a;
}

inline BoundingBox bounding_box(const DomainPolygon& d) {
  BoundingBox box;
  for (const auto& p : d.outer) box.extend(p);
  return box;
}

/// Closest point to `p` on segment [a, b].
inline Point closest_on_segment(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  return a + t * ab;
}

namespace detail {

/// Length scale used for on-boundary tolerance.
inline double boundary_tolerance(const DomainPolygon& d) {
  const BoundingBox box = bounding_box(d);
  const double extent = std::max({box.width(), box.height(), std::abs(box.lo.x),
                                  std::abs(box.lo.y), std::abs(box.hi.x), std::abs(box.hi.y), 1.0});
  return 1e-11 * extent;
}

inline bool ring_crossing_parity(const Ring& ring, Point p) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Point a = ring[i];
    const Point b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

template <class Fn>
void for_each_edge(const DomainPolygon& d, Fn&& fn) {
  auto ring_edges = [&](const Ring& r) {
    for (std::size_t i = 0, n = r.size(); i < n; ++i) fn(r[i], r[(i + 1) % n]);
  };
  ring_edges(d.outer);
  for (const auto& h : d.holes) ring_edges(h);
}

inline int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

inline bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

inline bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

inline bool ring_is_simple(const Ring& r) {
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(r[i], r[(i + 1) % n], r[j], r[(j + 1) % n])) return false;
    }
  }
  return true;
}

inline bool rings_intersect(const Ring& a, const Ring& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace detail

/// Distance from `p` to the nearest edge of any ring of `d`.
inline double boundary_distance(const DomainPolygon& d, Point p) {
  double best = std::numeric_limits<double>::infinity();
  detail::for_each_edge(d, [&](Point a, Point b) {
    best = std::min(best, squared_distance(p, closest_on_segment(p, a, b)));
  });
  return std::sqrt(best);
}

/// Even-odd membership over the outer ring and all holes; boundary is inside.
inline bool contains(const DomainPolygon& d, Point p) {
  if (boundary_distance(d, p) <= detail::boundary_tolerance(d)) return true;
  bool inside = detail::ring_crossing_parity(d.outer, p);
  for (const auto& h : d.holes) inside ^= detail::ring_crossing_parity(h, p);
  return inside;
}

/// `p` itself when inside the closed domain, otherwise a nearest boundary point.
/// Ties between equally near edges go to the first edge in ring order.
inline Point nearest_point_in_domain(Point p, const DomainPolygon& d) {
  if (contains(d, p)) return p;
  Point best_point = p;
  double best = std::numeric_limits<double>::infinity();
  detail::for_each_edge(d, [&](Point a, Point b) {
    const Point c = closest_on_segment(p, a, b);
    const double d2 = squared_distance(p, c);
    if (d2 < best) {
      best = d2;
      best_point = c;
    }
  });
  return best_point;
}

inline void collect_errors(const DomainPolygon& d, const std::string& path,
                           std::vector<std::string>& errors) {
  auto check_ring = [&](const Ring& r, const std::string& where) {
    if (r.size() < 3) {
      errors.push_back(where + " needs at least 3 vertices");
      return false;
    }
    for (const auto& p : r) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        errors.push_back(where + " has non-finite coordinates");
        return false;
      }
    }
    if (!detail::ring_is_simple(r)) {
      errors.push_back(where + " is self-intersecting");
      return false;
    }
    if (signed_area(r) == 0.0) {
      errors.push_back(where + " has zero area");
      return false;
    }
    return true;
  };

  const bool outer_ok = check_ring(d.outer, path + ".outer");
  std::vector<bool> hole_ok(d.holes.size());
  for (std::size_t i = 0; i < d.holes.size(); ++i) {
    hole_ok[i] = check_ring(d.holes[i], path + ".holes[" + std::to_string(i) + "]");
  }
  if (!outer_ok) return;

  for (std::size_t i = 0; i < d.holes.size(); ++i) {
    if (!hole_ok[i]) continue;
    const std::string where = path + ".holes[" + std::to_string(i) + "]";
    if (detail::rings_intersect(d.outer, d.holes[i]) ||
        !detail::ring_crossing_parity(d.outer, d.holes[i].front())) {
      errors.push_back(where + " is not strictly inside the outer ring");
    }
    for (std::size_t j = i + 1; j < d.holes.size(); ++j) {
      if (!hole_ok[j]) continue;
      if (detail::rings_intersect(d.holes[i], d.holes[j]) ||
          detail::ring_crossing_parity(d.holes[i], d.holes[j].front()) ||
          detail::ring_crossing_parity(d.holes[j], d.holes[i].front())) {
        errors.push_back(where + " overlaps holes[" + std::to_string(j) + "]");
      }
    }
  }
  if (errors.empty() && !(area(d) > 0.0)) errors.push_back(path + " has non-positive area");
}

inline void validate(const DomainPolygon& d, const std::string& path = "domain") {
  std::vector<std::string> errors;
  collect_errors(d, path, errors);
  if (!errors.empty()) {
    std::string all;
    for (const auto& e : errors) all += (all.empty() ? "" : "; ") + e;
    throw ValidationError(all);
  }
}

}  // namespace borefield
