#pragma once

// Smallest uniform borehole length whose averaged outlet temperature stays
// inside [T_min, T_max] at every simulated step.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "borefield/errors.hpp"
#include "borefield/scenario.hpp"
#include "borefield/simulation.hpp"

namespace borefield {

struct TemperatureEnvelope {
  double max_outlet = 0.0;  // degC
  double min_outlet = 0.0;  // degC
  std::size_t argmax = 0;
  std::size_t argmin = 0;
};

inline TemperatureEnvelope temperature_envelope(const Scenario& scenario, double length,
                                                StepResponseCache* cache = nullptr) {
  const SimulationResult r = simulate_outlet(scenario, length, cache);
  return {r.max_outlet, r.min_outlet, r.argmax_outlet, r.argmin_outlet};
}

enum class BindingSide { upper, lower, none };
enum class SolverPath { automatic, bisection, descent };

inline const char* to_string(BindingSide s) {
  switch (s) {
    case BindingSide::upper: return "upper";
    case BindingSide::lower: return "lower";
    case BindingSide::none: return "none";
  }
  return "none";
}

inline const char* to_string(SolverPath p) {
  switch (p) {
    case SolverPath::automatic: return "automatic";
    case SolverPath::bisection: return "bisection";
    case SolverPath::descent: return "descent";
  }
  return "automatic";
}

struct OptimizationResult {
  double length = 0.0;
  BindingSide binding = BindingSide::none;
  double max_outlet = 0.0;
  double min_outlet = 0.0;
  std::size_t binding_time_index = 0;
  std::size_t evaluations = 0;
  SolverPath path = SolverPath::automatic;
  bool monotone_probe = true;
  /// min(T_max - max, min - T_min) at L*; >= -tolerance when feasible.
  double margin = 0.0;
  /// Length one tolerance below L* (clamped to L_min) and its margin;
  /// below -tolerance when the certificate holds.
  double length_below = 0.0;
  double margin_below = 0.0;
};

namespace detail {

inline double margin_of(const TemperatureEnvelope& e, const LengthProblem& p) {
  return std::min(p.max_outlet - e.max_outlet, e.min_outlet - p.min_outlet);
}

class EnvelopeMemo {
public:
  EnvelopeMemo(std::function<TemperatureEnvelope(double)> eval, const LengthProblem& p)
      : eval_(std::move(eval)), problem_(p) {}

  const TemperatureEnvelope& at(double length) {
    auto it = cache_.find(length);
    if (it == cache_.end()) it = cache_.emplace(length, eval_(length)).first;
    return it->second;
  }
  double margin(double length) { return margin_of(at(length), problem_); }
  bool feasible(double length) { return margin(length) >= -problem_.temperature_tolerance; }
  std::size_t evaluations() const { return cache_.size(); }

private:
  std::function<TemperatureEnvelope(double)> eval_;
  LengthProblem problem_;
  std::map<double, TemperatureEnvelope> cache_;
};

/// Shrinks [infeasible, feasible] by halving until narrower than `width`.
inline std::pair<double, double> bisect(EnvelopeMemo& memo, double lo, double hi, double width) {
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    (memo.feasible(mid) ? hi : lo) = mid;
  }
  return {lo, hi};
}

/// Illinois-modified regula falsi on the smooth constraint violation
/// g(L) = -margin(L) - tol, keeping g(lo) > 0 >= g(hi). Iterates stay a
/// quarter width inside the bracket; once an iterate lands that close to the
/// root, the next one straddles it so both ends close in.
inline std::pair<double, double> secant_descent(EnvelopeMemo& memo, double lo, double hi,
                                                double width, double tol) {
  double glo = -memo.margin(lo) - tol;
  double ghi = -memo.margin(hi) - tol;
  int side = 0;
  double straddle = std::numeric_limits<double>::quiet_NaN();
  for (int iter = 0; hi - lo > width && iter < 200; ++iter) {
    double x = std::isnan(straddle) ? hi - ghi * (hi - lo) / (ghi - glo) : straddle;
    straddle = std::numeric_limits<double>::quiet_NaN();
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    x = std::clamp(x, lo + 0.25 * width, hi - 0.25 * width);
    const double gx = -memo.margin(x) - tol;
    const double previous_lo = lo;
    const double previous_hi = hi;
    if (gx > 0.0) {
      lo = x;
      glo = gx;
      if (side == -1) ghi *= 0.5;
      side = -1;
    } else {
      hi = x;
      ghi = gx;
      if (side == 1) glo *= 0.5;
      side = 1;
    }
    // Secant estimate within half a width of x: probe across it.
    const double estimate = hi - ghi * (hi - lo) / (ghi - glo);
    if (std::abs(estimate - x) < 0.5 * width) {
      straddle = gx > 0.0 ? std::min(x + 0.5 * width, 0.5 * (x + previous_hi))
                          : std::max(x - 0.5 * width, 0.5 * (x + previous_lo));
    }
  }
  if (hi - lo > width) return bisect(memo, lo, hi, width);
  return {lo, hi};
}

}  // namespace detail

/// Minimizes L over [L_min, L_max] subject to the outlet limits.
///
/// Probes feasibility at 8 evenly spaced lengths. A monotone pattern
/// (infeasible then feasible) is refined by bisection; otherwise, or when
/// `path` asks for it, a regula-falsi descent on the constraint violation
/// is run from the first feasible probe. The bracket is shrunk to
/// length_tolerance / 64 and the result carries the certificate at
/// L* - length_tolerance.
inline OptimizationResult minimize_length(std::function<TemperatureEnvelope(double)> envelope,
                                          const LengthProblem& problem,
                                          SolverPath path = SolverPath::automatic) {
  {
    std::vector<std::string> errors;
    collect_errors(problem, "limits", errors);
    if (!errors.empty()) throw ValidationError(detail::join_errors(errors));
  }
  detail::EnvelopeMemo memo(std::move(envelope), problem);
  const double tol_t = problem.temperature_tolerance;
  const double tol_l = problem.length_tolerance;
  const double width = tol_l / 64.0;

  auto finish = [&](double length, SolverPath used, bool monotone) {
    OptimizationResult r;
    r.length = length;
    r.path = used;
    r.monotone_probe = monotone;
    const TemperatureEnvelope env = memo.at(length);
    r.max_outlet = env.max_outlet;
    r.min_outlet = env.min_outlet;
    r.margin = detail::margin_of(env, problem);
    if (length <= problem.min_length) {
      r.binding = BindingSide::none;
      r.length_below = problem.min_length;
      r.margin_below = r.margin;
    } else {
      r.length_below = std::max(problem.min_length, length - tol_l);
      const TemperatureEnvelope below = memo.at(r.length_below);
      r.margin_below = detail::margin_of(below, problem);
      const double upper_violation = below.max_outlet - problem.max_outlet;
      const double lower_violation = problem.min_outlet - below.min_outlet;
      r.binding = upper_violation >= lower_violation ? BindingSide::upper : BindingSide::lower;
    }
    r.binding_time_index = r.binding == BindingSide::lower ? env.argmin : env.argmax;
    r.evaluations = memo.evaluations();
    return r;
  };

  if (memo.feasible(problem.min_length)) {
    return finish(problem.min_length, SolverPath::automatic, true);
  }
  if (!memo.feasible(problem.max_length)) {
    const double violation = -memo.margin(problem.max_length);
    std::ostringstream msg;
    msg << "outlet limits violated by " << violation << " K even at L_max = "
        << problem.max_length << " m";
    throw InfeasibleAtMaxLength(msg.str(), violation);
  }

  constexpr std::size_t kProbes = 8;
  std::array<double, kProbes> probe{};
  std::array<bool, kProbes> ok{};
  for (std::size_t i = 0; i < kProbes; ++i) {
    probe[i] = i + 1 == kProbes
                   ? problem.max_length
                   : problem.min_length + (problem.max_length - problem.min_length) *
                                              static_cast<double>(i) / (kProbes - 1);
    ok[i] = memo.feasible(probe[i]);
  }
  const auto first_ok = static_cast<std::size_t>(std::find(ok.begin(), ok.end(), true) - ok.begin());
  const bool monotone = std::all_of(ok.begin() + static_cast<std::ptrdiff_t>(first_ok), ok.end(),
                                    [](bool b) { return b; });
  double lo = probe[first_ok - 1];
  double hi = probe[first_ok];

  const SolverPath used =
      path == SolverPath::automatic ? (monotone ? SolverPath::bisection : SolverPath::descent) : path;
  for (int round = 0; round < 64; ++round) {
    std::tie(lo, hi) = used == SolverPath::bisection
                           ? detail::bisect(memo, lo, hi, width)
                           : detail::secant_descent(memo, lo, hi, width, tol_t);
    const double below = std::max(problem.min_length, hi - tol_l);
    if (hi - tol_l <= problem.min_length || !memo.feasible(below)) break;
    // A feasible island below the bracket: continue the search underneath.
    hi = below;
    lo = problem.min_length;
  }
  return finish(hi, used, monotone);
}

inline OptimizationResult minimize_length(const Scenario& scenario, const LengthProblem& problem,
                                          SolverPath path = SolverPath::automatic,
                                          StepResponseCache* cache = nullptr) {
  StepResponseCache local;
  StepResponseCache* c = cache ? cache : &local;
  return minimize_length(
      [&](double length) { return temperature_envelope(scenario, length, c); }, problem, path);
}

}  // namespace borefield
