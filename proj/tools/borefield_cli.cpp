// borefield: place boreholes, simulate fluid temperatures, size the field.
//
// Exit codes: 0 success, 1 error, 2 limits infeasible at the longest length.
// Errors go to stderr as `ERROR <code>: <message>`.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "borefield/borefield.hpp"

namespace fs = std::filesystem;
using namespace borefield;

namespace {

class FlagError : public Error {
public:
  explicit FlagError(const std::string& what) : Error("flag", what) {}
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string outlet_csv(const SimulationResult& r) {
  std::string out = "t_hour,t_in_c,t_out_c\n";
  out.reserve(out.size() + r.outlet.size() * 64);
  for (std::size_t m = 0; m < r.outlet.size(); ++m) {
    const double hours = r.time_step * static_cast<double>(m + 1) / kSecondsPerHour;
    out += format_double(hours) + "," + format_double(r.inlet[m]) + "," +
           format_double(r.outlet[m]) + "\n";
  }
  return out;
}

json summary_json(const Scenario& s, const SimulationResult& r) {
  const BoreholeCoefficients c = borehole_coefficients(s.fluid, s.borehole, r.length);
  json j;
  j["length_m"] = r.length;
  j["borehole_count"] = s.layout.size();
  j["steps"] = r.outlet.size();
  j["time_step_s"] = r.time_step;
  j["coarse_factor"] = s.coarse_factor;
  j["max_outlet_c"] = r.max_outlet;
  j["min_outlet_c"] = r.min_outlet;
  j["max_outlet_step"] = r.argmax_outlet;
  j["min_outlet_step"] = r.argmin_outlet;
  j["max_outlet_time_hour"] = r.time_step * static_cast<double>(r.argmax_outlet + 1) / kSecondsPerHour;
  j["min_outlet_time_hour"] = r.time_step * static_cast<double>(r.argmin_outlet + 1) / kSecondsPerHour;
  j["upper_margin_k"] = s.limits.max_outlet - r.max_outlet;
  j["lower_margin_k"] = r.min_outlet - s.limits.min_outlet;
  j["energy_balance_residual_max_k"] = r.energy_balance_residual;
  j["inclusive_pair_bound_excess_max_k"] = r.inclusive_bound_max_excess;
  j["distinct_pair_distances"] = r.distinct_distances;
  j["coefficients"] = {{"beta_soil_per_m", c.beta_soil},
                       {"beta_inter_per_m", c.beta_inter},
                       {"gamma_per_m", c.gamma},
                       {"psi1", c.psi1},
                       {"psi2", c.psi2}};
  j["metadata"] = {
      {"temperatures", "absolute degC"},
      {"internal_computation", "K deviation from the undisturbed ground temperature"},
      {"load_sign", "positive power extracts heat from the ground"},
      {"sample_time", "end of each load step"}};
  return j;
}

void write_timing(const fs::path& dir, double seconds) {
  json t;
  t["runtime_s"] = seconds;
  atomic_write(dir / "timing.json", to_json_text(t));
}

json placement_layout_json(const Scenario& s) {
  return s.placement_result ? layout_json(*s.placement_result) : layout_json(s.layout);
}

void check_length_flag(const Scenario& s, double length) {
  if (!(length >= s.limits.min_length && length <= s.limits.max_length)) {
    throw FlagError("--length " + format_double(length) + " m outside [" +
                    format_double(s.limits.min_length) + ", " +
                    format_double(s.limits.max_length) + "] m");
  }
}

fs::path layout_output_path(const fs::path& out) {
  if (fs::is_directory(out) || (!out.empty() && out.string().back() == '/')) {
    return out / "layout.json";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Borehole heat exchanger field design"};
  app.require_subcommand(1);

  // place
  auto* place = app.add_subcommand("place", "Place boreholes in a property polygon");
  std::string domain_path, place_out;
  std::size_t place_n = 0;
  CvtOptions cvt;
  place->add_option("--domain", domain_path, "Domain JSON (outer, holes)")->required();
  place->add_option("--n", place_n, "Number of boreholes")->required();
  place->add_option("--samples", cvt.samples, "Sample points (default max(100 N, 10000))");
  place->add_option("--max-iter", cvt.max_iterations, "Maximum Lloyd iterations");
  place->add_option("--tol", cvt.tolerance, "Convergence tolerance on summed squared movement, m^2");
  place->add_option("--seed", cvt.seed, "Random seed");
  place->add_option("--restarts", cvt.restarts, "Best of this many consecutive seeds");
  place->add_option("--min-spacing", cvt.min_spacing, "Spacing warning threshold, m");
  place->add_option("-o,--output", place_out, "Output file or directory")->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Simulate fluid temperatures for a length");
  std::string scenario_path, out_dir;
  double length = 0.0;
  std::size_t coarse_factor = 0;
  simulate->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  simulate->add_option("--length", length, "Borehole length, m")->required();
  simulate->add_option("--coarse-factor", coarse_factor, "Fine steps per coarse step");
  simulate->add_option("-o,--output", out_dir, "Output directory")->required();

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Find the minimum feasible borehole length");
  std::string solver = "auto";
  optimize->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  optimize->add_option("--coarse-factor", coarse_factor, "Fine steps per coarse step");
  optimize->add_option("--solver", solver, "auto, bisection or descent")
      ->check(CLI::IsMember({"auto", "bisection", "descent"}));
  optimize->add_option("-o,--output", out_dir, "Output directory")->required();

  // field
  auto* field = app.add_subcommand("field", "Soil temperature deviation on a horizontal grid");
  double time_hours = 0.0, depth = -1.0, grid_res = 1.0;
  std::string field_out;
  field->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  field->add_option("--length", length, "Borehole length, m")->required();
  field->add_option("--time-hours", time_hours, "Evaluation time, h")->required();
  field->add_option("--depth", depth, "Evaluation depth, m (default L/2)");
  field->add_option("--grid-res", grid_res, "Grid spacing, m");
  field->add_option("--coarse-factor", coarse_factor, "Fine steps per coarse load step");
  field->add_option("-o,--output", field_out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ERROR flag: " << e.what() << "\n";
    return 1;
  }

  try {
    const Timer timer;
    if (*place) {
      const DomainPolygon domain = read_domain(domain_path);
      const PlacementResult r = lloyd_cvt(domain, place_n, cvt);
      if (r.spacing_warning) {
        std::cerr << "WARNING spacing: minimum borehole spacing " << r.min_pairwise_distance
                  << " m is below " << cvt.min_spacing << " m\n";
      }
      atomic_write(layout_output_path(place_out), to_json_text(layout_json(r)));
      return 0;
    }

    Scenario s = load_scenario(scenario_path);
    if (coarse_factor > 0) s.coarse_factor = coarse_factor;

    if (*simulate) {
      check_length_flag(s, length);
      const SimulationResult r = simulate_outlet(s, length);
      atomic_write(fs::path(out_dir) / "outlet.csv", outlet_csv(r));
      atomic_write(fs::path(out_dir) / "summary.json", to_json_text(summary_json(s, r)));
      write_timing(out_dir, timer.seconds());
      return 0;
    }

    if (*optimize) {
      const SolverPath path = solver == "bisection" ? SolverPath::bisection
                              : solver == "descent" ? SolverPath::descent
                                                    : SolverPath::automatic;
      StepResponseCache cache;
      const OptimizationResult opt = minimize_length(s, s.limits, path, &cache);
      const SimulationResult r = simulate_outlet(s, opt.length, &cache);

      json j;
      j["length_m"] = opt.length;
      j["binding_side"] = to_string(opt.binding);
      j["binding_time_step"] = opt.binding_time_index;
      j["binding_time_hour"] =
          r.time_step * static_cast<double>(opt.binding_time_index + 1) / kSecondsPerHour;
      j["max_outlet_c"] = opt.max_outlet;
      j["min_outlet_c"] = opt.min_outlet;
      j["evaluations"] = opt.evaluations;
      j["solver_path"] = to_string(opt.path);
      j["monotone_probe"] = opt.monotone_probe;
      j["certificate"] = {{"margin_at_optimum_k", opt.margin},
                          {"length_below_m", opt.length_below},
                          {"margin_below_k", opt.margin_below},
                          {"temperature_tolerance_k", s.limits.temperature_tolerance},
                          {"length_tolerance_m", s.limits.length_tolerance}};
      atomic_write(fs::path(out_dir) / "optimal.json", to_json_text(j));
      atomic_write(fs::path(out_dir) / "layout.json", to_json_text(placement_layout_json(s)));
      atomic_write(fs::path(out_dir) / "outlet.csv", outlet_csv(r));
      atomic_write(fs::path(out_dir) / "summary.json", to_json_text(summary_json(s, r)));
      write_timing(out_dir, timer.seconds());
      return 0;
    }

    if (*field) {
      check_length_flag(s, length);
      if (!(grid_res > 0.0)) throw FlagError("--grid-res must be positive");
      if (!(time_hours >= 0.0)) throw FlagError("--time-hours must be non-negative");
      const double z = depth < 0.0 ? 0.5 * length : depth;
      BoundingBox box;
      if (s.placement) {
        box = bounding_box(s.placement->domain);
      } else {
        for (const Point& p : s.layout.positions) box.extend(p);
        box.lo = box.lo - Point{10.0, 10.0};
        box.hi = box.hi + Point{10.0, 10.0};
      }
      // Cell-centred grid covering the box.
      const auto nx = static_cast<std::size_t>(std::max(1.0, std::round(box.width() / grid_res)));
      const auto ny = static_cast<std::size_t>(std::max(1.0, std::round(box.height() / grid_res)));
      const double dx = box.width() / static_cast<double>(nx);
      const double dy = box.height() / static_cast<double>(ny);
      std::vector<Point> grid;
      grid.reserve(nx * ny);
      for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
          grid.push_back({box.lo.x + (static_cast<double>(ix) + 0.5) * dx,
                          box.lo.y + (static_cast<double>(iy) + 0.5) * dy});
        }
      }
      SoilFieldOptions opt;
      opt.coarse_factor = coarse_factor > 0 ? coarse_factor : s.coarse_factor;
      opt.clamp_to_wall = true;
      const std::vector<double> du = soil_field(s.layout, s.load, length, s.soil, s.borehole, grid,
                                                z, time_hours * kSecondsPerHour, opt);
      std::string csv = "x_m,y_m,du_k\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        csv += format_double(grid[i].x) + "," + format_double(grid[i].y) + "," +
               format_double(du[i]) + "\n";
      }
      atomic_write(field_out, csv);
      return 0;
    }
  } catch (const InfeasibleAtMaxLength& e) {
    std::cerr << "ERROR " << e.code() << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "ERROR " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ERROR internal: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
