#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "borefield/field_response.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace borefield;
using borefield::testing::demo_borehole;
using borefield::testing::demo_fluid;
using borefield::testing::demo_soil;

using oracle::finite_line_source;

namespace {

FieldLayout grid_layout(std::size_t n, double pitch) {
  FieldLayout layout;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      layout.positions.push_back({pitch * (0.5 + static_cast<double>(i)),
                                  pitch * (0.5 + static_cast<double>(j))});
    }
  }
  return layout;
}

}  // namespace

TEST(PointStepResponse, MatchesFiniteLineSourceIntegral) {
  const SoilProperties soil = demo_soil();
  const double length = 100.0;
  const double q = -30.0;
  const double day = 86400.0;
  for (double r : {0.075, 5.0}) {
    for (double t : {day, 30 * day, 365 * day, 20 * 365 * day}) {
      const std::vector<double> times{0.0, t};
      const double conv = q * point_step_response(r, 0.5 * length, length, times, soil).values[1];
      const double oracle = finite_line_source(q, r, 0.5 * length, length, t, soil);
      EXPECT_NEAR(conv, oracle, 1e-5 * std::abs(oracle)) << "r " << r << " t " << t;
    }
  }
}

TEST(StepResponse, IncreasesWithTimeAndDecreasesWithDistance) {
  const SoilProperties soil = demo_soil();
  const BoreholeCoefficients c = borehole_coefficients(demo_fluid(), demo_borehole(), 100.0);
  const auto times = uniform_times(30 * 86400.0, 240);
  std::vector<double> previous;
  for (double r : {0.075, 2.0, 8.0, 30.0}) {
    const StepResponseTable h = step_response(r, 100.0, times, soil, c);
    EXPECT_EQ(h.values.front(), 0.0);
    for (std::size_t i = 1; i < h.values.size(); ++i) {
      EXPECT_GE(h.values[i], h.values[i - 1]);
      if (!previous.empty()) {
        EXPECT_LT(h.values[i], previous[i]);
      }
    }
    previous = h.values;
  }
}

TEST(StepResponse, RejectsBadGrids) {
  const SoilProperties soil = demo_soil();
  const BoreholeCoefficients c = borehole_coefficients(demo_fluid(), demo_borehole(), 100.0);
  const std::vector<double> not_from_zero{1.0, 2.0};
  const std::vector<double> decreasing{0.0, 2.0, 1.0};
  EXPECT_THROW(step_response(1.0, 100.0, not_from_zero, soil, c), ValidationError);
  EXPECT_THROW(step_response(1.0, 100.0, decreasing, soil, c), ValidationError);
  EXPECT_THROW(step_response(0.0, 100.0, uniform_times(1.0, 2), soil, c), DomainError);
}

TEST(Superposition, ConvolveIncrementsMatchesDirectSum) {
  const SoilProperties soil = demo_soil();
  const BoreholeCoefficients c = borehole_coefficients(demo_fluid(), demo_borehole(), 80.0);
  const std::size_t n = 300;
  const StepResponseTable h = step_response(6.0, 80.0, uniform_times(3600.0, n), soil, c);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> load(0.0, 25.0);
  std::vector<double> q(n);
  for (auto& x : q) x = load(rng);
  const auto inc = load_increments(q);
  const auto u = convolve_increments(inc, h);
  for (std::size_t m = 0; m < n; m += 17) {
    double direct = 0.0;
    for (std::size_t l = 0; l <= m; ++l) direct += inc[l] * h.values[m + 1 - l];
    EXPECT_NEAR(u[m], direct, 1e-11);
  }
}

TEST(Superposition, ConstantLoadGivesScaledStepResponse) {
  const SoilProperties soil = demo_soil();
  const BoreholeCoefficients c = borehole_coefficients(demo_fluid(), demo_borehole(), 80.0);
  const StepResponseTable h = step_response(0.075, 80.0, uniform_times(3600.0, 50), soil, c);
  const std::vector<double> q(50, 12.5);
  const auto u = convolve_increments(load_increments(q), h);
  for (std::size_t m = 0; m < 50; ++m) EXPECT_NEAR(u[m], 12.5 * h.values[m + 1], 1e-12);
  EXPECT_THROW(convolve_increments(load_increments(std::vector<double>(49, 1.0)), h),
               ValidationError);
}

TEST(CoarseGrid, AverageKeepsTrailingPartialBlock) {
  const std::vector<double> fine{1, 2, 3, 4, 5, 6, 7};
  const auto coarse = coarse_average(fine, 3);
  ASSERT_EQ(coarse.size(), 3u);
  EXPECT_DOUBLE_EQ(coarse[0], 2.0);
  EXPECT_DOUBLE_EQ(coarse[1], 5.0);
  EXPECT_DOUBLE_EQ(coarse[2], 7.0);
  EXPECT_THROW(coarse_average(fine, 0), ValidationError);
}

TEST(CoarseGrid, InterpolationIsExactAtNodesAndForLinearData) {
  const std::size_t factor = 5;
  std::vector<double> nodes(5);
  for (std::size_t j = 0; j < nodes.size(); ++j) nodes[j] = 2.0 + 3.0 * static_cast<double>(j * factor);
  const auto fine = interpolate_to_fine(nodes, factor, 20);
  for (std::size_t m = 0; m < fine.size(); ++m) {
    EXPECT_NEAR(fine[m], 2.0 + 3.0 * static_cast<double>(m + 1), 1e-12);
  }
}

TEST(PairDistances, GridMultiplicitiesAddUp) {
  const FieldLayout layout = grid_layout(5, 8.0);
  const auto pairs = unique_pair_distances(distance_matrix(layout, 0.075));
  std::size_t total = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    total += pairs[i].count;
    if (i > 0) {
      EXPECT_GT(pairs[i].distance, pairs[i - 1].distance);
    }
  }
  EXPECT_EQ(total, 25u * 24u / 2u);
  // A 5x5 grid has 14 distinct separations (i^2 + j^2 for 0 <= i <= j <= 4, not both 0).
  EXPECT_EQ(pairs.size(), 14u);
  EXPECT_DOUBLE_EQ(pairs.front().distance, 8.0);
  EXPECT_EQ(pairs.front().count, 40u);
}

TEST(Layout, RejectsOverlappingBoreholes) {
  FieldLayout layout{{{0.0, 0.0}, {0.1, 0.0}}};
  EXPECT_THROW(distance_matrix(layout, 0.075), ValidationError);
  FieldLayout same{{{1.0, 1.0}, {1.0, 1.0}}};
  EXPECT_THROW(distance_matrix(same, 0.075), ValidationError);
  EXPECT_THROW(distance_matrix(FieldLayout{}, 0.075), ValidationError);
}

TEST(DualGrid, SingleBoreholeHasNoInteraction) {
  LoadProfile load{3600.0, std::vector<double>(100, -20e3)};
  const BoreholeCoefficients c = borehole_coefficients(demo_fluid(1), demo_borehole(), 90.0);
  const auto r = dual_grid_response(FieldLayout{{{0.0, 0.0}}}, load, 90.0, demo_soil(),
                                    demo_borehole(), c, 10);
  ASSERT_EQ(r.psi_inter.size(), 100u);
  for (double v : r.psi_inter) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(r.distinct_distances, 0u);
}

TEST(DualGrid, BlockConstantLoadMatchesFineGridAtCoarseNodes) {
  const std::size_t factor = 730;
  const std::size_t blocks = 24;
  LoadProfile load;
  for (std::size_t b = 0; b < blocks; ++b) {
    const double month = -40e3 * std::cos(2 * std::numbers::pi * (static_cast<double>(b) - 6.5) / 12.0) - 10e3;
    load.values.insert(load.values.end(), factor, month);
  }
  const FieldLayout layout{{{0, 0}, {6, 0}, {0, 9}, {7, 11}}};
  const double length = 100.0;
  const BoreholeCoefficients c = borehole_coefficients(demo_fluid(4), demo_borehole(), length);
  const auto coarse = dual_grid_response(layout, load, length, demo_soil(), demo_borehole(), c, factor);
  const auto fine = dual_grid_response(layout, load, length, demo_soil(), demo_borehole(), c, 1);
  for (std::size_t j = 1; j <= blocks; ++j) {
    const std::size_t m = j * factor - 1;
    EXPECT_NEAR(coarse.psi_inter[m], fine.psi_inter[m], 1e-9) << "node " << j;
  }
  for (std::size_t m = 0; m < load.steps(); ++m) EXPECT_EQ(coarse.psi_self[m], fine.psi_self[m]);
}

TEST(DualGrid, CoarseErrorDecaysWithDistance) {
  // Hourly load with strong daily swings over two years.
  LoadProfile load;
  for (std::size_t h = 0; h < 2 * 8760; ++h) {
    const double t = static_cast<double>(h);
    load.values.push_back(-15e3 - 40e3 * std::cos(2 * std::numbers::pi * (t / 24.0 - 200.0) / 365.0) +
                          12e3 * std::cos(2 * std::numbers::pi * t / 24.0));
  }
  const double length = 100.0;
  const BoreholeCoefficients c = borehole_coefficients(demo_fluid(25), demo_borehole(), length);
  const auto q = line_loads(load, length, 25);
  double previous = std::numeric_limits<double>::infinity();
  for (double d : {3.0, 6.0, 12.0, 24.0, 48.0}) {
    const auto coarse = interpolate_to_fine(
        coarse_pair_response(d, q, 3600.0, 730, length, demo_soil(), c), 730, q.size());
    const auto fine = coarse_pair_response(d, q, 3600.0, 1, length, demo_soil(), c);
    double deviation = 0.0;
    for (std::size_t m = 0; m < q.size(); ++m) {
      deviation = std::max(deviation, std::abs(coarse[m] - fine[m + 1]));
    }
    EXPECT_LT(deviation, previous) << "distance " << d;
    previous = deviation;
  }
}

TEST(DualGrid, CacheReusesTablesAcrossCalls) {
  LoadProfile load{3600.0, std::vector<double>(200, -10e3)};
  const FieldLayout layout = grid_layout(3, 8.0);
  const BoreholeCoefficients c = borehole_coefficients(demo_fluid(9), demo_borehole(), 60.0);
  StepResponseCache cache;
  const auto first = dual_grid_response(layout, load, 60.0, demo_soil(), demo_borehole(), c, 24, &cache);
  const std::size_t tables = cache.size();
  // Self response plus one table per distinct separation (1, sqrt2, 2, sqrt5, sqrt8 pitches).
  EXPECT_EQ(tables, 1u + 5u);
  const auto second = dual_grid_response(layout, load, 60.0, demo_soil(), demo_borehole(), c, 24, &cache);
  EXPECT_EQ(cache.size(), tables);
  EXPECT_EQ(first.psi_inter, second.psi_inter);
}

TEST(SoilField, SingleBoreholeConstantLoadMatchesLineSource) {
  const SoilProperties soil = demo_soil();
  const double length = 100.0;
  const double power = -25e3;
  LoadProfile load{86400.0, std::vector<double>(365, power)};
  const FieldLayout layout{{{0.0, 0.0}}};
  const std::vector<Point> grid{{3.0, 0.0}, {0.0, 10.0}};
  const double t = 365 * 86400.0;
  const auto field = soil_field(layout, load, length, soil, demo_borehole(), grid, 50.0, t);
  const double q = -power / length;
  EXPECT_NEAR(field[0], finite_line_source(q, 3.0, 50.0, length, t, soil), 1e-6);
  EXPECT_NEAR(field[1], finite_line_source(q, 10.0, 50.0, length, t, soil), 1e-6);
}

TEST(SoilField, SymmetricLayoutGivesSymmetricField) {
  LoadProfile load{3600.0 * 24, {}};
  for (int d = 0; d < 120; ++d) load.values.push_back(-30e3 + 500.0 * d);
  const FieldLayout layout{{{-4, 0}, {4, 0}}};
  const std::vector<Point> grid{{-10, 3}, {10, 3}, {-1, -2}, {1, -2}, {0, 0}};
  const auto f = soil_field(layout, load, 80.0, demo_soil(), demo_borehole(), grid, 40.0,
                            120 * 86400.0);
  EXPECT_NEAR(f[0], f[1], 1e-12 * std::abs(f[0]));
  EXPECT_NEAR(f[2], f[3], 1e-12 * std::abs(f[2]));
  // Heat injection warms the ground, most strongly between the boreholes.
  EXPECT_GT(f[4], f[2]);
  EXPECT_GT(f[2], f[0]);
  EXPECT_GT(f[0], 0.0);
}

TEST(SoilField, PointsInsideBoreholeNeedClamping) {
  LoadProfile load{3600.0, std::vector<double>(24, -10e3)};
  const FieldLayout layout{{{0.0, 0.0}}};
  const std::vector<Point> grid{{0.01, 0.0}};
  EXPECT_THROW(soil_field(layout, load, 50.0, demo_soil(), demo_borehole(), grid, 25.0, 24 * 3600.0),
               ValidationError);
  SoilFieldOptions options;
  options.clamp_to_wall = true;
  const auto clamped =
      soil_field(layout, load, 50.0, demo_soil(), demo_borehole(), grid, 25.0, 24 * 3600.0, options);
  const std::vector<Point> wall{{0.075, 0.0}};
  const auto at_wall =
      soil_field(layout, load, 50.0, demo_soil(), demo_borehole(), wall, 25.0, 24 * 3600.0);
  EXPECT_DOUBLE_EQ(clamped[0], at_wall[0]);
}

TEST(SoilField, RejectsTimesOffTheLoadGrid) {
  LoadProfile load{3600.0, std::vector<double>(24, -10e3)};
  const FieldLayout layout{{{0.0, 0.0}}};
  const std::vector<Point> grid{{1.0, 0.0}};
  EXPECT_THROW(soil_field(layout, load, 50.0, demo_soil(), demo_borehole(), grid, 25.0, 1800.0),
               ValidationError);
  EXPECT_THROW(soil_field(layout, load, 50.0, demo_soil(), demo_borehole(), grid, 25.0, 25 * 3600.0),
               ValidationError);
  const auto zero = soil_field(layout, load, 50.0, demo_soil(), demo_borehole(), grid, 25.0, 0.0);
  EXPECT_EQ(zero[0], 0.0);
}
