#include <gtest/gtest.h>

#include <random>

#include "borefield/placement.hpp"

using namespace borefield;

namespace {

DomainPolygon square(double a) { return {{{0, 0}, {a, 0}, {a, a}, {0, a}}, {}}; }

DomainPolygon l_shape_with_hole() {
  return {{{0, 0}, {48, 0}, {48, 24}, {24, 24}, {24, 48}, {0, 48}},
          {{{6, 6}, {16, 6}, {16, 14}, {6, 14}}}};
}

double mean_distance_to_ideal_grid(const std::vector<Point>& generators) {
  double sum = 0.0;
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) {
      const Point ideal{4.0 + 8.0 * i, 4.0 + 8.0 * j};
      double best = std::numeric_limits<double>::infinity();
      for (const Point& g : generators) best = std::min(best, distance(ideal, g));
      sum += best;
    }
  }
  return sum / 25.0;
}

}  // namespace

TEST(SampleDomain, SamplesAreInsideAndUniform) {
  const DomainPolygon d = l_shape_with_hole();
  const SamplePointSet s = sample_domain(d, 40000, 3);
  ASSERT_EQ(s.points.size(), 40000u);
  std::size_t lower_band = 0;
  for (const Point& p : s.points) {
    ASSERT_TRUE(contains(d, p));
    if (p.y < 24.0) ++lower_band;
  }
  // Lower band area (48*24 - 80) over total area.
  const double expected = (48.0 * 24.0 - 80.0) / area(d);
  const double observed = static_cast<double>(lower_band) / 40000.0;
  EXPECT_NEAR(observed, expected, 4.0 * std::sqrt(expected * (1 - expected) / 40000.0));
}

TEST(SampleDomain, SameSeedSameSamples) {
  const auto a = sample_domain(square(10), 100, 9);
  const auto b = sample_domain(square(10), 100, 9);
  const auto c = sample_domain(square(10), 100, 10);
  for (std::size_t i = 0; i < 100; ++i) {
    EXPECT_EQ(a.points[i].x, b.points[i].x);
    EXPECT_EQ(a.points[i].y, b.points[i].y);
  }
  EXPECT_NE(a.points[0].x, c.points[0].x);
}

TEST(AssignNearest, TiesGoToLowestIndex) {
  const std::vector<Point> generators{{0, 0}, {2, 0}, {0, 0}};
  const std::vector<Point> samples{{1, 0}, {0.1, 0}, {1.9, 0}};
  const auto cell = assign_nearest(generators, samples);
  EXPECT_EQ(cell[0], 0u);
  EXPECT_EQ(cell[1], 0u);
  EXPECT_EQ(cell[2], 1u);
}

TEST(Lloyd, ObjectiveNeverIncreasesOnConvexDomain) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CvtOptions o;
    o.seed = seed;
    const PlacementResult r = lloyd_cvt(square(40), 25, o);
    for (std::size_t i = 1; i < r.objective_history.size(); ++i) {
      EXPECT_LE(r.objective_history[i], r.objective_history[i - 1] * (1 + 1e-12)) << "seed " << seed;
    }
    EXPECT_LE(r.objective, r.objective_history.back() * (1 + 1e-12));
  }
}

TEST(Lloyd, RecoversQuasiGridOnSquare) {
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CvtOptions o;
    o.seed = seed;
    total += mean_distance_to_ideal_grid(lloyd_cvt(square(40), 25, o).generators);
  }
  EXPECT_LE(total / 10.0, 3.0);
}

TEST(Lloyd, GeneratorsStayInsideNonConvexDomain) {
  const DomainPolygon d = l_shape_with_hole();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CvtOptions o;
    o.seed = seed;
    const PlacementResult r = lloyd_cvt(d, 25, o);
    ASSERT_EQ(r.generators.size(), 25u);
    for (const Point& g : r.generators) EXPECT_TRUE(contains(d, g)) << "seed " << seed;
    EXPECT_GT(r.min_pairwise_distance, 0.0);
  }
}

TEST(Lloyd, SingleGeneratorMovesToCentroid) {
  const PlacementResult r = lloyd_cvt(square(40), 1);
  EXPECT_NEAR(r.generators[0].x, 20.0, 0.5);
  EXPECT_NEAR(r.generators[0].y, 20.0, 0.5);
  EXPECT_LE(r.iterations, 3u);
}

TEST(Lloyd, DeterministicForFixedSeed) {
  CvtOptions o;
  o.seed = 77;
  const PlacementResult a = lloyd_cvt(l_shape_with_hole(), 12, o);
  const PlacementResult b = lloyd_cvt(l_shape_with_hole(), 12, o);
  ASSERT_EQ(a.generators.size(), b.generators.size());
  for (std::size_t i = 0; i < a.generators.size(); ++i) {
    EXPECT_EQ(a.generators[i].x, b.generators[i].x);
    EXPECT_EQ(a.generators[i].y, b.generators[i].y);
  }
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Lloyd, RestartsKeepTheBestObjective) {
  CvtOptions o;
  o.seed = 4;
  o.restarts = 3;
  const PlacementResult best = lloyd_cvt(square(40), 25, o);
  for (std::uint64_t s = 4; s < 7; ++s) {
    CvtOptions single;
    single.seed = s;
    EXPECT_LE(best.raw_objective, lloyd_cvt(square(40), 25, single).raw_objective);
  }
}

TEST(Lloyd, StopsAtIterationCapOrTolerance) {
  CvtOptions o;
  o.max_iterations = 3;
  EXPECT_EQ(lloyd_cvt(square(40), 25, o).iterations, 3u);
  CvtOptions loose;
  loose.tolerance = 1e3;
  EXPECT_EQ(lloyd_cvt(square(40), 25, loose).iterations, 1u);
}

TEST(Lloyd, SpacingWarningOnCrowdedDomain) {
  const PlacementResult r = lloyd_cvt(square(10), 16);
  EXPECT_TRUE(r.spacing_warning);
  EXPECT_LT(r.min_pairwise_distance, 5.0);
  EXPECT_FALSE(lloyd_cvt(square(40), 25).spacing_warning);
}

TEST(Lloyd, RejectsInvalidRequests) {
  EXPECT_THROW(lloyd_cvt(square(40), 0), ValidationError);
  CvtOptions few;
  few.samples = 10;
  EXPECT_THROW(lloyd_cvt(square(40), 25, few), ValidationError);
  DomainPolygon bow{{{0, 0}, {10, 10}, {10, 0}, {0, 10}}, {}};
  EXPECT_THROW(lloyd_cvt(bow, 5), ValidationError);
}
