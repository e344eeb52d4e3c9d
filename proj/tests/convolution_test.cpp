#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "borefield/convolution.hpp"
#include "oracles.hpp"

using namespace borefield;

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST(NextPowerOfTwo, SmallValues) {
  EXPECT_EQ(detail::next_power_of_two(1), 1u);
  EXPECT_EQ(detail::next_power_of_two(2), 2u);
  EXPECT_EQ(detail::next_power_of_two(3), 4u);
  EXPECT_EQ(detail::next_power_of_two(4097), 8192u);
}

TEST(Convolution, DirectMatchesSchoolbook) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> a(37), b(37);
  for (auto& x : a) x = n(rng);
  for (auto& x : b) x = n(rng);
  const auto ref = oracle::schoolbook_convolution(a, b);
  const auto got = direct_convolution(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(got[i], ref[i], 1e-13);
}

TEST(Convolution, FftMatchesDirectOnRandomLoadSeries) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> len(1, 2000);
  std::normal_distribution<double> load(0.0, 30.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = len(rng);
    std::vector<double> q(n), h(n);
    for (auto& x : q) x = load(rng);
    // Monotone step-response-like kernel.
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) h[i] = acc += 1e-3 * std::exp(-0.01 * static_cast<double>(i));
    const auto ref = oracle::schoolbook_convolution(q, h);
    const auto got = fft_convolution(q, h);
    ASSERT_EQ(got.size(), n);
    const double scale = max_abs(ref);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_NEAR(got[i], ref[i], 1e-9 * scale) << "trial " << trial << " index " << i;
    }
  }
}

TEST(Convolution, ImpulseReproducesKernel) {
  std::vector<double> delta(100, 0.0);
  delta[0] = 1.0;
  std::vector<double> h(100);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = std::sqrt(static_cast<double>(i + 1));
  const auto got = fft_convolution(delta, h);
  for (std::size_t i = 0; i < h.size(); ++i) EXPECT_NEAR(got[i], h[i], 1e-12 * h[i]);
}

TEST(Convolution, ConcurrentCallsAgree) {
  std::vector<double> a(3000), b(3000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = std::sin(0.01 * static_cast<double>(i));
    b[i] = std::log1p(static_cast<double>(i));
  }
  const auto expected = fft_convolution(a, b);
  std::vector<std::vector<double>> results(4);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < results.size(); ++t) {
    threads.emplace_back([&, t] { results[t] = fft_convolution(a, b); });
  }
  for (auto& t : threads) t.join();
  for (const auto& r : results) EXPECT_EQ(r, expected);
}

TEST(Convolution, EmptyAndMismatchedInputs) {
  EXPECT_TRUE(fft_convolution({}, {}).empty());
  std::vector<double> a(4, 1.0), b(3, 1.0);
  EXPECT_ANY_THROW(fft_convolution(a, b));
}
