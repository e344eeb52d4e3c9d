#pragma once

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <sstream>
#include <vector>

#include "borefield/errors.hpp"

namespace borefield {

namespace detail {

// FFTW planning is not thread-safe; execution on distinct plans is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_alloc(std::size_t n) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1))));
}

class FftwPlan {
public:
  explicit FftwPlan(fftw_plan p) : plan_(p) {}
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  ~FftwPlan() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

private:
  fftw_plan plan_;
};

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace detail

/// Direct O(N^2) causal convolution: out[m] = sum_{l<=m} a[l] * b[m-l].
inline std::vector<double> direct_convolution(std::span<const double> a,
                                              std::span<const double> b) {
  const std::size_t n = a.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    double acc = 0.0;
    for (std::size_t l = 0; l <= m && m - l < b.size(); ++l) acc += a[l] * b[m - l];
    out[m] = acc;
  }
  return out;
}

/// Causal linear convolution through a zero-padded real FFT of size
/// next_pow2(2N). Returns the first N = a.size() terms. `b` must hold at
/// least N samples.
inline std::vector<double> fft_convolution(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  if (b.size() < n) {
    std::ostringstream msg;
    msg << "convolution kernel has " << b.size() << " samples, need " << n;
    throw ValidationError(msg.str());
  }
  if (n == 0) return {};

  const std::size_t size = detail::next_power_of_two(2 * n);
  const std::size_t bins = size / 2 + 1;
  auto x = detail::fftw_alloc<double>(size);
  auto y = detail::fftw_alloc<double>(size);
  auto fx = detail::fftw_alloc<fftw_complex>(bins);
  auto fy = detail::fftw_alloc<fftw_complex>(bins);

  std::unique_ptr<detail::FftwPlan> fwd_x, fwd_y, inv;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    const int len = static_cast<int>(size);
    fwd_x = std::make_unique<detail::FftwPlan>(
        fftw_plan_dft_r2c_1d(len, x.get(), fx.get(), FFTW_ESTIMATE));
    fwd_y = std::make_unique<detail::FftwPlan>(
        fftw_plan_dft_r2c_1d(len, y.get(), fy.get(), FFTW_ESTIMATE));
    inv = std::make_unique<detail::FftwPlan>(
        fftw_plan_dft_c2r_1d(len, fx.get(), x.get(), FFTW_ESTIMATE));
  }

  std::fill_n(x.get(), size, 0.0);
  std::fill_n(y.get(), size, 0.0);
  std::copy(a.begin(), a.end(), x.get());
  std::copy_n(b.begin(), n, y.get());
  fwd_x->execute();
  fwd_y->execute();
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = fx[k][0] * fy[k][0] - fx[k][1] * fy[k][1];
    const double im = fx[k][0] * fy[k][1] + fx[k][1] * fy[k][0];
    fx[k][0] = re;
    fx[k][1] = im;
  }
  inv->execute();

  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(size);
  for (std::size_t m = 0; m < n; ++m) out[m] = x[m] * scale;
  return out;
}

}  // namespace borefield
