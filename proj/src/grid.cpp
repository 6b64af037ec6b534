#include "nudge2d/grid.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nudge2d {

namespace detail {

// fftw_execute_dft_* on distinct arrays is thread-safe; planning is not.
struct FftPlans {
  int n = 0;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  explicit FftPlans(int size) : n(size) {
    std::vector<double> real(static_cast<std::size_t>(n) * n);
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(n) * (n / 2 + 1));
    auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward = fftw_plan_dft_r2c_2d(n, n, real.data(), cplx, flags);
    inverse = fftw_plan_dft_c2r_2d(n, n, cplx, real.data(), flags);
    if (forward == nullptr || inverse == nullptr) {
      throw std::runtime_error("FFTW planning failed for N=" + std::to_string(n));
    }
  }
  ~FftPlans() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(inverse);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
};

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<const FftPlans> plans_for(int n) {
  std::lock_guard lock(planner_mutex());
  static std::map<int, std::weak_ptr<const FftPlans>> cache;
  if (auto existing = cache[n].lock()) return existing;
  // Destruction also touches planner state, so it takes the same lock.
  std::shared_ptr<const FftPlans> plans(new FftPlans(n), [](const FftPlans* p) {
    std::lock_guard guard(planner_mutex());
    delete p;
  });
  cache[n] = plans;
  return plans;
}

}  // namespace
}  // namespace detail

Grid::Grid(int n, double length) : n_(n), length_(length) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("grid size N must be even and >= 8, got " +
                                std::to_string(n));
  }
  if (!(length > 0.0)) {
    throw std::invalid_argument("domain length L must be positive");
  }
  kunit_ = kTwoPi / length_;
  plans_ = detail::plans_for(n_);
}

Grid make_grid(int n, double length) { return Grid(n, length); }

void Grid::forward(std::span<const double> physical,
                   std::span<std::complex<double>> spectral) const {
  if (physical.size() != physical_size() || spectral.size() != spectral_size()) {
    throw std::invalid_argument("transform shape mismatch");
  }
  std::vector<double> in(physical.begin(), physical.end());
  fftw_execute_dft_r2c(plans_->forward, in.data(),
                       reinterpret_cast<fftw_complex*>(spectral.data()));
  const double scale = 1.0 / static_cast<double>(physical_size());
  for (auto& c : spectral) c *= scale;
}

void Grid::inverse(std::span<const std::complex<double>> spectral,
                   std::span<double> physical) const {
  if (physical.size() != physical_size() || spectral.size() != spectral_size()) {
    throw std::invalid_argument("transform shape mismatch");
  }
  // c2r overwrites its input.
  std::vector<std::complex<double>> in(spectral.begin(), spectral.end());
  fftw_execute_dft_c2r(plans_->inverse, reinterpret_cast<fftw_complex*>(in.data()),
                       physical.data());
}

}  // namespace nudge2d
