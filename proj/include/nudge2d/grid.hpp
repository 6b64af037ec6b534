#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>

namespace nudge2d {

namespace detail {
struct FftPlans;
}

/// Square periodic box [0, L]^2 resolved by N x N collocation points.
///
/// Physical samples are stored row-major as (i, j) -> i * N + j with
/// x = i L / N and y = j L / N. Spectral coefficients use the real-to-complex
/// half layout: (a, b) -> a * (N/2 + 1) + b, where a in [0, N) indexes k1
/// (wrapped) and b in [0, N/2] indexes k2 >= 0. Coefficients are Fourier
/// series coefficients, f(x) = sum_k c_k exp(i k . x 2pi/L).
class Grid {
 public:
  Grid(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  /// Smallest Stokes eigenvalue (2 pi / L)^2.
  double lambda1() const { return kunit_ * kunit_; }
  /// Physical wavenumber of integer index 1, 2 pi / L.
  double wavenumber_unit() const { return kunit_; }

  int spectral_cols() const { return n_ / 2 + 1; }
  std::size_t physical_size() const { return static_cast<std::size_t>(n_) * n_; }
  std::size_t spectral_size() const {
    return static_cast<std::size_t>(n_) * spectral_cols();
  }
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * spectral_cols() + b;
  }

  /// Signed wavenumber index of storage row a. Row N/2 maps to +N/2.
  int signed_k1(int a) const { return a <= n_ / 2 ? a : a - n_; }
  /// Storage row holding signed index k1 (any integer, wrapped).
  int row_of(int k1) const { return ((k1 % n_) + n_) % n_; }
  bool is_nyquist_row(int a) const { return a == n_ / 2; }
  bool is_nyquist_col(int b) const { return b == n_ / 2; }

  /// Unnormalized FFTW forward transform scaled by 1/N^2.
  void forward(std::span<const double> physical,
               std::span<std::complex<double>> spectral) const;
  /// Synthesis sum_k c_k exp(i k.x); inverse of forward().
  void inverse(std::span<const std::complex<double>> spectral,
               std::span<double> physical) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  int n_;
  double length_;
  double kunit_;
  std::shared_ptr<const detail::FftPlans> plans_;
};

Grid make_grid(int n, double length);

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace nudge2d
