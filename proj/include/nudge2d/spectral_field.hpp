#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nudge2d/grid.hpp"

namespace nudge2d {

using Complex = std::complex<double>;

/// Real N x N samples of a periodic field.
class PhysicalField {
 public:
  explicit PhysicalField(Grid grid);
  PhysicalField(Grid grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.n() + j]; }
  double operator()(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * grid_.n() + j];
  }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Fourier coefficients of a real, zero-mean periodic field.
///
/// Only the k2 >= 0 half plane is stored; coeff() reconstructs the rest by
/// Hermitian symmetry. The k = 0 coefficient is held at exactly zero.
class SpectralField {
 public:
  explicit SpectralField(Grid grid);

  const Grid& grid() const { return grid_; }

  Complex& at(int a, int b) { return coeffs_[grid_.index(a, b)]; }
  const Complex& at(int a, int b) const { return coeffs_[grid_.index(a, b)]; }

  /// Coefficient of signed wavevector (k1, k2), |k1|, |k2| <= N/2.
  Complex coeff(int k1, int k2) const;
  /// Sets the (k1, k2) coefficient and its conjugate partner.
  void set_mode(int k1, int k2, Complex value);

  std::span<Complex> data() { return coeffs_; }
  std::span<const Complex> data() const { return coeffs_; }

  void enforce_zero_mean() { coeffs_[0] = 0.0; }
  /// Restores exact Hermitian symmetry on the self-conjugate columns
  /// (k2 = 0 and k2 = N/2) by averaging each pair.
  void symmetrize();
  /// Largest |c(k) - conj(c(-k))| over the self-conjugate columns.
  double hermitian_defect() const;
  /// Sets every coefficient with a Nyquist index to zero.
  void zero_nyquist();
  bool all_finite() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  void check_same_grid(const SpectralField& other) const;

  Grid grid_;
  std::vector<Complex> coeffs_;
};

/// Velocity (u1, u2) at a given time.
struct VelocityState {
  SpectralField u1;
  SpectralField u2;
  double time = 0.0;

  explicit VelocityState(const Grid& grid) : u1(grid), u2(grid) {}
  VelocityState(SpectralField first, SpectralField second, double t = 0.0);

  const Grid& grid() const { return u1.grid(); }
};

/// Calls fn(storage_index, a, b, k1, k2) for every stored coefficient.
template <class Fn>
void for_each_mode(const Grid& grid, Fn&& fn) {
  const int n = grid.n();
  const int cols = grid.spectral_cols();
  for (int a = 0; a < n; ++a) {
    const int k1 = grid.signed_k1(a);
    for (int b = 0; b < cols; ++b) {
      fn(grid.index(a, b), a, b, k1, b);
    }
  }
}

/// Multiplicity of a stored coefficient in full-plane sums (Parseval weight).
inline double mode_weight(const Grid& grid, int b) {
  return (b == 0 || grid.is_nyquist_col(b)) ? 1.0 : 2.0;
}

}  // namespace nudge2d
