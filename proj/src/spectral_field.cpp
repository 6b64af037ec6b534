#include "nudge2d/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nudge2d {

PhysicalField::PhysicalField(Grid grid)
    : grid_(std::move(grid)), values_(grid_.physical_size(), 0.0) {}

PhysicalField::PhysicalField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.physical_size()) {
    throw std::invalid_argument("physical field size does not match grid");
  }
}

SpectralField::SpectralField(Grid grid)
    : grid_(std::move(grid)), coeffs_(grid_.spectral_size(), Complex{0.0, 0.0}) {}

Complex SpectralField::coeff(int k1, int k2) const {
  const int half = grid_.n() / 2;
  if (std::abs(k1) > half || std::abs(k2) > half) {
    throw std::out_of_range("wavevector outside grid band");
  }
  if (k2 < 0) return std::conj(coeffs_[grid_.index(grid_.row_of(-k1), -k2)]);
  return coeffs_[grid_.index(grid_.row_of(k1), k2)];
}

void SpectralField::set_mode(int k1, int k2, Complex value) {
  const int half = grid_.n() / 2;
  if (std::abs(k1) > half || std::abs(k2) > half) {
    throw std::out_of_range("wavevector outside grid band");
  }
  if (k2 < 0 || (k2 == 0 && k1 < 0)) {
    k1 = -k1;
    k2 = -k2;
    value = std::conj(value);
  }
  coeffs_[grid_.index(grid_.row_of(k1), k2)] = value;
  if (k2 == 0 || grid_.is_nyquist_col(k2)) {
    coeffs_[grid_.index(grid_.row_of(-k1), k2)] = std::conj(value);
  }
}

void SpectralField::symmetrize() {
  const int n = grid_.n();
  for (int b : {0, n / 2}) {
    for (int a = 0; a <= n / 2; ++a) {
      const int partner = grid_.row_of(-grid_.signed_k1(a));
      Complex& lhs = at(a, b);
      Complex& rhs = at(partner, b);
      const Complex avg = 0.5 * (lhs + std::conj(rhs));
      lhs = avg;
      rhs = std::conj(avg);
    }
  }
}

double SpectralField::hermitian_defect() const {
  const int n = grid_.n();
  double worst = 0.0;
  for (int b : {0, n / 2}) {
    for (int a = 0; a < n; ++a) {
      const int partner = grid_.row_of(-grid_.signed_k1(a));
      worst = std::max(worst, std::abs(at(a, b) - std::conj(at(partner, b))));
    }
  }
  return worst;
}

void SpectralField::zero_nyquist() {
  const int n = grid_.n();
  for (int b = 0; b < grid_.spectral_cols(); ++b) at(n / 2, b) = 0.0;
  for (int a = 0; a < n; ++a) at(a, n / 2) = 0.0;
}

bool SpectralField::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

void SpectralField::check_same_grid(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  enforce_zero_mean();
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  check_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  enforce_zero_mean();
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& c : coeffs_) c *= scale;
  enforce_zero_mean();
  return *this;
}

VelocityState::VelocityState(SpectralField first, SpectralField second, double t)
    : u1(std::move(first)), u2(std::move(second)), time(t) {
  if (!(u1.grid() == u2.grid())) throw std::invalid_argument("grid mismatch");
}

}  // namespace nudge2d
