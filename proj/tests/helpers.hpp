#pragma once

#include <cmath>
#include <functional>

#include "nudge2d/spectral_ops.hpp"

namespace testing {

using namespace nudge2d;

// Samples fn(x, y) at the collocation points.
inline PhysicalField sample(const Grid& g, const std::function<double(double, double)>& fn) {
  PhysicalField p(g);
  const double dx = g.length() / g.n();
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) p(i, j) = fn(i * dx, j * dx);
  }
  return p;
}

inline SpectralField spectral(const Grid& g, const std::function<double(double, double)>& fn) {
  return to_spectral(sample(g, fn));
}

inline double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double rel_diff(const SpectralField& a, const SpectralField& b) {
  const double scale = std::max(norm_l2(a), norm_l2(b));
  return scale == 0.0 ? 0.0 : norm_l2(a - b) / scale;
}

inline double rel_diff(const VelocityState& a, const VelocityState& b) {
  const double scale = std::max(norm_l2(a), norm_l2(b));
  const VelocityState d(a.u1 - b.u1, a.u2 - b.u2);
  return scale == 0.0 ? 0.0 : norm_l2(d) / scale;
}

inline bool bit_equal(const SpectralField& a, const SpectralField& b) {
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    if (a.data()[i] != b.data()[i]) return false;
  }
  return true;
}

}  // namespace testing
