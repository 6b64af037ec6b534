#include "nudge2d/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nudge2d/spectral_ops.hpp"

namespace nudge2d {

SpectralField random_smooth_field(const Grid& grid, std::uint64_t seed,
                                  SmoothSpectrum spectrum) {
  SpectralField out(grid);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int k_max = spectrum.k_max;
  const int resolved = grid.n() / 2 - 1;
  // Canonical half plane: k2 > 0, or k2 == 0 and k1 > 0.
  for (int k2 = 0; k2 <= k_max; ++k2) {
    for (int k1 = -k_max; k1 <= k_max; ++k1) {
      if (k2 == 0 && k1 <= 0) continue;
      const double re = normal(rng);
      const double im = normal(rng);
      if (std::abs(k1) > resolved || k2 > resolved) continue;
      const double k_sq = static_cast<double>(k1 * k1 + k2 * k2);
      const double amp = std::pow(1.0 + k_sq, -0.5 * spectrum.exponent);
      out.set_mode(k1, k2, amp * Complex{re, im});
    }
  }
  out.enforce_zero_mean();
  return out;
}

std::vector<SpectralField> random_smooth_ensemble(const Grid& grid, std::size_t count,
                                                  std::uint64_t seed,
                                                  SmoothSpectrum spectrum) {
  std::vector<SpectralField> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(random_smooth_field(grid, seed + 7919 * i, spectrum));
  }
  return out;
}

VelocityState random_velocity(const Grid& grid, std::uint64_t seed,
                              SmoothSpectrum spectrum) {
  const auto a = random_smooth_field(grid, seed, spectrum);
  const auto b = random_smooth_field(grid, seed ^ 0x9e3779b97f4a7c15ULL, spectrum);
  return leray_project(a, b);
}

}  // namespace nudge2d
