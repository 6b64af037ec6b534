#include "nudge2d/forcing.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "nudge2d/spectral_ops.hpp"

namespace nudge2d {

namespace {
constexpr int kForcingShell = 4;
}

ForcingKind parse_forcing_kind(const std::string& name) {
  if (name == "kolmogorov") return ForcingKind::kolmogorov;
  if (name == "low_mode_random") return ForcingKind::low_mode_random;
  throw std::invalid_argument("unknown forcing kind '" + name + "'");
}

std::string to_string(ForcingKind kind) {
  return kind == ForcingKind::kolmogorov ? "kolmogorov" : "low_mode_random";
}

Forcing::Forcing(SpectralField first, SpectralField second)
    : f1(std::move(first)), f2(std::move(second)) {
  norm_l2 = std::hypot(nudge2d::norm_l2(f1), nudge2d::norm_l2(f2));
}

Forcing zero_forcing(const Grid& grid) { return Forcing(grid); }

Forcing make_forcing(const Grid& grid, double nu, double grashof_target, ForcingKind kind,
                     std::uint64_t seed) {
  if (!(grashof_target > 0.0)) throw std::invalid_argument("Grashof target must be positive");
  if (!(nu > 0.0)) throw std::invalid_argument("viscosity must be positive");

  SpectralField f1(grid);
  SpectralField f2(grid);
  if (kind == ForcingKind::kolmogorov) {
    // sin(k y) = (e^{iky} - e^{-iky}) / 2i
    f1.set_mode(0, kForcingShell, Complex{0.0, -0.5});
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int k2 = 0; k2 <= kForcingShell; ++k2) {
      for (int k1 = -kForcingShell; k1 <= kForcingShell; ++k1) {
        if (k2 == 0 && k1 <= 0) continue;
        if (k1 * k1 + k2 * k2 > kForcingShell * kForcingShell) continue;
        const Complex a{normal(rng), normal(rng)};
        const Complex b{normal(rng), normal(rng)};
        f1.set_mode(k1, k2, a);
        f2.set_mode(k1, k2, b);
      }
    }
    auto projected = leray_project(f1, f2);
    f1 = std::move(projected.u1);
    f2 = std::move(projected.u2);
  }

  const double raw = std::hypot(norm_l2(f1), norm_l2(f2));
  const double wanted = grashof_target * nu * nu * grid.lambda1();
  f1 *= wanted / raw;
  f2 *= wanted / raw;
  return Forcing(std::move(f1), std::move(f2));
}

}  // namespace nudge2d
