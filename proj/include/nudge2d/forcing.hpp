#pragma once

#include <cstdint>
#include <string>

#include "nudge2d/spectral_field.hpp"

namespace nudge2d {

enum class ForcingKind { kolmogorov, low_mode_random };

ForcingKind parse_forcing_kind(const std::string& name);
std::string to_string(ForcingKind kind);

/// Time-independent, divergence-free, zero-mean body force.
struct Forcing {
  SpectralField f1;
  SpectralField f2;
  double norm_l2 = 0.0;

  explicit Forcing(const Grid& grid) : f1(grid), f2(grid) {}
  Forcing(SpectralField first, SpectralField second);

  const Grid& grid() const { return f1.grid(); }
};

/// Builds a force supported on integer wavenumbers |k| <= 4 whose Grashof
/// number ||f|| / (nu^2 lambda1) equals grashof_target.
///
/// kolmogorov: f = A (sin(4 * 2pi y / L), 0).
/// low_mode_random: Gaussian coefficients on 0 < |k| <= 4, Leray projected.
Forcing make_forcing(const Grid& grid, double nu, double grashof_target, ForcingKind kind,
                     std::uint64_t seed = 0);

/// Zero force on the given grid.
Forcing zero_forcing(const Grid& grid);

}  // namespace nudge2d
