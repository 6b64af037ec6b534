#pragma once

#include <cstdint>
#include <vector>

#include "nudge2d/spectral_field.hpp"

namespace nudge2d {

/// Parameters of the random smooth ensemble.
struct SmoothSpectrum {
  int k_max = 8;         ///< integer wavenumber cutoff (max-norm)
  double exponent = 2.0; ///< amplitude ~ (1 + |k|^2)^(-exponent/2)
};

/// Random real zero-mean field with Gaussian coefficients shaped by the
/// spectrum. Modes are drawn in a grid-independent order, so the same seed
/// yields the same function on every grid that resolves k_max.
SpectralField random_smooth_field(const Grid& grid, std::uint64_t seed,
                                  SmoothSpectrum spectrum = {});

std::vector<SpectralField> random_smooth_ensemble(const Grid& grid, std::size_t count,
                                                  std::uint64_t seed,
                                                  SmoothSpectrum spectrum = {});

/// Divergence-free random velocity, Leray projection of two random fields.
VelocityState random_velocity(const Grid& grid, std::uint64_t seed,
                              SmoothSpectrum spectrum = {});

}  // namespace nudge2d
