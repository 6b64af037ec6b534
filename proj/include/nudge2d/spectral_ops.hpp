#pragma once

#include <algorithm>
#include <utility>

#include "nudge2d/spectral_field.hpp"

namespace nudge2d {

PhysicalField to_physical(const SpectralField& f);
/// Forward transform; the mean is removed and the self-conjugate columns
/// are made exactly Hermitian.
SpectralField to_spectral(const PhysicalField& f);

/// (d/dx f, d/dy f). Nyquist modes are zeroed.
std::pair<SpectralField, SpectralField> gradient(const SpectralField& f);
SpectralField laplacian(const SpectralField& f);
SpectralField divergence(const SpectralField& u1, const SpectralField& u2);

/// L2-orthogonal projection onto divergence-free fields.
VelocityState leray_project(const SpectralField& u1, const SpectralField& u2);

/// 2/3 rule: zero every mode with max(|k1|, |k2|) > N/3.
SpectralField dealias(const SpectralField& f);
void dealias_in_place(SpectralField& f);
inline bool is_dealiased_mode(const Grid& grid, int k1, int k2) {
  const int m = std::max(k1 < 0 ? -k1 : k1, k2 < 0 ? -k2 : k2);
  return 3 * m <= grid.n();
}

/// Copies coefficients onto another grid with the same L, truncating or
/// zero padding. Nyquist modes of the source are dropped.
SpectralField resample(const SpectralField& f, const Grid& target);

double norm_l2(const SpectralField& f);
double seminorm_h1(const SpectralField& f);
double seminorm_h2(const SpectralField& f);
/// (f, g) in L2(Omega).
double inner_l2(const SpectralField& f, const SpectralField& g);

double norm_l2(const VelocityState& u);
double seminorm_h1(const VelocityState& u);
double seminorm_h2(const VelocityState& u);
double inner_l2(const VelocityState& u, const VelocityState& v);

/// max_k |k . u(k)| scaled by sqrt(lambda1) ||u|| / L; zero for the zero field.
double divergence_defect(const VelocityState& u);

}  // namespace nudge2d
