#include "nudge2d/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace nudge2d {

namespace {

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("grid mismatch");
}

bool touches_nyquist(const Grid& g, int a, int b) {
  return g.is_nyquist_row(a) || g.is_nyquist_col(b);
}

// Sum over the full plane of weight(k) |c(k)|^2, using the half-plane storage.
template <class Weight>
double weighted_energy(const SpectralField& f, Weight&& w) {
  const Grid& g = f.grid();
  const auto data = f.data();
  double sum = 0.0;
  for_each_mode(g, [&](std::size_t idx, int, int b, int k1, int k2) {
    sum += mode_weight(g, b) * w(k1, k2) * std::norm(data[idx]);
  });
  return sum;
}

}  // namespace

PhysicalField to_physical(const SpectralField& f) {
  PhysicalField out(f.grid());
  f.grid().inverse(f.data(), out.values());
  return out;
}

SpectralField to_spectral(const PhysicalField& f) {
  SpectralField out(f.grid());
  f.grid().forward(f.values(), out.data());
  out.symmetrize();
  out.enforce_zero_mean();
  return out;
}

std::pair<SpectralField, SpectralField> gradient(const SpectralField& f) {
  const Grid& g = f.grid();
  const double kunit = g.wavenumber_unit();
  SpectralField dx(g);
  SpectralField dy(g);
  for_each_mode(g, [&](std::size_t idx, int a, int b, int k1, int k2) {
    if (touches_nyquist(g, a, b)) return;
    const Complex c = f.data()[idx];
    dx.data()[idx] = Complex{0.0, kunit * k1} * c;
    dy.data()[idx] = Complex{0.0, kunit * k2} * c;
  });
  dx.enforce_zero_mean();
  dy.enforce_zero_mean();
  return {std::move(dx), std::move(dy)};
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  const double lam = g.lambda1();
  SpectralField out(g);
  for_each_mode(g, [&](std::size_t idx, int a, int b, int k1, int k2) {
    if (touches_nyquist(g, a, b)) return;
    out.data()[idx] = -lam * static_cast<double>(k1 * k1 + k2 * k2) * f.data()[idx];
  });
  out.enforce_zero_mean();
  return out;
}

SpectralField divergence(const SpectralField& u1, const SpectralField& u2) {
  require_same_grid(u1, u2);
  const Grid& g = u1.grid();
  const double kunit = g.wavenumber_unit();
  SpectralField out(g);
  for_each_mode(g, [&](std::size_t idx, int a, int b, int k1, int k2) {
    if (touches_nyquist(g, a, b)) return;
    out.data()[idx] = Complex{0.0, kunit * k1} * u1.data()[idx] +
                      Complex{0.0, kunit * k2} * u2.data()[idx];
  });
  out.enforce_zero_mean();
  return out;
}

VelocityState leray_project(const SpectralField& u1, const SpectralField& u2) {
  require_same_grid(u1, u2);
  const Grid& g = u1.grid();
  VelocityState out(u1, u2);
  for_each_mode(g, [&](std::size_t idx, int, int, int k1, int k2) {
    const int k_sq = k1 * k1 + k2 * k2;
    if (k_sq == 0) return;
    const Complex v1 = u1.data()[idx];
    const Complex v2 = u2.data()[idx];
    const Complex k_dot = static_cast<double>(k1) * v1 + static_cast<double>(k2) * v2;
    out.u1.data()[idx] = v1 - (static_cast<double>(k1) / k_sq) * k_dot;
    out.u2.data()[idx] = v2 - (static_cast<double>(k2) / k_sq) * k_dot;
  });
  out.u1.enforce_zero_mean();
  out.u2.enforce_zero_mean();
  return out;
}

void dealias_in_place(SpectralField& f) {
  const Grid& g = f.grid();
  for_each_mode(g, [&](std::size_t idx, int, int, int k1, int k2) {
    if (!is_dealiased_mode(g, k1, k2)) f.data()[idx] = 0.0;
  });
  f.enforce_zero_mean();
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_in_place(out);
  return out;
}

SpectralField resample(const SpectralField& f, const Grid& target) {
  const Grid& src = f.grid();
  if (src.length() != target.length()) {
    throw std::invalid_argument("resample requires equal domain length");
  }
  SpectralField out(target);
  const int limit = std::min(src.n(), target.n()) / 2;
  for_each_mode(target, [&](std::size_t idx, int, int, int k1, int k2) {
    if (std::abs(k1) >= limit || k2 >= limit) return;
    out.data()[idx] = f.coeff(k1, k2);
  });
  out.enforce_zero_mean();
  return out;
}

double norm_l2(const SpectralField& f) {
  return f.grid().length() * std::sqrt(weighted_energy(f, [](int, int) { return 1.0; }));
}

double seminorm_h1(const SpectralField& f) {
  const double lam = f.grid().lambda1();
  return f.grid().length() *
         std::sqrt(weighted_energy(f, [lam](int k1, int k2) {
           return lam * static_cast<double>(k1 * k1 + k2 * k2);
         }));
}

double seminorm_h2(const SpectralField& f) {
  const double lam = f.grid().lambda1();
  return f.grid().length() *
         std::sqrt(weighted_energy(f, [lam](int k1, int k2) {
           const double k_sq = lam * static_cast<double>(k1 * k1 + k2 * k2);
           return k_sq * k_sq;
         }));
}

double inner_l2(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  const Grid& grid = f.grid();
  double sum = 0.0;
  for_each_mode(grid, [&](std::size_t idx, int, int b, int, int) {
    sum += mode_weight(grid, b) * (f.data()[idx] * std::conj(g.data()[idx])).real();
  });
  return grid.length() * grid.length() * sum;
}

double norm_l2(const VelocityState& u) {
  return std::hypot(norm_l2(u.u1), norm_l2(u.u2));
}

double seminorm_h1(const VelocityState& u) {
  return std::hypot(seminorm_h1(u.u1), seminorm_h1(u.u2));
}

double seminorm_h2(const VelocityState& u) {
  return std::hypot(seminorm_h2(u.u1), seminorm_h2(u.u2));
}

double inner_l2(const VelocityState& u, const VelocityState& v) {
  return inner_l2(u.u1, v.u1) + inner_l2(u.u2, v.u2);
}

double divergence_defect(const VelocityState& u) {
  const Grid& g = u.grid();
  const double kunit = g.wavenumber_unit();
  double worst = 0.0;
  for_each_mode(g, [&](std::size_t idx, int, int, int k1, int k2) {
    const Complex d = kunit * (static_cast<double>(k1) * u.u1.data()[idx] +
                               static_cast<double>(k2) * u.u2.data()[idx]);
    worst = std::max(worst, std::abs(d));
  });
  const double scale = kunit * norm_l2(u) / g.length();
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace nudge2d
