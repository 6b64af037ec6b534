#include "nudge2d/observer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nudge2d/spectral_ops.hpp"

namespace nudge2d {

namespace {

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

int wrap(int k, int m) { return ((k % m) + m) % m; }

constexpr double kCutoffSlack = 1e-12;

}  // namespace

ObserverKind parse_observer_kind(const std::string& name) {
  if (name == "fourier_modes") return ObserverKind::fourier_modes;
  if (name == "volume_elements") return ObserverKind::volume_elements;
  if (name == "nodal") return ObserverKind::nodal;
  throw std::invalid_argument("unknown observer kind '" + name + "'");
}

std::string to_string(ObserverKind kind) {
  switch (kind) {
    case ObserverKind::fourier_modes: return "fourier_modes";
    case ObserverKind::volume_elements: return "volume_elements";
    case ObserverKind::nodal: return "nodal";
  }
  return "unknown";
}

Observer::Observer(ObserverKind kind, double h, Grid grid)
    : kind_(kind), h_(h), grid_(std::move(grid)) {
  const double length = grid_.length();
  if (!(h > 0.0) || !(h < length)) {
    throw std::invalid_argument("observation resolution h must satisfy 0 < h < L");
  }
  if (kind_ == ObserverKind::fourier_modes) {
    effective_h_ = h_;
    cutoff_index_ = static_cast<int>(
        std::floor(length / (kTwoPi * h_) * (1.0 + kCutoffSlack)));
    return;
  }

  cells_ = static_cast<int>(std::lround(length / h_));
  if (cells_ < 2) throw std::invalid_argument("observer lattice needs M = round(L/h) >= 2");
  effective_h_ = length / cells_;

  const int n = grid_.n();
  sample_.resize(n);
  rebuild_.resize(n);
  for (int a = 0; a < n; ++a) {
    const double theta = 0.5 * grid_.wavenumber_unit() * grid_.signed_k1(a) * effective_h_;
    if (kind_ == ObserverKind::volume_elements) {
      // cell average of e^{ikx} over [x_p, x_p + h] is e^{ikx_p} e^{i theta} sinc(theta)
      sample_[a] = std::polar(sinc(theta), theta);
      rebuild_[a] = std::conj(sample_[a]);
    } else {
      // hat function of half-width h has Fourier factor sinc^2(k h / 2)
      sample_[a] = 1.0;
      rebuild_[a] = sinc(theta) * sinc(theta);
    }
  }
}

SpectralField Observer::apply(const SpectralField& f) const {
  if (!(f.grid() == grid_)) throw std::invalid_argument("observer grid mismatch");
  SpectralField out =
      kind_ == ObserverKind::fourier_modes ? apply_fourier(f) : apply_lattice(f);
  out.zero_nyquist();
  out.symmetrize();
  out.enforce_zero_mean();
  return out;
}

SpectralField Observer::apply_fourier(const SpectralField& f) const {
  SpectralField out(grid_);
  const double limit = 1.0 / (h_ * h_) * (1.0 + kCutoffSlack);
  const double lam = grid_.lambda1();
  for_each_mode(grid_, [&](std::size_t idx, int, int, int k1, int k2) {
    if (lam * static_cast<double>(k1 * k1 + k2 * k2) <= limit) {
      out.data()[idx] = f.data()[idx];
    }
  });
  return out;
}

// Sampling a trigonometric polynomial on the M-lattice aliases every k onto
// k mod M, so I_h f(k) = rebuild(k) * sum_{k' = k mod M} sample(k') f(k').
SpectralField Observer::apply_lattice(const SpectralField& f) const {
  const int m = cells_;
  std::vector<Complex> folded(static_cast<std::size_t>(m) * m, Complex{0.0, 0.0});
  auto cell = [&](int k1, int k2) -> Complex& {
    return folded[static_cast<std::size_t>(wrap(k1, m)) * m + wrap(k2, m)];
  };
  auto factor = [](const std::vector<Complex>& v, const Grid& g, int k) {
    return v[g.row_of(k)];
  };

  for_each_mode(grid_, [&](std::size_t idx, int a, int b, int k1, int k2) {
    if (grid_.is_nyquist_row(a) || grid_.is_nyquist_col(b)) return;
    const Complex c = f.data()[idx];
    cell(k1, k2) += factor(sample_, grid_, k1) * factor(sample_, grid_, k2) * c;
    if (k2 > 0) {
      cell(-k1, -k2) +=
          factor(sample_, grid_, -k1) * factor(sample_, grid_, -k2) * std::conj(c);
    }
  });

  SpectralField out(grid_);
  for_each_mode(grid_, [&](std::size_t idx, int a, int b, int k1, int k2) {
    if (grid_.is_nyquist_row(a) || grid_.is_nyquist_col(b)) return;
    out.data()[idx] =
        factor(rebuild_, grid_, k1) * factor(rebuild_, grid_, k2) * cell(k1, k2);
  });
  return out;
}

SpectralField observed_signal(const Observer& obs, const VelocityState& state, int component) {
  if (component == 1) return obs.apply(state.u1);
  if (component == 2) return obs.apply(state.u2);
  throw std::invalid_argument("observed component must be 1 or 2");
}

ConstantEstimate measure_constants(const Observer& obs,
                                   std::span<const SpectralField> ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("measure_constants: empty ensemble");
  const double h = obs.effective_h();
  ConstantEstimate est;
  est.mixed_bound = obs.is_type_two();

  struct Norms {
    double err_sq, grad_sq, lap_sq;
  };
  std::vector<Norms> norms;
  norms.reserve(ensemble.size());
  for (const auto& w : ensemble) {
    const double grad = seminorm_h1(w);
    if (!(grad > 0.0)) throw std::invalid_argument("measure_constants: zero field in ensemble");
    const double err = norm_l2(w - obs.apply(w));
    const double lap = seminorm_h2(w);
    norms.push_back({err * err, grad * grad, lap * lap});
  }

  if (!est.mixed_bound) {
    for (const auto& n : norms) {
      est.ratios.push_back(std::sqrt(n.err_sq) / (h * std::sqrt(n.grad_sq)));
    }
    est.c0_hat = *std::max_element(est.ratios.begin(), est.ratios.end());
    return est;
  }

  // Smallest c0 with err^2 <= c0^2 h^2 G / 2 + c0^4 h^4 D / 4, per field;
  // positive root of a quadratic in c0^2, rationalized.
  const double h2 = h * h;
  const double h4 = h2 * h2;
  for (const auto& n : norms) {
    const double half_b = 0.5 * h2 * n.grad_sq;
    const double x = 2.0 * n.err_sq / (half_b + std::sqrt(half_b * half_b + h4 * n.lap_sq * n.err_sq));
    est.c0_hat = std::max(est.c0_hat, std::sqrt(x));
  }
  const double c2 = est.c0_hat * est.c0_hat;
  for (const auto& n : norms) {
    const double bound = 0.5 * c2 * h2 * n.grad_sq + 0.25 * c2 * c2 * h4 * n.lap_sq;
    est.ratios.push_back(bound > 0.0 ? std::sqrt(n.err_sq / bound) : 0.0);
  }
  return est;
}

}  // namespace nudge2d
