#include "nudge2d/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nudge2d::bounds {

namespace {

constexpr double kLogSpaceThreshold = 3.5;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

BoundValue direct(double value) {
  BoundValue out;
  out.value = value;
  out.log_value = value > 0.0 ? std::log(value) : kNegInf;
  return out;
}

BoundValue from_log(double log_value) {
  BoundValue out;
  out.log_value = log_value;
  out.value = std::exp(log_value);  // +inf past the double range
  out.log_scale = true;
  return out;
}

BoundValue clamped(double raw, const std::string& why) {
  BoundValue out = direct(0.0);
  out.warning = why + " (raw value " + std::to_string(raw) + ", clamped to 0)";
  return out;
}

// log(1 + (1 + G^2 e^{G^4})(1 + e^{G^4} + G^4 e^{G^4})), valid for G > 0.
double log_k_bracket(double g) {
  const double e4 = g * g * g * g;
  if (g <= kLogSpaceThreshold) {
    const double ex = std::exp(e4);
    return std::log(1.0 + (1.0 + g * g * ex) * (1.0 + ex + e4 * ex));
  }
  const double lg = std::log(g);
  const double first = log_add(0.0, 2.0 * lg + e4);
  const double second = log_add(0.0, e4 + std::log1p(e4));
  return log_add(0.0, first + second);
}

double k_bracket(double g) {
  const double e4 = g * g * g * g;
  const double ex = std::exp(e4);
  return 1.0 + (1.0 + g * g * ex) * (1.0 + ex + e4 * ex);
}

}  // namespace

void PhysicalSetup::validate() const {
  if (!(nu > 0.0) || !(lambda1 > 0.0) || !(c > 0.0) || !(c_tilde > 0.0) || !(c0 > 0.0)) {
    throw std::invalid_argument("physical setup: nu, lambda1, c, c_tilde, c0 must be positive");
  }
  if (!(f_norm >= 0.0)) throw std::invalid_argument("physical setup: ||f|| must be >= 0");
}

double grashof(const PhysicalSetup& s) {
  s.validate();
  return s.f_norm / (s.nu * s.nu * s.lambda1);
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::typeI_dirichlet: return "typeI_dirichlet";
    case Regime::typeI_periodic: return "typeI_periodic";
    case Regime::typeII_dirichlet: return "typeII_dirichlet";
    case Regime::typeII_periodic: return "typeII_periodic";
  }
  return "unknown";
}

BoundValue k_of_g(const PhysicalSetup& s) {
  const double g = grashof(s);
  if (g == 0.0) return direct(0.0);
  if (g <= kLogSpaceThreshold) return direct(s.c * g * g * k_bracket(g));
  return from_log(std::log(s.c) + 2.0 * std::log(g) + log_k_bracket(g));
}

BoundValue mu_min(const PhysicalSetup& s, Regime regime) {
  const double g = grashof(s);
  const double scale = 2.0 * s.c * s.nu * s.lambda1;
  switch (regime) {
    case Regime::typeI_dirichlet:
    case Regime::typeI_periodic: {
      if (g == 0.0) return clamped(0.0, "log(G) undefined at G = 0");
      const double quartic = regime == Regime::typeI_dirichlet ? g * g * g * g : 0.0;
      const double bracket = 1.0 + std::log(g) + quartic;
      const double raw = scale * bracket * g * g;
      if (bracket < 0.0) return clamped(raw, "negative bound for G < 1");
      return direct(raw);
    }
    case Regime::typeII_periodic:
      return direct(scale * (g * g + g * g * g));
    case Regime::typeII_dirichlet: {
      const BoundValue k = k_of_g(s);
      if (k.value <= 1.0) {
        const double raw = k.value > 0.0 ? scale * k.value * std::log(k.value) : 0.0;
        return clamped(raw, "K log K <= 0 for K <= 1");
      }
      if (!k.log_scale) return direct(scale * k.value * std::log(k.value));
      return from_log(std::log(scale) + k.log_value + std::log(k.log_value));
    }
  }
  throw std::invalid_argument("unknown regime");
}

double h_max(const PhysicalSetup& s, double mu) {
  s.validate();
  if (!(mu > 0.0)) throw std::invalid_argument("h_max requires mu > 0");
  return std::sqrt(s.nu / (mu * s.c0 * s.c0));
}

AttractorBounds attractor_bounds(const PhysicalSetup& s, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("attractor bounds require tau > 0");
  const double g = grashof(s);
  const double nu = s.nu;
  const double lam = s.lambda1;
  const double g2 = g * g;
  const double e4 = g2 * g2;
  const bool log_space = g > kLogSpaceThreshold;

  AttractorBounds b;
  b.dirichlet_l2 = direct(2.0 * nu * nu * g2);
  b.dirichlet_int_h1 = direct(2.0 * (1.0 + tau * nu * lam) * nu * g2);
  b.periodic_h1 = direct(2.0 * nu * nu * lam * g2);
  b.periodic_int_h2 = direct(2.0 * (1.0 + tau * nu * lam) * nu * lam * g2);
  b.periodic_h2 = direct(s.c_tilde * nu * nu * lam * lam * std::pow(1.0 + g, 4));

  if (g == 0.0) {
    b.dirichlet_h1 = direct(0.0);
    b.dirichlet_int_h2 = direct(0.0);
    b.dirichlet_h2 = direct(0.0);
  } else if (!log_space) {
    const double ex = std::exp(e4);
    b.dirichlet_h1 = direct(s.c_tilde * nu * nu * lam * g2 * ex);
    b.dirichlet_int_h2 = direct((s.c_tilde * ex + tau * nu * lam) * nu * lam * g2);
    b.dirichlet_h2 = direct(s.c_tilde * nu * nu * lam * lam * g2 * k_bracket(g));
  } else {
    const double lg2 = 2.0 * std::log(g);
    b.dirichlet_h1 = from_log(std::log(s.c_tilde * nu * nu * lam) + lg2 + e4);
    b.dirichlet_int_h2 = from_log(log_add(std::log(s.c_tilde) + e4, std::log(tau * nu * lam)) +
                                  std::log(nu * lam) + lg2);
    b.dirichlet_h2 = from_log(std::log(s.c_tilde * nu * nu * lam * lam) + lg2 + log_k_bracket(g));
  }
  return b;
}

double log_initial_data_threshold(const PhysicalSetup& s) {
  const double g = grashof(s);
  if (g == 0.0) return kNegInf;
  return std::log(s.c_tilde * s.nu * s.nu * s.lambda1) + 2.0 * std::log(g) + g * g * g * g;
}

PhiMinCheck phi_min_check(double gamma, int samples) {
  if (!(gamma > 0.0)) throw std::invalid_argument("phi_min_check requires gamma > 0");
  if (samples < 2) throw std::invalid_argument("phi_min_check needs at least 2 samples");
  auto phi = [gamma](double r) { return r - gamma * (1.0 + std::log(r)); };

  PhiMinCheck out;
  out.analytic_bound = -gamma * std::log(gamma);
  const double r_max = std::max(10.0 * gamma, 100.0);
  const double step = (r_max - 1.0) / (samples - 1);
  out.grid_min = phi(1.0);
  out.argmin = 1.0;
  for (int i = 1; i < samples; ++i) {
    const double r = 1.0 + i * step;
    const double v = phi(r);
    if (v < out.grid_min) {
      out.grid_min = v;
      out.argmin = r;
    }
  }
  if (gamma >= 1.0 && gamma <= r_max && phi(gamma) < out.grid_min) {
    out.grid_min = phi(gamma);
    out.argmin = gamma;
  }
  out.holds = out.grid_min >= out.analytic_bound - 1e-9;
  return out;
}

BoundsReport bounds_report(const PhysicalSetup& s, double mu, double tau) {
  BoundsReport r;
  r.setup = s;
  r.grashof = grashof(s);
  for (std::size_t i = 0; i < kAllRegimes.size(); ++i) r.mu_min[i] = mu_min(s, kAllRegimes[i]);
  r.k = k_of_g(s);
  r.mu = mu;
  r.h_max = mu > 0.0 ? h_max(s, mu) : std::numeric_limits<double>::quiet_NaN();
  r.tau = tau;
  r.attractor = attractor_bounds(s, tau);
  return r;
}

}  // namespace nudge2d::bounds
