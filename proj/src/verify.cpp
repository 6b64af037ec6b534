#include "nudge2d/experiment.hpp"
#include "nudge2d/functional_inequalities.hpp"
#include "nudge2d/random_fields.hpp"
#include "nudge2d/spectral_ops.hpp"
#include "nudge2d/verification.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace nudge2d {

namespace {

double relative_error(const VelocityState& got, const VelocityState& want) {
  const VelocityState diff(got.u1 - want.u1, got.u2 - want.u2, got.time);
  return norm_l2(diff) / norm_l2(want);
}

VelocityState integrate(ImexStepper& stepper, VelocityState state, double dt, double t_end) {
  const long steps = std::lround(t_end / dt);
  for (long s = 0; s < steps; ++s) state = stepper.step(state);
  return state;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

}  // namespace

double taylor_green_error(int n, double nu, double dt, double t_end) {
  const Grid grid(n, kTwoPi);
  ImexStepper stepper(zero_forcing(grid), SolverParams{nu, dt, t_end, true});
  const VelocityState end = integrate(stepper, taylor_green_exact(grid, nu, 0.0), dt, t_end);
  return relative_error(end, taylor_green_exact(grid, nu, end.time));
}

double forced_taylor_green_error(int n, double nu, double dt, double t_end, double amp) {
  const Grid grid(n, kTwoPi);
  const VelocityState phi = taylor_green_exact(grid, nu, 0.0);
  ImexStepper stepper(Forcing(phi.u1 * amp, phi.u2 * amp), SolverParams{nu, dt, t_end, true});
  const VelocityState end = integrate(stepper, phi, dt, t_end);
  const double steady = amp / (2.0 * nu);
  const double a = steady + (1.0 - steady) * std::exp(-2.0 * nu * end.time);
  return relative_error(end, VelocityState(phi.u1 * a, phi.u2 * a, end.time));
}

double observed_order(double err_dt, double err_half_dt) { return std::log2(err_dt / err_half_dt); }

VerifyReport cmd_verify(std::ostream& log) {
  VerifyReport report;
  auto add = [&](std::string name, bool ok, std::string detail) {
    log << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    const double err = taylor_green_error(64, 0.1, 1e-3, 1.0);
    add("taylor_green_accuracy", err <= 1e-5, "relative L2 error " + fmt(err));
    const double e1 = forced_taylor_green_error(16, 0.1, 2e-3, 1.0, 1.0);
    const double e2 = forced_taylor_green_error(16, 0.1, 1e-3, 1.0, 1.0);
    const double order = observed_order(e1, e2);
    add("time_order", order >= 1.8, "forced vortex, observed order " + fmt(order));
  }

  {
    const Grid grid(64, kTwoPi);
    const auto ensemble = random_smooth_ensemble(grid, 50, 11);
    const auto rep = bounds::verify_functional_inequalities(ensemble);
    SpectralField lowest(grid);
    lowest.set_mode(1, 0, {0.5, 0.0});
    const std::vector<SpectralField> single{lowest};
    const auto low = bounds::verify_functional_inequalities(single);
    const bool tight = std::abs(low.max_poincare1 - 1.0) <= 1e-12 &&
                       std::abs(low.max_poincare2 - 1.0) <= 1e-12;
    add("poincare", rep.poincare_holds && tight,
        "max ratios " + fmt(rep.max_poincare1) + ", " + fmt(rep.max_poincare2) +
            "; lowest mode " + fmt(low.max_poincare1));
  }

  {
    bool ok = true;
    double worst = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const auto check = bounds::phi_min_check(100.0 * i / 200.0 - 0.25);
      ok = ok && check.holds;
      worst = std::min(worst, check.grid_min - check.analytic_bound);
    }
    const auto at_one = bounds::phi_min_check(1.0);
    const auto at_e = bounds::phi_min_check(std::numbers::e);
    const bool tight = at_one.grid_min == 0.0 && std::abs(at_e.grid_min + std::numbers::e) <= 1e-12;
    add("phi_minimum", ok && tight, "smallest margin " + fmt(worst));
  }

  {
    const Grid grid(64, kTwoPi);
    const auto ensemble = random_smooth_ensemble(grid, 20, 20160);
    bool ok = true;
    std::string detail;
    for (ObserverKind kind :
         {ObserverKind::fourier_modes, ObserverKind::volume_elements, ObserverKind::nodal}) {
      const double coarse = kind == ObserverKind::fourier_modes ? 0.25 : kTwoPi / 8;
      const double c_coarse = measure_constants(Observer(kind, coarse, grid), ensemble).c0_hat;
      const double c_fine = measure_constants(Observer(kind, coarse / 2, grid), ensemble).c0_hat;
      const double drift = std::max(c_coarse, c_fine) / std::min(c_coarse, c_fine);
      ok = ok && std::isfinite(drift) && drift <= 2.0;
      detail += to_string(kind) + " drift " + fmt(drift) + "; ";
    }
    add("observer_constants", ok, detail);
  }

  {
    AssimilationConfig cfg;
    cfg.n = 32;
    cfg.nu = 0.1;
    cfg.dt = 0.01;
    cfg.t_spin = 1.0;
    cfg.t_assim = 2.0;
    cfg.mu = 20.0;
    cfg.h = 0.25;
    cfg.record_every = 5;
    const AssimilationResult r = run_assimilation(cfg);
    const auto& m = r.meta;
    const bool ok = r.status == RunStatus::ok && m.max_divergence <= 1e-10 &&
                    m.max_abs_mean == 0.0 && m.max_hermitian_defect == 0.0;
    add("invariants", ok,
        "divergence " + fmt(m.max_divergence) + ", mean " + fmt(m.max_abs_mean) +
            ", hermitian " + fmt(m.max_hermitian_defect));
  }

  return report;
}

}  // namespace nudge2d
