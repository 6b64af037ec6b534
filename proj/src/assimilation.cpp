#include "nudge2d/assimilation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nudge2d/random_fields.hpp"
#include "nudge2d/spectral_ops.hpp"

namespace nudge2d {

namespace {

constexpr std::size_t kConstantEnsembleSize = 20;
constexpr std::uint64_t kConstantEnsembleSeed = 20160;

double abs_mean(const VelocityState& s) {
  return std::max(std::abs(s.u1.data()[0]), std::abs(s.u2.data()[0]));
}

}  // namespace

InitialGuess parse_initial_guess(const std::string& name) {
  if (name == "zero") return InitialGuess::zero;
  if (name == "perturbed") return InitialGuess::perturbed;
  if (name == "exact") return InitialGuess::exact;
  throw std::invalid_argument("unknown U0 kind '" + name + "'");
}

std::string to_string(InitialGuess g) {
  switch (g) {
    case InitialGuess::zero: return "zero";
    case InitialGuess::perturbed: return "perturbed";
    case InitialGuess::exact: return "exact";
  }
  return "unknown";
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::failed: return "failed";
    case RunStatus::truncated: return "truncated";
  }
  return "unknown";
}

std::vector<std::string> AssimilationConfig::validation_errors() const {
  std::vector<std::string> errors;
  if (n < 8 || n % 2 != 0) errors.push_back("N must be even and >= 8");
  if (!(length > 0.0)) errors.push_back("L must be positive");
  if (!(nu > 0.0)) errors.push_back("nu must be positive");
  if (!(grashof > 0.0)) errors.push_back("grashof must be positive");
  if (!(dt > 0.0)) errors.push_back("dt must be positive");
  if (t_spin < 0.0) errors.push_back("t_spin must be non-negative");
  if (!(t_assim > 0.0)) errors.push_back("t_assim must be positive");
  if (mu < 0.0) errors.push_back("mu must be non-negative");
  if (mu * dt > 1.0) {
    std::ostringstream msg;
    msg << "explicit nudging stability requires mu*dt <= 1 (mu*dt = " << mu * dt << ")";
    errors.push_back(msg.str());
  }
  if (!(h > 0.0) || !(h < length)) errors.push_back("h must satisfy 0 < h < L");
  if (observer != ObserverKind::fourier_modes && h > 0.0 && std::lround(length / h) < 2) {
    errors.push_back("observer lattice needs M = round(L/h) >= 2");
  }
  if (observed_component != 1 && observed_component != 2) {
    errors.push_back("observed_component must be 1 or 2");
  }
  if (!(perturbation >= 0.0)) errors.push_back("perturbation must be non-negative");
  if (record_every < 1) errors.push_back("record_every must be >= 1");
  if (!(c > 0.0) || !(c_tilde > 0.0)) errors.push_back("c and c_tilde must be positive");
  return errors;
}

void AssimilationConfig::validate() const {
  const auto errors = validation_errors();
  if (errors.empty()) return;
  std::string msg = "invalid assimilation config:";
  for (const auto& e : errors) msg += "\n  - " + e;
  throw std::invalid_argument(msg);
}

CoupledStepper::CoupledStepper(const Forcing& forcing, Observer observer, double mu,
                               SolverParams params, int observed_component)
    : ref_(forcing, params),
      da_(forcing, params),
      observer_(std::move(observer)),
      mu_(mu),
      component_(observed_component) {
  if (component_ != 1 && component_ != 2) {
    throw std::invalid_argument("observed component must be 1 or 2");
  }
}

SpectralField CoupledStepper::nudging_term(const VelocityState& ref,
                                           const VelocityState& da) const {
  SpectralField term = observed_signal(observer_, da, component_);
  term -= observed_signal(observer_, ref, component_);
  term *= -mu_;
  return term;
}

void CoupledStepper::step(VelocityState& ref, VelocityState& da) {
  if (ref.time != da.time) throw std::invalid_argument("reference and assimilated times differ");
  ExtraForcing extra;
  if (component_ == 2) {
    extra.rhs2 = nudging_term(ref, da);
  } else {
    extra.rhs1 = nudging_term(ref, da);
  }
  ref = ref_.step(ref);
  da = da_.step(da, extra);
}

ErrorRow error_metrics(const VelocityState& ref, const VelocityState& da) {
  if (!(ref.grid() == da.grid())) throw std::invalid_argument("grid mismatch");
  if (ref.time != da.time) throw std::invalid_argument("time mismatch");
  const SpectralField e1 = ref.u1 - da.u1;
  const SpectralField e2 = ref.u2 - da.u2;
  ErrorRow row;
  row.t = ref.time;
  row.err_l2_u1 = norm_l2(e1);
  row.err_l2_u2 = norm_l2(e2);
  row.err_l2 = std::hypot(row.err_l2_u1, row.err_l2_u2);
  row.err_h1 = std::hypot(seminorm_h1(e1), seminorm_h1(e2));
  const double ref_norm = norm_l2(ref);
  const double da_norm = norm_l2(da);
  row.energy_ref = 0.5 * ref_norm * ref_norm;
  row.energy_da = 0.5 * da_norm * da_norm;
  return row;
}

bool resolution_condition(double mu, double c0, double h, double nu) {
  return mu * c0 * c0 * h * h <= nu;
}

AssimilationResult run_assimilation(const AssimilationConfig& cfg, const SampleHook& hook) {
  cfg.validate();
  AssimilationResult result;
  RunMetadata& meta = result.meta;

  const Grid grid(cfg.n, cfg.length);
  const Forcing forcing = make_forcing(grid, cfg.nu, cfg.grashof, cfg.forcing, cfg.forcing_seed);
  const Observer observer(cfg.observer, cfg.h, grid);

  bounds::PhysicalSetup setup;
  setup.nu = cfg.nu;
  setup.lambda1 = grid.lambda1();
  setup.f_norm = forcing.norm_l2;
  setup.c = cfg.c;
  setup.c_tilde = cfg.c_tilde;

  meta.lambda1 = grid.lambda1();
  meta.grashof = bounds::grashof(setup);
  for (std::size_t i = 0; i < bounds::kAllRegimes.size(); ++i) {
    meta.mu_min[i] = bounds::mu_min(setup, bounds::kAllRegimes[i]);
  }
  meta.h_effective = observer.effective_h();
  meta.observer_cells = observer.cells();
  meta.cutoff_index = observer.cutoff_index();
  SmoothSpectrum spectrum;
  spectrum.k_max = std::min(spectrum.k_max, cfg.n / 3);
  const auto ensemble =
      random_smooth_ensemble(grid, kConstantEnsembleSize, kConstantEnsembleSeed, spectrum);
  meta.c0_hat = measure_constants(observer, ensemble).c0_hat;
  meta.c0 = std::max(1.0, meta.c0_hat);
  meta.satisfies_paper = resolution_condition(cfg.mu, meta.c0, meta.h_effective, cfg.nu);

  const SolverParams params{cfg.nu, cfg.dt, cfg.t_spin + cfg.t_assim, cfg.dealias};

  VelocityState ref(grid);
  try {
    VelocityState u0 = random_velocity(grid, cfg.seed, spectrum);
    const double scale = cfg.nu * meta.grashof / norm_l2(u0);
    u0.u1 *= scale;
    u0.u2 *= scale;
    const SpinupResult spun = run_spinup(u0, forcing, params, cfg.t_spin);
    ref = spun.state;
    meta.spinup_max_grad = spun.max_grad_tail;
    meta.cfl_warnings += spun.cfl_warnings;
  } catch (const IntegrationFailure& e) {
    result.status = RunStatus::failed;
    result.failure = std::string("spin-up: ") + e.what();
    return result;
  }

  VelocityState da(grid);
  da.time = ref.time;
  if (cfg.initial_guess == InitialGuess::exact) {
    da = ref;
  } else if (cfg.initial_guess == InitialGuess::perturbed) {
    VelocityState p = random_velocity(grid, cfg.perturbation_seed, spectrum);
    const double scale = cfg.perturbation * norm_l2(ref) / norm_l2(p);
    da = VelocityState(ref.u1 + p.u1 * scale, ref.u2 + p.u2 * scale, ref.time);
  }
  const double grad_u0 = seminorm_h1(da);
  meta.initial_data_small =
      grad_u0 == 0.0 ||
      2.0 * std::log(grad_u0) <= bounds::log_initial_data_threshold(setup);

  CoupledStepper stepper(forcing, observer, cfg.mu, params, cfg.observed_component);
  const long steps = std::lround(cfg.t_assim / cfg.dt);

  auto record = [&] {
    const ErrorRow row = error_metrics(ref, da);
    if (!std::isfinite(row.err_l2) || !std::isfinite(row.err_h1) ||
        !std::isfinite(row.energy_da)) {
      throw IntegrationFailure("non-finite error norm at t=" + std::to_string(row.t));
    }
    result.series.push(row);
    meta.max_divergence =
        std::max({meta.max_divergence, divergence_defect(ref), divergence_defect(da)});
    meta.max_hermitian_defect =
        std::max({meta.max_hermitian_defect, ref.u1.hermitian_defect(), ref.u2.hermitian_defect(),
                  da.u1.hermitian_defect(), da.u2.hermitian_defect()});
    meta.max_abs_mean = std::max({meta.max_abs_mean, abs_mean(ref), abs_mean(da)});
    if (hook) hook(ref, da);
  };

  try {
    record();
    for (long s = 1; s <= steps; ++s) {
      stepper.step(ref, da);
      if (s % cfg.record_every == 0 || s == steps) record();
    }
  } catch (const IntegrationFailure& e) {
    result.status = result.series.empty() ? RunStatus::failed : RunStatus::truncated;
    result.failure = e.what();
  }
  meta.cfl_warnings += stepper.cfl_warnings();

  const FitWindow window = decaying_window(result.series);
  meta.fit_t_a = window.t_a;
  meta.fit_t_b = window.t_b;
  try {
    meta.fit = fit_decay_rate(result.series, window.t_a, window.t_b);
  } catch (const std::invalid_argument&) {
    meta.fit = DecayFit{};
  }
  return result;
}

}  // namespace nudge2d
