#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nudge2d/bounds.hpp"
#include "nudge2d/decay_fit.hpp"
#include "nudge2d/error_series.hpp"
#include "nudge2d/forcing.hpp"
#include "nudge2d/navier_stokes.hpp"
#include "nudge2d/observer.hpp"

namespace nudge2d {

enum class InitialGuess { zero, perturbed, exact };

InitialGuess parse_initial_guess(const std::string& name);
std::string to_string(InitialGuess g);

struct AssimilationConfig {
  // grid
  int n = 64;
  double length = kTwoPi;
  // physics
  double nu = 0.0;
  ForcingKind forcing = ForcingKind::kolmogorov;
  double grashof = 1.0;
  std::uint64_t forcing_seed = 0;
  // numerics
  double dt = 0.0;
  double t_spin = 0.0;
  double t_assim = 0.0;
  bool dealias = true;
  std::uint64_t seed = 1;  ///< reference initial condition
  // algorithm
  double mu = 0.0;
  ObserverKind observer = ObserverKind::fourier_modes;
  double h = 0.0;
  int observed_component = 2;
  InitialGuess initial_guess = InitialGuess::zero;
  double perturbation = 1e-3;  ///< relative size for InitialGuess::perturbed
  std::uint64_t perturbation_seed = 2;
  int record_every = 10;
  // theory constants
  double c = 1.0;
  double c_tilde = 1.0;

  double lambda1() const { return (kTwoPi / length) * (kTwoPi / length); }
  /// Collects every violated constraint; empty when valid.
  std::vector<std::string> validation_errors() const;
  void validate() const;
};

/// Nudged step for the assimilated system: rhs = -mu (I_h(U_c) - I_h(u_c))
/// on the observed component c, built from observed_signal() of each state.
class CoupledStepper {
 public:
  CoupledStepper(const Forcing& forcing, Observer observer, double mu, SolverParams params,
                 int observed_component = 2);

  /// Advances both states by one step; ref is never modified by da.
  void step(VelocityState& ref, VelocityState& da);
  SpectralField nudging_term(const VelocityState& ref, const VelocityState& da) const;

  const Observer& observer() const { return observer_; }
  int cfl_warnings() const { return ref_.cfl_warnings() + da_.cfl_warnings(); }

 private:
  ImexStepper ref_;
  ImexStepper da_;
  Observer observer_;
  double mu_;
  int component_;
};

/// Synchronization errors of one (ref, da) pair.
ErrorRow error_metrics(const VelocityState& ref, const VelocityState& da);

enum class RunStatus { ok, failed, truncated };
std::string to_string(RunStatus s);

/// Everything a run reports besides the series.
struct RunMetadata {
  double grashof = 0.0;
  double lambda1 = 0.0;
  std::array<bounds::BoundValue, 4> mu_min;
  double h_effective = 0.0;
  int observer_cells = 0;
  int cutoff_index = -1;
  double c0_hat = 0.0;
  double c0 = 1.0;  ///< max(1, c0_hat), the value used in the h condition
  bool satisfies_paper = false;  ///< mu c0^2 h_eff^2 <= nu
  bool initial_data_small = false;
  double spinup_max_grad = 0.0;
  double max_divergence = 0.0;  ///< over both trajectories, every sample
  double max_hermitian_defect = 0.0;
  double max_abs_mean = 0.0;
  int cfl_warnings = 0;
  DecayFit fit;
  double fit_t_a = 0.0;
  double fit_t_b = 0.0;
};

struct AssimilationResult {
  ErrorSeries series;
  RunStatus status = RunStatus::ok;
  std::string failure;
  RunMetadata meta;
};

/// Called after every recorded sample with the two states.
using SampleHook = std::function<void(const VelocityState& ref, const VelocityState& da)>;

/// mu c0^2 h^2 <= nu.
bool resolution_condition(double mu, double c0, double h, double nu);

/// Spin-up, co-integration and error recording for one configuration.
AssimilationResult run_assimilation(const AssimilationConfig& cfg, const SampleHook& hook = {});

}  // namespace nudge2d
