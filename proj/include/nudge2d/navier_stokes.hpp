#pragma once

#include <optional>
#include <stdexcept>

#include "nudge2d/forcing.hpp"
#include "nudge2d/spectral_field.hpp"

namespace nudge2d {

/// Thrown when a step produces non-finite values.
class IntegrationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when dt max|u| N / L exceeds the hard CFL limit.
class CflViolation : public IntegrationFailure {
 public:
  using IntegrationFailure::IntegrationFailure;
};

inline constexpr double kCflWarn = 0.5;
inline constexpr double kCflLimit = 1.0;

struct SolverParams {
  double nu = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  bool dealias = true;

  void validate() const;
};

struct NonlinearTerm {
  SpectralField n1;
  SpectralField n2;
  double max_speed = 0.0;  ///< max over collocation points of |u|
};

/// Convective term ((u.grad) u1, (u.grad) u2), pseudospectral, not projected.
/// With dealias set, inputs and outputs are truncated by the 2/3 rule.
NonlinearTerm nonlinear_term(const VelocityState& state, bool dealias = true);

/// Extra explicit right-hand side terms, e.g. a nudging force.
struct ExtraForcing {
  std::optional<SpectralField> rhs1;
  std::optional<SpectralField> rhs2;
};

/// Integrating-factor Adams-Bashforth 2 stepper for the periodic 2D NSE.
///
/// The viscous term is integrated exactly per mode; forcing, convection and
/// any extra terms are explicit and Leray-projected together. The first step
/// after construction or reset() is an integrating-factor Euler step.
class ImexStepper {
 public:
  ImexStepper(Forcing forcing, SolverParams params);

  VelocityState step(const VelocityState& state, const ExtraForcing& extra = {});
  void reset() { previous_rhs_.reset(); }

  const SolverParams& params() const { return params_; }
  const Forcing& forcing() const { return forcing_; }
  int cfl_warnings() const { return cfl_warnings_; }
  double last_cfl() const { return last_cfl_; }

 private:
  Forcing forcing_;
  SolverParams params_;
  std::vector<double> decay_;  // exp(-nu |k|^2 dt) per stored mode
  std::optional<VelocityState> previous_rhs_;
  int cfl_warnings_ = 0;
  double last_cfl_ = 0.0;
};

struct SpinupResult {
  VelocityState state;
  double max_grad_tail = 0.0;  ///< max ||grad u|| over the last 20% of spin-up
  int cfl_warnings = 0;
};

/// Integrates the reference system for t_spin and resets the clock to 0.
SpinupResult run_spinup(const VelocityState& u0, const Forcing& forcing,
                        const SolverParams& params, double t_spin);

/// (-cos x sin y, sin x cos y) e^{-2 nu t}; requires L = 2 pi.
VelocityState taylor_green_exact(const Grid& grid, double nu, double t);

}  // namespace nudge2d
