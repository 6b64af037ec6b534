#include "nudge2d/navier_stokes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nudge2d/spectral_ops.hpp"

namespace nudge2d {

void SolverParams::validate() const {
  if (!(nu > 0.0)) throw std::invalid_argument("viscosity nu must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("time step dt must be positive");
  if (t_end < 0.0) throw std::invalid_argument("t_end must be non-negative");
}

NonlinearTerm nonlinear_term(const VelocityState& state, bool dealias_flag) {
  const Grid& g = state.grid();
  SpectralField u1 = state.u1;
  SpectralField u2 = state.u2;
  if (dealias_flag) {
    dealias_in_place(u1);
    dealias_in_place(u2);
  }
  const auto [d1x, d1y] = gradient(u1);
  const auto [d2x, d2y] = gradient(u2);

  const PhysicalField pu1 = to_physical(u1);
  const PhysicalField pu2 = to_physical(u2);
  const PhysicalField p1x = to_physical(d1x);
  const PhysicalField p1y = to_physical(d1y);
  const PhysicalField p2x = to_physical(d2x);
  const PhysicalField p2y = to_physical(d2y);

  PhysicalField c1(g);
  PhysicalField c2(g);
  double max_speed_sq = 0.0;
  const auto a = pu1.values();
  const auto b = pu2.values();
  for (std::size_t i = 0; i < g.physical_size(); ++i) {
    c1.values()[i] = a[i] * p1x.values()[i] + b[i] * p1y.values()[i];
    c2.values()[i] = a[i] * p2x.values()[i] + b[i] * p2y.values()[i];
    max_speed_sq = std::max(max_speed_sq, a[i] * a[i] + b[i] * b[i]);
  }

  NonlinearTerm out{to_spectral(c1), to_spectral(c2), std::sqrt(max_speed_sq)};
  if (dealias_flag) {
    dealias_in_place(out.n1);
    dealias_in_place(out.n2);
  }
  return out;
}

ImexStepper::ImexStepper(Forcing forcing, SolverParams params)
    : forcing_(std::move(forcing)), params_(params) {
  params_.validate();
  const Grid& g = forcing_.grid();
  decay_.resize(g.spectral_size());
  const double lam = g.lambda1();
  for_each_mode(g, [&](std::size_t idx, int, int, int k1, int k2) {
    decay_[idx] = std::exp(-params_.nu * lam * static_cast<double>(k1 * k1 + k2 * k2) *
                           params_.dt);
  });
}

VelocityState ImexStepper::step(const VelocityState& state, const ExtraForcing& extra) {
  const Grid& g = state.grid();
  if (!(g == forcing_.grid())) throw std::invalid_argument("grid mismatch");

  NonlinearTerm conv = nonlinear_term(state, params_.dealias);
  last_cfl_ = params_.dt * conv.max_speed * g.n() / g.length();
  if (!std::isfinite(last_cfl_)) {
    throw IntegrationFailure("non-finite velocity at t=" + std::to_string(state.time));
  }
  if (last_cfl_ > kCflLimit) {
    std::ostringstream msg;
    msg << "CFL number " << last_cfl_ << " exceeds " << kCflLimit << " at t=" << state.time;
    throw CflViolation(msg.str());
  }
  if (last_cfl_ > kCflWarn) ++cfl_warnings_;

  SpectralField r1 = forcing_.f1 - conv.n1;
  SpectralField r2 = forcing_.f2 - conv.n2;
  if (extra.rhs1) r1 += *extra.rhs1;
  if (extra.rhs2) r2 += *extra.rhs2;
  VelocityState rhs = leray_project(r1, r2);

  VelocityState next(g);
  const double dt = params_.dt;
  const auto u1 = state.u1.data();
  const auto u2 = state.u2.data();
  const auto q1 = rhs.u1.data();
  const auto q2 = rhs.u2.data();
  auto n1 = next.u1.data();
  auto n2 = next.u2.data();
  if (previous_rhs_) {
    const auto p1 = previous_rhs_->u1.data();
    const auto p2 = previous_rhs_->u2.data();
    for (std::size_t i = 0; i < decay_.size(); ++i) {
      const double e = decay_[i];
      n1[i] = e * u1[i] + dt * (1.5 * e * q1[i] - 0.5 * e * e * p1[i]);
      n2[i] = e * u2[i] + dt * (1.5 * e * q2[i] - 0.5 * e * e * p2[i]);
    }
  } else {
    for (std::size_t i = 0; i < decay_.size(); ++i) {
      n1[i] = decay_[i] * (u1[i] + dt * q1[i]);
      n2[i] = decay_[i] * (u2[i] + dt * q2[i]);
    }
  }
  next.u1.enforce_zero_mean();
  next.u2.enforce_zero_mean();
  next.time = state.time + dt;
  if (!next.u1.all_finite() || !next.u2.all_finite()) {
    throw IntegrationFailure("non-finite state at t=" + std::to_string(next.time));
  }
  previous_rhs_ = std::move(rhs);
  return next;
}

SpinupResult run_spinup(const VelocityState& u0, const Forcing& forcing,
                        const SolverParams& params, double t_spin) {
  if (t_spin < 0.0) throw std::invalid_argument("spin-up time must be non-negative");
  ImexStepper stepper(forcing, params);
  const long steps = std::lround(t_spin / params.dt);
  const long tail_start = steps - std::max<long>(1, steps / 5);
  SpinupResult result{u0, 0.0, 0};
  if (steps == 0) result.max_grad_tail = seminorm_h1(u0);
  for (long s = 0; s < steps; ++s) {
    result.state = stepper.step(result.state);
    if (s >= tail_start) {
      result.max_grad_tail = std::max(result.max_grad_tail, seminorm_h1(result.state));
    }
  }
  result.state.time = 0.0;
  result.cfl_warnings = stepper.cfl_warnings();
  return result;
}

VelocityState taylor_green_exact(const Grid& grid, double nu, double t) {
  if (std::abs(grid.length() - kTwoPi) > 1e-12 * kTwoPi) {
    throw std::invalid_argument("Taylor-Green solution requires L = 2 pi");
  }
  const double amp = std::exp(-2.0 * nu * t);
  VelocityState out(grid);
  // -cos x sin y -> coefficient i sgn(k2) / 4 on k = (+-1, +-1)
  //  sin x cos y -> coefficient -i sgn(k1) / 4
  for (int k1 : {-1, 1}) {
    out.u1.set_mode(k1, 1, Complex{0.0, 0.25 * amp});
    out.u2.set_mode(k1, 1, Complex{0.0, -0.25 * k1 * amp});
  }
  out.time = t;
  return out;
}

}  // namespace nudge2d
