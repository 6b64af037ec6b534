#pragma once

#include "nudge2d/spectral_field.hpp"

namespace nudge2d {

/// Relative L2 error of the unforced Taylor-Green vortex after t_end on an
/// N x N grid with L = 2 pi.
double taylor_green_error(int n, double nu, double dt, double t_end);

/// Same vortex driven by the steady force amp * Phi, Phi the t = 0 profile.
/// The nonlinear term is a pure gradient, so the amplitude obeys
/// a' = -2 nu a + amp with a(0) = 1, and the discrete error is purely
/// temporal. Used for measuring the order of the time stepper.
double forced_taylor_green_error(int n, double nu, double dt, double t_end, double amp);

/// log2(err(dt) / err(dt / 2)).
double observed_order(double err_dt, double err_half_dt);

}  // namespace nudge2d
