#pragma once

#include <cstddef>
#include <limits>

#include "nudge2d/error_series.hpp"

namespace nudge2d {

struct DecayFit {
  bool defined = false;  ///< false when the window holds a non-positive error
  double rate = std::numeric_limits<double>::quiet_NaN();  ///< slope of log(err_l2)
  double r_squared = std::numeric_limits<double>::quiet_NaN();
  std::size_t samples = 0;
};

inline constexpr std::size_t kMinFitSamples = 10;

/// Least-squares slope of log(err_l2) against t over samples with
/// t_a <= t <= t_b. Throws std::invalid_argument with fewer than 10 samples.
DecayFit fit_decay_rate(const ErrorSeries& series, double t_a, double t_b);

struct FitWindow {
  double t_a = 0.0;
  double t_b = 0.0;
};

/// Window skipping the first 10% of the run and ending at the last sample
/// whose err_l2 exceeds the round-off floor floor_rel * max(err_l2[0], energy scale).
FitWindow decaying_window(const ErrorSeries& series, double floor_rel = 1e-12);

}  // namespace nudge2d
