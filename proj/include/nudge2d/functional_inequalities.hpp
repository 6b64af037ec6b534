#pragma once

#include <span>
#include <vector>

#include "nudge2d/spectral_field.hpp"

namespace nudge2d::bounds {

inline constexpr double kPoincareSlack = 1e-10;

struct InequalityRow {
  double poincare1 = 0.0;      ///< lambda1 ||phi||^2 / ||grad phi||^2, <= 1
  double poincare2 = 0.0;      ///< lambda1 ||grad phi||^2 / ||lap phi||^2, <= 1
  double ladyzhenskaya = 0.0;  ///< ||phi||_{L4}^2 / (||phi|| ||grad phi||)
};

struct InequalityReport {
  std::vector<InequalityRow> rows;
  double max_poincare1 = 0.0;
  double max_poincare2 = 0.0;
  double c_l_estimate = 0.0;  ///< max Ladyzhenskaya ratio
  bool poincare_holds = false;
};

/// ||phi||_{L4} by quadrature on a grid refined 2x in each direction.
double norm_l4(const SpectralField& f);

/// Checks both Poincare inequalities and estimates the Ladyzhenskaya constant.
InequalityReport verify_functional_inequalities(std::span<const SpectralField> ensemble);

}  // namespace nudge2d::bounds
