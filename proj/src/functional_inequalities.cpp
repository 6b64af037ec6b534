#include "nudge2d/functional_inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nudge2d/spectral_ops.hpp"

namespace nudge2d::bounds {

double norm_l4(const SpectralField& f) {
  const Grid fine(2 * f.grid().n(), f.grid().length());
  const PhysicalField p = to_physical(resample(f, fine));
  double sum = 0.0;
  for (double v : p.values()) sum += v * v * v * v;
  const double cell = fine.length() * fine.length() / static_cast<double>(fine.physical_size());
  return std::pow(sum * cell, 0.25);
}

InequalityReport verify_functional_inequalities(std::span<const SpectralField> ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
  InequalityReport report;
  for (const auto& f : ensemble) {
    const double lam = f.grid().lambda1();
    const double l2 = norm_l2(f);
    const double h1 = seminorm_h1(f);
    const double h2 = seminorm_h2(f);
    if (!(l2 > 0.0)) throw std::invalid_argument("zero field in ensemble");
    const double l4 = norm_l4(f);
    InequalityRow row{lam * l2 * l2 / (h1 * h1), lam * h1 * h1 / (h2 * h2), l4 * l4 / (l2 * h1)};
    report.max_poincare1 = std::max(report.max_poincare1, row.poincare1);
    report.max_poincare2 = std::max(report.max_poincare2, row.poincare2);
    report.c_l_estimate = std::max(report.c_l_estimate, row.ladyzhenskaya);
    report.rows.push_back(row);
  }
  report.poincare_holds = report.max_poincare1 <= 1.0 + kPoincareSlack &&
                          report.max_poincare2 <= 1.0 + kPoincareSlack;
  return report;
}

}  // namespace nudge2d::bounds
