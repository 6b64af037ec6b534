#pragma once

#include <cstddef>
#include <vector>

namespace nudge2d {

/// One sample of the synchronization error u - U. Energies are ||.||^2 / 2.
struct ErrorRow {
  double t = 0.0;
  double err_l2 = 0.0;
  double err_h1 = 0.0;
  double err_l2_u1 = 0.0;
  double err_l2_u2 = 0.0;
  double energy_ref = 0.0;
  double energy_da = 0.0;
};

struct ErrorSeries {
  std::vector<double> t;
  std::vector<double> err_l2;
  std::vector<double> err_h1;
  std::vector<double> err_l2_u1;
  std::vector<double> err_l2_u2;
  std::vector<double> energy_ref;
  std::vector<double> energy_da;

  void push(const ErrorRow& row);
  ErrorRow row(std::size_t i) const;
  std::size_t size() const { return t.size(); }
  bool empty() const { return t.empty(); }
};

}  // namespace nudge2d
