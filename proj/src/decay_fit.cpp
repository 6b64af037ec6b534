#include "nudge2d/decay_fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nudge2d {

void ErrorSeries::push(const ErrorRow& r) {
  t.push_back(r.t);
  err_l2.push_back(r.err_l2);
  err_h1.push_back(r.err_h1);
  err_l2_u1.push_back(r.err_l2_u1);
  err_l2_u2.push_back(r.err_l2_u2);
  energy_ref.push_back(r.energy_ref);
  energy_da.push_back(r.energy_da);
}

ErrorRow ErrorSeries::row(std::size_t i) const {
  return {t.at(i), err_l2.at(i), err_h1.at(i), err_l2_u1.at(i),
          err_l2_u2.at(i), energy_ref.at(i), energy_da.at(i)};
}

DecayFit fit_decay_rate(const ErrorSeries& series, double t_a, double t_b) {
  std::vector<double> xs;
  std::vector<double> ys;
  bool non_positive = false;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.t[i] < t_a || series.t[i] > t_b) continue;
    if (!(series.err_l2[i] > 0.0)) {
      non_positive = true;
      continue;
    }
    xs.push_back(series.t[i]);
    ys.push_back(std::log(series.err_l2[i]));
  }
  DecayFit fit;
  fit.samples = xs.size() + (non_positive ? 1 : 0);
  if (fit.samples < kMinFitSamples) {
    throw std::invalid_argument("decay fit needs at least 10 samples in the window");
  }
  if (non_positive) return fit;

  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("decay fit window has no time extent");
  fit.defined = true;
  fit.samples = xs.size();
  fit.rate = sxy / sxx;
  // A flat series is fitted exactly by rate 0.
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

FitWindow decaying_window(const ErrorSeries& series, double floor_rel) {
  FitWindow w;
  if (series.empty()) return w;
  const double t0 = series.t.front();
  const double t1 = series.t.back();
  w.t_a = t0 + 0.1 * (t1 - t0);
  const double scale = std::max(series.err_l2.front(),
                                std::sqrt(2.0 * std::max(series.energy_ref.front(), 0.0)));
  const double floor = floor_rel * scale;
  w.t_b = w.t_a;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.err_l2[i] > floor) w.t_b = series.t[i];
  }
  return w;
}

}  // namespace nudge2d
