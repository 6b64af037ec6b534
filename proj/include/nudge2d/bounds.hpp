#pragma once

#include <array>
#include <string>

namespace nudge2d::bounds {

/// Physical parameters entering the closed-form conditions. The constants
/// c, c_tilde and c0 are unknown in theory and default to 1.
struct PhysicalSetup {
  double nu = 1.0;
  double lambda1 = 1.0;
  double f_norm = 0.0;  ///< ||f||_{L2}
  double c = 1.0;
  double c_tilde = 1.0;
  double c0 = 1.0;

  /// Throws unless nu, lambda1, c, c_tilde, c0 > 0 and f_norm >= 0.
  void validate() const;
};

/// A bound that may be too large for a double. log_value is always the
/// natural log of the (unclamped, positive) value when one exists.
struct BoundValue {
  double value = 0.0;
  double log_value = 0.0;
  bool log_scale = false;  ///< computed in log space
  std::string warning;     ///< non-empty when the formula was clamped
};

/// G = ||f|| / (nu^2 lambda1).
double grashof(const PhysicalSetup& s);

enum class Regime { typeI_dirichlet, typeI_periodic, typeII_dirichlet, typeII_periodic };
inline constexpr std::array<Regime, 4> kAllRegimes{Regime::typeI_dirichlet, Regime::typeI_periodic,
                                                   Regime::typeII_dirichlet,
                                                   Regime::typeII_periodic};
std::string to_string(Regime r);

/// Lower bound on the nudging parameter for the given observer type and
/// boundary condition:
///   typeI_dirichlet   2 c nu lambda1 (1 + log G + G^4) G^2
///   typeI_periodic    2 c nu lambda1 (1 + log G) G^2
///   typeII_dirichlet  2 c nu lambda1 K log K
///   typeII_periodic   2 c nu lambda1 (G^2 + G^3)
/// Negative values (G < 1, K < 1) are clamped to 0 with a warning.
BoundValue mu_min(const PhysicalSetup& s, Regime regime);

/// K = c G^2 (1 + (1 + G^2 e^{G^4})(1 + e^{G^4} + G^4 e^{G^4})), in log space
/// for G > 3.5.
BoundValue k_of_g(const PhysicalSetup& s);

/// Largest h with mu c0^2 h^2 <= nu.
double h_max(const PhysicalSetup& s, double mu);

/// Uniform-in-time bounds on the global attractor (squared norms), with
/// averaging window tau for the time-integrated ones.
struct AttractorBounds {
  BoundValue dirichlet_l2;      ///< ||u||^2 <= 2 nu^2 G^2
  BoundValue dirichlet_int_h1;  ///< int ||grad u||^2 <= 2 (1 + tau nu lambda1) nu G^2
  BoundValue dirichlet_h1;      ///< ||grad u||^2 <= c~ nu^2 lambda1 G^2 e^{G^4}
  BoundValue dirichlet_int_h2;  ///< int ||lap u||^2 <= (c~ e^{G^4} + tau nu lambda1) nu lambda1 G^2
  BoundValue dirichlet_h2;      ///< ||lap u||^2 <= c~ nu^2 lambda1^2 G^2 (1 + (1 + G^2 e^{G^4})(...))
  BoundValue periodic_h1;       ///< ||grad u||^2 <= 2 nu^2 lambda1 G^2
  BoundValue periodic_int_h2;   ///< int ||lap u||^2 <= 2 (1 + tau nu lambda1) nu lambda1 G^2
  BoundValue periodic_h2;       ///< ||lap u||^2 <= c~ nu^2 lambda1^2 (1 + G)^4
};

AttractorBounds attractor_bounds(const PhysicalSetup& s, double tau);

/// log of the smallness threshold c~ nu^2 lambda1 G^2 e^{G^4} for ||grad U0||^2.
double log_initial_data_threshold(const PhysicalSetup& s);

struct PhiMinCheck {
  double analytic_bound = 0.0;  ///< -gamma log gamma
  double grid_min = 0.0;        ///< min of r - gamma (1 + log r) on the sample grid
  double argmin = 1.0;
  bool holds = false;           ///< grid_min >= analytic_bound - 1e-9
};

/// Samples phi(r) = r - gamma (1 + log r) on a uniform grid over
/// [1, max(10 gamma, 100)] (plus the stationary point r = gamma when it lies
/// in range) and compares against the bound -gamma log gamma.
PhiMinCheck phi_min_check(double gamma, int samples = 20001);

struct BoundsReport {
  PhysicalSetup setup;
  double grashof = 0.0;
  std::array<BoundValue, 4> mu_min;  ///< indexed like kAllRegimes
  BoundValue k;
  double mu = 0.0;
  double h_max = 0.0;  ///< for mu; NaN when mu <= 0
  double tau = 0.0;
  AttractorBounds attractor;
};

BoundsReport bounds_report(const PhysicalSetup& s, double mu, double tau);

}  // namespace nudge2d::bounds
