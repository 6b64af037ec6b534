#pragma once

#include <span>
#include <string>
#include <vector>

#include "nudge2d/spectral_field.hpp"

namespace nudge2d {

enum class ObserverKind { fourier_modes, volume_elements, nodal };

ObserverKind parse_observer_kind(const std::string& name);
std::string to_string(ObserverKind kind);

/// Coarse-measurement interpolant I_h.
///
/// fourier_modes: L2 projection onto modes with physical |k| <= 1/h.
/// volume_elements: piecewise-constant averages over M x M cells.
/// nodal: periodic bilinear interpolant of the values at M x M nodes.
/// For the lattice kinds M = round(L / h) and the effective h is L / M.
/// Outputs are band-limited to the grid (Nyquist modes dropped) and have
/// zero mean. Lattice observers act on the Nyquist-free part of the input.
class Observer {
 public:
  Observer(ObserverKind kind, double h, Grid grid);

  ObserverKind kind() const { return kind_; }
  double h() const { return h_; }
  double effective_h() const { return effective_h_; }
  /// Cells/nodes per side; 0 for fourier_modes.
  int cells() const { return cells_; }
  /// Largest observed integer |k| for fourier_modes; -1 for lattice kinds.
  int cutoff_index() const { return cutoff_index_; }
  /// Type II observers satisfy only the mixed H1/H2 approximation bound.
  bool is_type_two() const { return kind_ == ObserverKind::nodal; }
  const Grid& grid() const { return grid_; }

  SpectralField apply(const SpectralField& f) const;

 private:
  SpectralField apply_fourier(const SpectralField& f) const;
  SpectralField apply_lattice(const SpectralField& f) const;

  ObserverKind kind_;
  double h_;
  Grid grid_;
  double effective_h_ = 0.0;
  int cells_ = 0;
  int cutoff_index_ = -1;
  // Per signed index (storage row order) 1D factors for lattice kinds:
  // sample_ maps coefficients to lattice data, rebuild_ maps back.
  std::vector<Complex> sample_;
  std::vector<Complex> rebuild_;
};

/// I_h applied to one velocity component (2 by default); the other is unread.
SpectralField observed_signal(const Observer& obs, const VelocityState& state,
                              int component = 2);

struct ConstantEstimate {
  double c0_hat = 0.0;
  /// Type I: ||w - I_h w|| / (h ||grad w||).
  /// Type II: ||w - I_h w|| / (c0^2 h^2 ||grad w||^2 / 2 + c0^4 h^4 ||lap w||^2 / 4)^(1/2)
  /// evaluated at c0 = c0_hat.
  std::vector<double> ratios;
  bool mixed_bound = false;
};

/// Empirical approximation constant over an ensemble, using the effective h.
ConstantEstimate measure_constants(const Observer& obs, std::span<const SpectralField> ensemble);

}  // namespace nudge2d
