#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "beamgram/modes.hpp"

namespace beamgram::states {

/// Polar grid over dimensionless transverse momentum kappa = w0 q.
///
/// Radial nodes come from composite Gauss panels with a panel break at the
/// homogeneous edge kappa = 1/f (when it lies inside the grid), so the Theta
/// discontinuity never falls inside a panel. Angular nodes are a periodic
/// trapezoid rule. Weights include the polar Jacobian kappa.
struct PolarGrid {
  double f = 0.0;
  double kappa_max = 0.0;
  std::vector<double> kappa;
  std::vector<double> radial_weights;  // Gauss weight times kappa
  std::vector<double> theta;
  double angular_weight = 0.0;

  std::size_t radial_size() const noexcept { return kappa.size(); }
  std::size_t angular_size() const noexcept { return theta.size(); }
  std::size_t size() const noexcept { return kappa.size() * theta.size(); }
  std::size_t index(std::size_t i, std::size_t k) const noexcept { return i * theta.size() + k; }

  bool homogeneous(std::size_t i) const noexcept { return kappa[i] <= 1.0 / f; }

  friend bool operator==(const PolarGrid&, const PolarGrid&) = default;
};

inline constexpr int kDefaultRadialNodes = 256;
inline constexpr int kDefaultAngularNodes = 128;
inline constexpr int kMinRadialNodes = 64;

/// Grid reaching max(kappa_max, 1/f). Throws InvalidArgument("grid-too-coarse")
/// if radial_nodes < 64; radial_nodes is rounded up to a multiple of 16.
PolarGrid make_polar_grid(double f, double kappa_max = modes::kDefaultKappaMax,
                          int radial_nodes = kDefaultRadialNodes, int angular_nodes = kDefaultAngularNodes);

/// Commutator kernel at a fixed frequency slice. The delta(omega - omega'),
/// delta_{ss'} and delta_{lambda lambda'} factors are structural; on the grid
/// the kernel is the Theta mask (1 homogeneous, 0 evanescent), with the
/// square-root Jacobian absorbed into the slice amplitudes.
struct CommutatorKernel {
  double f = 0.0;
  std::vector<std::uint8_t> mask;  // per radial node

  static CommutatorKernel on(const PolarGrid& grid);

  double value(std::size_t radial_index) const { return mask[radial_index] ? 1.0 : 0.0; }
};

/// Single-photon wavefunction of b^dagger_j |0> sampled on a polar grid.
/// Amplitudes are w0 U*_j(q) Theta(1/f - kappa), so that the discrete inner
/// product is the continuum integral over d^2 kappa.
struct SinglePhotonState {
  ModeIndex j;
  double f = 0.0;
  PolarGrid grid;
  std::vector<std::complex<double>> amplitudes;  // index: grid.index(i, k)
};

/// Throws InvalidArgument if the grid was built for a different f.
SinglePhotonState build_state(const ModeIndex& j, const BeamConfig& cfg, const PolarGrid& grid);

/// sum w_i w_k conj(psi) psi'. Throws GridMismatch unless grid, f, s and
/// polarization agree.
std::complex<double> state_overlap(const SinglePhotonState& a, const SinglePhotonState& b);

/// Squared norm, i.e. state_overlap(psi, psi).real().
double state_norm2(const SinglePhotonState& psi);

/// Number operator at the slice: zeroes every evanescent amplitude.
/// Idempotent bit-for-bit.
SinglePhotonState truncation_projector(const SinglePhotonState& psi);

struct VacuumReport {
  int m_max = 0;
  double f_delta_f_max = 0.0;       // max |(F Delta F)_{ik}| over l-blocks
  double evanescent_sum_max = 0.0;  // max |sum_j U_j(q) psi_j(q')| over evanescent q, q'
  std::size_t evanescent_nodes = 0;
};

/// Vacuum-constraint consequences for cfg.l_set and m = 0..cfg.m_max
/// (cfg.m_max >= 2). The evanescent sum is exactly zero because every
/// psi_j carries the Theta mask.
VacuumReport vacuum_constraint_check(const BeamConfig& cfg, const PolarGrid& grid);

}  // namespace beamgram::states
