#pragma once

#include <complex>
#include <span>
#include <vector>

namespace beamgram {

/// Beam parameters shared by the gram, states and CLI layers.
///
/// `f` is the diffraction parameter c / (w0 omega); the Rayleigh length is
/// w0 / f. `l_set` lists the azimuthal indices of interest and `m_max` the
/// radial truncation (modes m = 0..m_max).
struct BeamConfig {
  double w0 = 1.0;
  double f = 0.5;
  int m_max = 0;
  std::vector<int> l_set{0};

  /// Throws InvalidArgument on non-positive/non-finite w0 or f, negative
  /// m_max, or an empty/duplicated l_set.
  void validate() const;

  double rayleigh_length() const { return w0 / f; }
};

/// Label of a beam-photon mode. Only the plane-polarised sector (polarization
/// tag 1) is represented.
struct ModeIndex {
  int s = +1;             // propagation direction, +1 or -1
  int polarization = 1;   // fixed to 1
  int m = 0;              // radial index >= 0
  int l = 0;              // azimuthal index

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

struct TransverseMomentum {
  double qx = 0.0;
  double qy = 0.0;
};

namespace modes {

/// Cutoff in kappa above which every LG spectrum used here is below 1e-13
/// of its peak (m <= 6).
inline constexpr double kDefaultKappaMax = 8.0;

/// phi_m^{|l|}(kappa) = C kappa^{|l|} e^{-kappa^2/2} L_m^{|l|}(kappa^2).
double lg_radial_spectrum(int m, int l, double kappa);

/// V~_ml(kappa) = 2 pi e^{i phi_ml} phi_m^{|l|}(kappa).
std::complex<double> lg_spectrum(int m, int l, double kappa);

/// Smallest kappa beyond which |kappa V~_ml(kappa)| stays below `rel` times
/// its maximum. Used to truncate integrals over the full plane.
double spectrum_cutoff(int m, int l, double rel = 1e-18);

/// U_ml(q) = (1/2pi) e^{-i l theta_q} w0 V~_ml(w0 |q|), theta_q from the qx axis.
std::complex<double> mode_kernel(const ModeIndex& j, TransverseMomentum q, const BeamConfig& cfg);

/// Object-plane LG eigenfunction e^{i l theta} C rho^{|l|} e^{-rho^2/2} L_m^{|l|}(rho^2).
std::complex<double> lg_object_plane(int m, int l, double rho, double theta);

/// Two-dimensional Fourier transform of conj(Psi_ml) evaluated by nested
/// quadrature (periodic trapezoid in angle, composite Gauss in radius).
std::complex<double> lg_fourier_numeric(int m, int l, double kappa, double theta_kappa);

/// Closed form 2 pi e^{i phi_ml} e^{-i l theta} phi_m^{|l|}(kappa).
std::complex<double> lg_fourier_closed(int m, int l, double kappa, double theta_kappa);

/// Max |numeric - closed| over kappa_grid x {0, 1.1, 2.5} in theta.
/// Throws NoConvergence when the nested quadrature is not self-converged.
double fourier_identity_check(int m, int l, std::span<const double> kappa_grid);

/// Default grid: 81 points on [0, 8].
std::vector<double> default_kappa_grid();

}  // namespace modes
}  // namespace beamgram
