#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "beamgram/modes.hpp"

namespace beamgram::gram {

/// Absolute accuracy target for every tail integral behind Delta F.
inline constexpr double kDeltaFTolerance = 1e-13;

/// Which transverse momenta count as homogeneous. `step` is the physical
/// mask Theta(1/f - kappa); `unrestricted` replaces Theta by 1 (the
/// non-diffracting limit), for which F is exactly the identity.
enum class HomogeneousMask { step, unrestricted };

/// Overlap matrix F at one diffraction parameter, stored per azimuthal index
/// because cross-l entries vanish identically. blocks[i] and delta_blocks[i]
/// belong to l_set[i] and are (m_max+1) x (m_max+1).
struct GramMatrix {
  double f = 0.0;
  int m_max = 0;
  std::vector<int> l_set;
  std::vector<Eigen::MatrixXcd> blocks;
  std::vector<Eigen::MatrixXcd> delta_blocks;
  HomogeneousMask mask = HomogeneousMask::step;

  /// Block for azimuthal index l; throws InvalidArgument if l is not stored.
  const Eigen::MatrixXcd& block(int l) const;
  const Eigen::MatrixXcd& delta_block(int l) const;

  /// Entry F_{ml, m'l'}; zero when l != l'.
  std::complex<double> entry(int m, int l, int m2, int l2) const;
};

/// Delta F_{ml, m'l}(f): integral over kappa in [1/f, inf) of
/// (kappa / 2 pi) conj(V~_ml) V~_m'l, by the kappa^2 tail transform.
std::complex<double> delta_f(int m, int m2, int l, double f);

/// Same integral with a relative tolerance as well, for tiny values.
std::complex<double> delta_f(int m, int m2, int l, double f, double rel_tol);

/// F = I - Delta F per l-block, symmetrised so every block is exactly Hermitian.
GramMatrix gram_matrix(const BeamConfig& cfg, HomogeneousMask mask = HomogeneousMask::step);

/// Quadrature orders for the 2D oracle.
struct OracleOptions {
  int radial_panels = 0;  // 0: choose from the disc radius
  int radial_order = 16;
  int angular_nodes = 64;
  HomogeneousMask mask = HomogeneousMask::step;
};

/// F_{j,j'} computed directly as the integral of conj(U_j) U_j' over the
/// homogeneous disc |q| <= 1/(f w0), in physical q units. Modes with
/// different s or polarization are orthogonal by construction.
std::complex<double> overlap_2d_oracle(const ModeIndex& j, const ModeIndex& j2, const BeamConfig& cfg,
                                       const OracleOptions& opts = {});

struct ProjectorDefect {
  double idempotence = 0.0;   // max over blocks of max |(F^2 - F)_{ik}|
  double vacuum = 0.0;        // max over blocks of max |(F Delta F)_{ik}|
};

ProjectorDefect projector_defect(const GramMatrix& g);

struct TailAsymptoticsRow {
  double f = 0.0;
  double delta_f = 0.0;
  double log_delta_f = 0.0;       // -inf when underflowed
  double minus_inv_f2 = 0.0;      // -1/f^2
  double ratio_f8 = 0.0;          // Delta F / f^8
  bool underflow = false;         // Delta F below 1e-300 reported as 0
};

/// Diagonal Delta F_{ml,ml}(f) on f_grid (each in (0, 1]) alongside -1/f^2.
std::vector<TailAsymptoticsRow> tail_asymptotics_report(int m, int l, std::span<const double> f_grid);

}  // namespace beamgram::gram
