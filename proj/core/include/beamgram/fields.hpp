#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace beamgram::fields {

/// Dimensionless cylindrical point: rho = rho/w0, z = z/z_R.
struct FieldPoint {
  double rho = 0.0;
  double theta = 0.0;
  double z = 0.0;
};

enum class FieldKind { exact, fresnel, closed };

std::string_view to_string(FieldKind kind);
std::optional<FieldKind> parse_field_kind(std::string_view text);

struct FieldMeta {
  int m = 0;
  int l = 0;
  int s = +1;
  double f = 0.0;
  FieldKind kind = FieldKind::closed;
};

/// Complex field samples on a list of points; values[i] belongs to points[i].
struct FieldGrid {
  FieldMeta meta;
  std::vector<FieldPoint> points;
  std::vector<std::complex<double>> values;
};

/// Prefactors of the quantised fields for given omega, c and hbar.
/// amplitude = sqrt(c hbar / omega), electric = (omega / c) amplitude and
/// length = c / omega (= f w0).
struct FieldPrefactors {
  double amplitude = 0.0;
  double electric = 0.0;
  double length = 0.0;

  static FieldPrefactors at(double omega, double c, double hbar);
};

// --- polarization ---------------------------------------------------------

/// e1 = n x k / |n x k|, e2 = k^ x e1. Throws InvalidArgument
/// ("degenerate-direction") when |n x k| < 1e-12 |k|.
std::pair<Eigen::Vector3d, Eigen::Vector3d> polarization_basis(const Eigen::Vector3d& k, const Eigen::Vector3d& n);

// --- closed-form paraxial LG ------------------------------------------------

double beam_width(double z);
double gouy_phase(int m, int l, double rho, double z);

/// Paraxial LG field with w0 = 1:
/// e^{i(l theta - s chi)} (C / w) (rho/w)^{|l|} e^{-rho^2/(2 w^2)} L_m^{|l|}(rho^2/w^2).
std::complex<double> closed_form_paraxial(int m, int l, int s, const FieldPoint& p);

/// Analytic d/dx of closed_form_paraxial at fixed y and z (dimensionless x).
std::complex<double> closed_form_paraxial_dx(int m, int l, int s, const FieldPoint& p);

// --- Fresnel (f = 0) integral ---------------------------------------------

/// Paraxial field from the Fresnel representation, with the angular integral
/// done analytically (Bessel identity) and the radial integral by composite
/// Gauss quadrature, self-converged to 1e-12. Throws NoConvergence.
std::complex<double> fresnel_paraxial_field(int m, int l, int s, const FieldPoint& p);

// --- exact Hertz-potential integral ----------------------------------------

struct ExactQuadratureOrders {
  int radial_panel_order = 16;
  double radial_panel_width = 0.5;
  int edge_order = 32;     // Gauss order on the endpoint-substituted panel
  int angular_nodes = 128; // periodic nodes in the elliptic-amplitude variable
};

/// Exact beam integral Z~ = Z / f for one mode at one f, on a fixed node set.
///
/// The disc kappa <= 1/f is integrated with composite Gauss panels; the
/// outermost panel uses kappa = (1/f) sqrt(1 - v^4), which absorbs the
/// (1 - f^2 kappa^2)^{-1/4} endpoint factor. The angular factor
/// (1 - f^2 kappa^2 sin^2 theta)^{-1/2} is absorbed by integrating in the
/// elliptic amplitude variable, theta = am(u, f kappa). When the spectrum is
/// negligible before 1/f the disc is truncated at the spectrum cutoff.
///
/// Because the node set does not depend on the evaluation point, the result
/// is a finite superposition of exact solutions of the reduced Helmholtz
/// equation.
class ExactFieldIntegrator {
 public:
  ExactFieldIntegrator(int m, int l, int s, double f, const ExactQuadratureOrders& orders = {});

  std::complex<double> operator()(const FieldPoint& p) const;

  /// Test hook: drop the (1 - f^2 kappa^2)^{1/4} Jacobian factor.
  static ExactFieldIntegrator without_jacobian_factor(int m, int l, int s, double f,
                                                      const ExactQuadratureOrders& orders = {});

  std::size_t node_count() const noexcept { return weights_.size(); }
  int m() const noexcept { return m_; }
  int l() const noexcept { return l_; }
  int s() const noexcept { return s_; }
  double f() const noexcept { return f_; }

 private:
  ExactFieldIntegrator(int m, int l, int s, double f, const ExactQuadratureOrders& orders, bool jacobian_factor);

  int m_;
  int l_;
  int s_;
  double f_;
  // Flattened nodes: kappa cos/sin of the node angle, the z phase rate, and
  // the complex weight (measure, spectrum, azimuthal factor, denominators).
  std::vector<double> kx_;
  std::vector<double> ky_;
  std::vector<double> zrate_;
  std::vector<std::complex<double>> weights_;
};

/// Orders used as the refinement check: half the panel width, twice the edge
/// order and twice the angular nodes.
ExactQuadratureOrders refined(const ExactQuadratureOrders& orders);

/// Z~ at one point with the default orders, checked against refined orders.
/// Throws NoConvergence if they differ by more than `tol`.
std::complex<double> exact_hertz_field(int m, int l, int s, double f, const FieldPoint& p, double tol = 1e-9);

// --- PDE residual -----------------------------------------------------------

enum class Equation { full, paraxial };

/// |[lap_rho + 2 i s d_z + f^2 d_z^2] field| by second-order central
/// differences with step h in [1e-4, 1e-1]. Polar stencil, or the Cartesian
/// 5-point stencil when rho < 2h. Default equation: full for exact fields,
/// paraxial (f^2 term dropped) for fresnel and closed fields.
double helmholtz_residual(FieldKind kind, int m, int l, int s, double f, const FieldPoint& p, double h,
                          std::optional<Equation> equation = std::nullopt);

/// Same, for an already constructed exact integrator.
double helmholtz_residual(const ExactFieldIntegrator& field, const FieldPoint& p, double h,
                          Equation equation = Equation::full);

// --- paraxial vector fields --------------------------------------------------

/// A and E in units of the amplitude and electric prefactors:
/// A = (s L, 0, i f dL/dx), E = i A.
struct VectorFields {
  std::array<std::complex<double>, 3> A;
  std::array<std::complex<double>, 3> E;
};

VectorFields paraxial_vector_fields(int m, int l, int s, double f, const FieldPoint& p);

// --- identity oracles --------------------------------------------------------

struct IdentityCheck {
  std::complex<double> numeric;
  std::complex<double> closed;
  double deviation = 0.0;
};

/// Closed form of int_0^inf x^{|l|+1} e^{-beta x^2} L_m^{|l|}(x^2) J_{|l|}(gamma x) dx,
/// evaluated as a finite sum that stays regular at beta = 1.
std::complex<double> laguerre_gauss_hankel_closed(int m, int l, std::complex<double> beta, double gamma);

/// Numeric vs closed form of the Laguerre-Gauss Hankel integral.
/// Requires Re beta > 0 and gamma >= 0.
IdentityCheck hankel_identity_check(int m, int l, std::complex<double> beta, double gamma);

/// max over theta in {0, pi/3, pi/2} of
/// |(1/2pi) int e^{i l phi} e^{i u cos(phi - theta)} dphi - e^{i l (theta + pi/2)} [sign l]^l J_|l|(u)|
/// with a 128-node periodic trapezoid.
double angular_identity_check(int l, double u, int nodes = 128);

}  // namespace beamgram::fields
