#include "beamgram/fields.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "beamgram/errors.hpp"
#include "beamgram/modes.hpp"
#include "beamgram/quadrature.hpp"
#include "beamgram/specfun.hpp"

namespace beamgram::fields {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

// Jacobi amplitude am(u | k) for a fixed modulus by the descending AGM.
class EllipticAmplitude {
 public:
  explicit EllipticAmplitude(double k) {
    double a = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    double c = k;
    a_.push_back(a);
    c_.push_back(c);
    while (std::abs(c) > 1e-16 * a && a_.size() < 64) {
      const double an = 0.5 * (a + b);
      const double bn = std::sqrt(a * b);
      c = 0.5 * (a - b);
      a = an;
      b = bn;
      a_.push_back(a);
      c_.push_back(c);
    }
    quarter_period_ = kPi / (2.0 * a_.back());
  }

  double quarter_period() const noexcept { return quarter_period_; }

  double operator()(double u) const {
    const std::size_t n = a_.size() - 1;
    double phi = std::ldexp(a_[n] * u, static_cast<int>(n));
    for (std::size_t i = n; i >= 1; --i) {
      phi = 0.5 * (phi + std::asin(c_[i] * std::sin(phi) / a_[i]));
    }
    return phi;
  }

 private:
  std::vector<double> a_;
  std::vector<double> c_;
  double quarter_period_ = 0.0;
};

// (sqrt(1 - f^2 k^2) - 1) / f^2 without cancellation.
double longitudinal_shift(double f, double kappa) {
  const double root = std::sqrt(std::max(0.0, (1.0 - f * kappa) * (1.0 + f * kappa)));
  return -kappa * kappa / (1.0 + root);
}

}  // namespace

std::string_view to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::exact:
      return "exact";
    case FieldKind::fresnel:
      return "fresnel";
    case FieldKind::closed:
      return "closed";
  }
  return "unknown";
}

std::optional<FieldKind> parse_field_kind(std::string_view text) {
  if (text == "exact") return FieldKind::exact;
  if (text == "fresnel") return FieldKind::fresnel;
  if (text == "closed") return FieldKind::closed;
  return std::nullopt;
}

FieldPrefactors FieldPrefactors::at(double omega, double c, double hbar) {
  if (!(omega > 0.0) || !(c > 0.0) || !(hbar > 0.0)) {
    throw InvalidArgument("FieldPrefactors: omega, c and hbar must be > 0");
  }
  FieldPrefactors p;
  p.amplitude = std::sqrt(c * hbar / omega);
  p.electric = (omega / c) * p.amplitude;
  p.length = c / omega;
  return p;
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> polarization_basis(const Eigen::Vector3d& k, const Eigen::Vector3d& n) {
  const Eigen::Vector3d cross = n.cross(k);
  const double kn = k.norm();
  if (!(kn > 0.0) || cross.norm() < 1e-12 * kn) {
    throw InvalidArgument("degenerate-direction: wavevector parallel to the reference vector");
  }
  const Eigen::Vector3d e1 = cross / cross.norm();
  const Eigen::Vector3d e2 = (k / kn).cross(e1);
  return {e1, e2};
}

double beam_width(double z) { return std::sqrt(1.0 + z * z); }

double gouy_phase(int m, int l, double rho, double z) {
  const double w2 = 1.0 + z * z;
  return (2.0 * m + std::abs(l) + 1.0) * std::atan(z) - 0.5 * (rho * rho / w2) * z;
}

std::complex<double> closed_form_paraxial(int m, int l, int s, const FieldPoint& p) {
  const int al = std::abs(l);
  const auto c = specfun::lg_constants(m, l);
  const double w = beam_width(p.z);
  const double r = p.rho / w;
  const double u = r * r;
  const double amplitude = (c.norm / w) * std::pow(r, al) * std::exp(-0.5 * u) * specfun::laguerre_assoc(m, al, u);
  return std::polar(1.0, l * p.theta - s * gouy_phase(m, l, p.rho, p.z)) * amplitude;
}

std::complex<double> closed_form_paraxial_dx(int m, int l, int s, const FieldPoint& p) {
  const int al = std::abs(l);
  const auto c = specfun::lg_constants(m, l);
  const double w2 = 1.0 + p.z * p.z;
  const double w = std::sqrt(w2);
  const double rho = p.rho;
  const double u = rho * rho / w2;
  const double gauss = std::exp(-0.5 * u);
  // L = e^{i l theta} rho^{|l|} H(rho)
  const std::complex<double> phase = std::polar(1.0, -s * gouy_phase(m, l, rho, p.z));
  const double scale = c.norm / std::pow(w, al + 1);
  const double lag = specfun::laguerre_assoc(m, al, u);
  const double lag_d = specfun::laguerre_assoc_derivative(m, al, u);
  const std::complex<double> H = phase * scale * gauss * lag;
  const std::complex<double> dH =
      phase * scale * gauss * ((kI * static_cast<double>(s) * rho * p.z / w2 - rho / w2) * lag + lag_d * 2.0 * rho / w2);

  const double ct = std::cos(p.theta);
  const double st = std::sin(p.theta);
  std::complex<double> value = std::pow(rho, al) * ct * dH;
  if (al > 0) {
    value += std::pow(rho, al - 1) * H * (static_cast<double>(al) * ct - kI * static_cast<double>(l) * st);
  }
  return std::polar(1.0, l * p.theta) * value;
}

// --- Fresnel ---------------------------------------------------------------

namespace {

std::complex<double> fresnel_radial(int m, int l, int s, const FieldPoint& p, int panels, double reach) {
  const int al = std::abs(l);
  const auto rule = quadrature::composite_gauss_legendre(panels, 16, 0.0, reach);
  const std::complex<double> beta = 0.5 * std::complex<double>(1.0, s * p.z);
  std::complex<double> sum{};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double k = rule.nodes[i];
    const double k2 = k * k;
    sum += rule.weights[i] * std::pow(k, al + 1) * std::exp(-beta * k2) * specfun::laguerre_assoc(m, al, k2) *
           specfun::bessel_j(al, p.rho * k);
  }
  return sum;
}

}  // namespace

std::complex<double> fresnel_paraxial_field(int m, int l, int s, const FieldPoint& p) {
  const auto c = specfun::lg_constants(m, l);
  const double reach = modes::spectrum_cutoff(m, l);
  const double oscillation = std::max(1.0, (p.rho + std::abs(p.z) * reach) / 4.0);
  const int panels = static_cast<int>(std::ceil(reach / 0.25 * oscillation));
  const auto coarse = fresnel_radial(m, l, s, p, panels, reach);
  const auto fine = fresnel_radial(m, l, s, p, 2 * panels, reach);
  const double diff = std::abs(fine - coarse);
  if (diff > 1e-12) {
    throw NoConvergence("no-convergence: fresnel_paraxial_field: radial quadrature not self-converged", fine.real(), fine.imag(), diff);
  }
  const double parity = (m % 2 == 0) ? 1.0 : -1.0;  // e^{i pi m}
  return std::polar(1.0, l * p.theta) * c.norm * parity * fine;
}

// --- exact -------------------------------------------------------------------

ExactFieldIntegrator::ExactFieldIntegrator(int m, int l, int s, double f, const ExactQuadratureOrders& orders)
    : ExactFieldIntegrator(m, l, s, f, orders, true) {}

ExactFieldIntegrator ExactFieldIntegrator::without_jacobian_factor(int m, int l, int s, double f,
                                                                   const ExactQuadratureOrders& orders) {
  return ExactFieldIntegrator(m, l, s, f, orders, false);
}

ExactFieldIntegrator::ExactFieldIntegrator(int m, int l, int s, double f, const ExactQuadratureOrders& orders,
                                           bool jacobian_factor)
    : m_(m), l_(l), s_(s), f_(f) {
  if (!std::isfinite(f) || !(f > 0.0)) {
    throw InvalidArgument("exact field: f must be finite and > 0");
  }
  if (s != 1 && s != -1) {
    throw InvalidArgument("exact field: s must be +1 or -1");
  }
  if (m < 0) {
    throw InvalidArgument("exact field: m must be >= 0");
  }
  const double edge = 1.0 / f;
  const double reach = modes::spectrum_cutoff(m, l);

  // Radial nodes with weights that already include the endpoint factor
  // (1 - f^2 kappa^2)^{-1/4} (or its removal, for the test hook).
  std::vector<double> kappas;
  std::vector<double> radial_w;
  auto add_regular = [&](double lo, double hi) {
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / orders.radial_panel_width)));
    const auto rule = quadrature::composite_gauss_legendre(panels, orders.radial_panel_order, lo, hi);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double k = rule.nodes[i];
      const double quarter = std::pow((1.0 - f * k) * (1.0 + f * k), 0.25);
      kappas.push_back(k);
      radial_w.push_back(jacobian_factor ? rule.weights[i] / quarter : rule.weights[i]);
    }
  };

  if (reach <= 0.9 * edge) {
    add_regular(0.0, reach);
  } else {
    // kappa = (1/f) sqrt(1 - v^4): dkappa = -(2 v^3 / f) / sqrt(1 - v^4) dv
    // and (1 - f^2 kappa^2)^{1/4} = v.
    constexpr double v_edge = 0.7;
    const double kappa_break = edge * std::sqrt(1.0 - std::pow(v_edge, 4));
    add_regular(0.0, kappa_break);
    const auto rule = quadrature::gauss_legendre(orders.edge_order, 0.0, v_edge);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double v = rule.nodes[i];
      const double v4 = std::pow(v, 4);
      const double jac = 2.0 * v * v * v / (f * std::sqrt(1.0 - v4));
      kappas.push_back(edge * std::sqrt(1.0 - v4));
      radial_w.push_back(jacobian_factor ? rule.weights[i] * jac / v : rule.weights[i] * jac);
    }
  }

  const int n_ang = orders.angular_nodes;
  if (n_ang < 4 || n_ang % 2 != 0) {
    throw InvalidArgument("exact field: angular node count must be even and >= 4");
  }
  const std::size_t total = kappas.size() * static_cast<std::size_t>(n_ang);
  kx_.reserve(total);
  ky_.reserve(total);
  zrate_.reserve(total);
  weights_.reserve(total);
  const double norm = 1.0 / (4.0 * kPi * kPi);
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    const double k = kappas[i];
    const double modulus = std::min(f * k, 1.0 - 1e-16);
    const EllipticAmplitude am(modulus);
    const double period = 4.0 * am.quarter_period();
    const double du = period / n_ang;
    const std::complex<double> radial = radial_w[i] * k * norm * std::conj(modes::lg_spectrum(m, l, k));
    const double rate = s * longitudinal_shift(f, k);
    for (int j = 0; j < n_ang; ++j) {
      const double theta = am(du * j);
      kx_.push_back(k * std::cos(theta));
      ky_.push_back(k * std::sin(theta));
      zrate_.push_back(rate);
      weights_.push_back(radial * du * std::polar(1.0, l * theta));
    }
  }
}

std::complex<double> ExactFieldIntegrator::operator()(const FieldPoint& p) const {
  const double x = p.rho * std::cos(p.theta);
  const double y = p.rho * std::sin(p.theta);
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double arg = kx_[i] * x + ky_[i] * y + zrate_[i] * p.z;
    const double c = std::cos(arg);
    const double sn = std::sin(arg);
    re += weights_[i].real() * c - weights_[i].imag() * sn;
    im += weights_[i].real() * sn + weights_[i].imag() * c;
  }
  return {re, im};
}

ExactQuadratureOrders refined(const ExactQuadratureOrders& orders) {
  ExactQuadratureOrders out = orders;
  out.radial_panel_width *= 0.5;
  out.edge_order *= 2;
  out.angular_nodes *= 2;
  return out;
}

std::complex<double> exact_hertz_field(int m, int l, int s, double f, const FieldPoint& p, double tol) {
  const ExactQuadratureOrders base;
  const ExactQuadratureOrders doubled = refined(base);
  const auto coarse = ExactFieldIntegrator(m, l, s, f, base)(p);
  const auto fine = ExactFieldIntegrator(m, l, s, f, doubled)(p);
  const double diff = std::abs(fine - coarse);
  if (diff > tol) {
    throw NoConvergence("no-convergence: exact_hertz_field: endpoint refinement stalled", fine.real(), fine.imag(), diff);
  }
  return fine;
}

// --- residual ----------------------------------------------------------------

namespace {

template <class Field>
double residual_with(const Field& field, int s, double f, const FieldPoint& p, double h, Equation equation) {
  if (!(h >= 1e-4 && h <= 1e-1)) {
    throw InvalidArgument("helmholtz_residual: step must lie in [1e-4, 1e-1]");
  }
  const std::complex<double> c = field(p);
  std::complex<double> laplacian;
  if (p.rho < 2.0 * h) {
    const double x = p.rho * std::cos(p.theta);
    const double y = p.rho * std::sin(p.theta);
    auto at = [&](double xx, double yy) { return field(FieldPoint{std::hypot(xx, yy), std::atan2(yy, xx), p.z}); };
    laplacian = (at(x + h, y) + at(x - h, y) + at(x, y + h) + at(x, y - h) - 4.0 * c) / (h * h);
  } else {
    const auto rp = field(FieldPoint{p.rho + h, p.theta, p.z});
    const auto rm = field(FieldPoint{p.rho - h, p.theta, p.z});
    const double dtheta = h / p.rho;
    const auto tp = field(FieldPoint{p.rho, p.theta + dtheta, p.z});
    const auto tm = field(FieldPoint{p.rho, p.theta - dtheta, p.z});
    laplacian = (rp - 2.0 * c + rm) / (h * h) + (rp - rm) / (2.0 * h * p.rho) + (tp - 2.0 * c + tm) / (h * h);
  }
  const auto zp = field(FieldPoint{p.rho, p.theta, p.z + h});
  const auto zm = field(FieldPoint{p.rho, p.theta, p.z - h});
  const std::complex<double> dz = (zp - zm) / (2.0 * h);
  std::complex<double> residual = laplacian + 2.0 * kI * static_cast<double>(s) * dz;
  if (equation == Equation::full) {
    residual += f * f * (zp - 2.0 * c + zm) / (h * h);
  }
  return std::abs(residual);
}

}  // namespace

double helmholtz_residual(const ExactFieldIntegrator& field, const FieldPoint& p, double h, Equation equation) {
  return residual_with(field, field.s(), field.f(), p, h, equation);
}

double helmholtz_residual(FieldKind kind, int m, int l, int s, double f, const FieldPoint& p, double h,
                          std::optional<Equation> equation) {
  switch (kind) {
    case FieldKind::exact: {
      const ExactFieldIntegrator field(m, l, s, f);
      return residual_with(field, s, f, p, h, equation.value_or(Equation::full));
    }
    case FieldKind::fresnel:
      return residual_with([&](const FieldPoint& q) { return fresnel_paraxial_field(m, l, s, q); }, s, f, p, h,
                           equation.value_or(Equation::paraxial));
    case FieldKind::closed:
      return residual_with([&](const FieldPoint& q) { return closed_form_paraxial(m, l, s, q); }, s, f, p, h,
                           equation.value_or(Equation::paraxial));
  }
  throw InvalidArgument("helmholtz_residual: unknown field kind");
}

// --- vector fields -------------------------------------------------------------

VectorFields paraxial_vector_fields(int m, int l, int s, double f, const FieldPoint& p) {
  const std::complex<double> field = closed_form_paraxial(m, l, s, p);
  const std::complex<double> dx = closed_form_paraxial_dx(m, l, s, p);
  VectorFields out;
  out.A = {static_cast<double>(s) * field, {0.0, 0.0}, kI * f * dx};
  for (std::size_t i = 0; i < 3; ++i) out.E[i] = kI * out.A[i];
  return out;
}

// --- identities ---------------------------------------------------------------

std::complex<double> laguerre_gauss_hankel_closed(int m, int l, std::complex<double> beta, double gamma) {
  const int al = std::abs(l);
  const std::complex<double> c = gamma * gamma / (4.0 * beta);
  // (beta - 1)^m L_m^a(c / (1 - beta)) = sum_k binom(m+a, m-k) c^k (beta-1)^{m-k} / k!
  std::complex<double> poly{};
  for (int k = 0; k <= m; ++k) {
    double binom = 1.0;
    for (int t = 1; t <= m - k; ++t) binom = binom * (al + k + t) / t;
    double kfact = 1.0;
    for (int t = 2; t <= k; ++t) kfact *= t;
    poly += binom * std::pow(c, k) * std::pow(beta - 1.0, m - k) / kfact;
  }
  return poly * std::pow(gamma, al) / (std::pow(2.0, al + 1) * std::pow(beta, m + al + 1)) * std::exp(-c);
}

namespace {

std::complex<double> hankel_numeric(int m, int al, std::complex<double> beta, double gamma, int panels, double reach) {
  const auto rule = quadrature::composite_gauss_legendre(panels, 16, 0.0, reach);
  std::complex<double> sum{};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    const double x2 = x * x;
    sum += rule.weights[i] * std::pow(x, al + 1) * std::exp(-beta * x2) * specfun::laguerre_assoc(m, al, x2) *
           specfun::bessel_j(al, gamma * x);
  }
  return sum;
}

}  // namespace

IdentityCheck hankel_identity_check(int m, int l, std::complex<double> beta, double gamma) {
  if (!(beta.real() > 0.0)) {
    throw InvalidArgument("hankel_identity_check: Re beta must be > 0");
  }
  if (!(gamma >= 0.0)) {
    throw InvalidArgument("hankel_identity_check: gamma must be >= 0");
  }
  const int al = std::abs(l);
  // Truncate where x^{2m+|l|+1} e^{-Re(beta) x^2} < 1e-20.
  double reach = 2.0;
  for (int it = 0; it < 50; ++it) {
    reach = std::sqrt((46.0 + (2.0 * m + al + 1.0) * std::log(reach)) / beta.real());
  }
  const double oscillation = std::max(1.0, (gamma + std::abs(beta.imag()) * reach) / 4.0);
  const int panels = static_cast<int>(std::ceil(reach / 0.25 * oscillation));
  const auto coarse = hankel_numeric(m, al, beta, gamma, panels, reach);
  const auto fine = hankel_numeric(m, al, beta, gamma, 2 * panels, reach);
  const double diff = std::abs(fine - coarse);
  if (diff > 1e-12 * std::max(1.0, std::abs(fine))) {
    throw NoConvergence("no-convergence: hankel_identity_check: quadrature not self-converged", fine.real(), fine.imag(), diff);
  }
  IdentityCheck out;
  out.numeric = fine;
  out.closed = laguerre_gauss_hankel_closed(m, l, beta, gamma);
  out.deviation = std::abs(out.numeric - out.closed);
  return out;
}

double angular_identity_check(int l, double u, int nodes) {
  const auto rule = quadrature::periodic_trapezoid(nodes);
  const int al = std::abs(l);
  const double sign_power = (l < 0 && al % 2 == 1) ? -1.0 : 1.0;
  const double bessel = specfun::bessel_j(al, u);
  static constexpr double kThetas[] = {0.0, kPi / 3.0, kPi / 2.0};
  double worst = 0.0;
  for (double theta : kThetas) {
    std::complex<double> sum{};
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double phi = rule.nodes[k];
      sum += rule.weights[k] * std::polar(1.0, l * phi + u * std::cos(phi - theta));
    }
    sum /= 2.0 * kPi;
    const std::complex<double> rhs = std::polar(1.0, l * (theta + kPi / 2.0)) * sign_power * bessel;
    worst = std::max(worst, std::abs(sum - rhs));
  }
  return worst;
}

}  // namespace beamgram::fields
