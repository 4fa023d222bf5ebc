#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

namespace beamgram::quadrature {

enum class RuleKind { gauss_legendre, periodic_trapezoid, tail_exp_transform };

std::string_view to_string(RuleKind kind);

// Nodes and strictly positive weights such that sum(w_i f(x_i)) approximates
// the integral of f over [a, b]. For tail rules b is +infinity.
struct QuadratureRule {
  RuleKind kind = RuleKind::gauss_legendre;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }

  template <class F>
  auto integrate(F&& f) const {
    using R = decltype(f(0.0));
    R sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * f(nodes[i]);
    }
    return sum;
  }
};

/// n-point Gauss-Legendre rule on the finite interval [a, b]; exact for
/// polynomials of degree <= 2n-1. Throws InvalidArgument unless n >= 1 and
/// a < b are finite.
QuadratureRule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre: `panels` equal sub-intervals of [a, b] with
/// `order` nodes each. Nodes are in increasing order.
QuadratureRule composite_gauss_legendre(int panels, int order, double a, double b);

/// Equispaced rule on [0, 2*pi) with weight 2*pi/n. Requires n >= 4 and even.
QuadratureRule periodic_trapezoid(int n);

/// n-point Gauss-Laguerre rule for the weight e^{-x} on [0, inf), returned
/// with the weight folded back out: sum(w_i f(x_i)) ~ int_0^inf f(x) dx for
/// f that decays like e^{-x} times a polynomial. n <= 128.
QuadratureRule gauss_laguerre_modified(int n);

struct TailOptions {
  double rel_tol = 0.0;
  /// Decay rate r in the t = kappa^2 variable: integrand ~ e^{-r t}.
  double rate = 1.0;
  /// Width (in t) of the Gauss-Legendre panel placed before the
  /// exponentially weighted remainder.
  double panel_width = 4.0;
  int initial_order = 8;
  int max_order = 128;
};

/// Rule on [a, inf) in the kappa variable: Gauss-Legendre panel on
/// t in [a^2, a^2 + panel_width] followed by a Gauss-Laguerre remainder,
/// with t = kappa^2 mapped back to kappa.
QuadratureRule tail_rule(int order, double a, const TailOptions& opts = {});

struct TailResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  int order = 0;  // node count per sub-rule at acceptance
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Integral of f over [a, inf) for integrands decaying at least like
/// e^{-kappa^2}. Orders double until successive estimates agree within
/// max(tol, rel_tol*|value|); throws NoConvergence otherwise.
TailResult integrate_tail(const ComplexIntegrand& f, double a, double tol, const TailOptions& opts = {});

}  // namespace beamgram::quadrature
