#include "beamgram/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "beamgram/errors.hpp"

namespace beamgram::quadrature {

namespace {

constexpr double kNewtonTol = 1e-15;
constexpr int kMaxNewton = 100;

}  // namespace

std::string_view to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::gauss_legendre:
      return "gauss-legendre";
    case RuleKind::periodic_trapezoid:
      return "periodic-trapezoid";
    case RuleKind::tail_exp_transform:
      return "tail-exp-transform";
  }
  return "unknown";
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) {
    throw InvalidArgument("gauss_legendre: node count must be >= 1, got " + std::to_string(n));
  }
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw InvalidArgument("invalid-interval: gauss_legendre on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  }

  QuadratureRule rule;
  rule.kind = RuleKind::gauss_legendre;
  rule.a = a;
  rule.b = b;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int pairs = (n + 1) / 2;
  for (int i = 0; i < pairs; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < kMaxNewton; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double z_prev = z;
      z = z_prev - p0 / dp;
      if (std::abs(z - z_prev) <= kNewtonTol) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);

    // Ascending order: the i-th root from cos() is the largest.
    rule.nodes[n - 1 - i] = mid + half * z;
    rule.nodes[i] = mid - half * z;
    rule.weights[n - 1 - i] = half * w;
    rule.weights[i] = half * w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = mid;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(int panels, int order, double a, double b) {
  if (panels < 1) {
    throw InvalidArgument("composite_gauss_legendre: panel count must be >= 1");
  }
  const QuadratureRule unit = gauss_legendre(order, -1.0, 1.0);
  QuadratureRule rule;
  rule.kind = RuleKind::gauss_legendre;
  rule.a = a;
  rule.b = b;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * order);
  rule.weights.reserve(static_cast<std::size_t>(panels) * order);
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double half = 0.5 * width;
    const double mid = lo + half;
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(mid + half * unit.nodes[i]);
      rule.weights.push_back(half * unit.weights[i]);
    }
  }
  return rule;
}

QuadratureRule periodic_trapezoid(int n) {
  if (n < 4 || n % 2 != 0) {
    throw InvalidArgument("invalid-count: periodic_trapezoid needs an even n >= 4, got " + std::to_string(n));
  }
  QuadratureRule rule;
  rule.kind = RuleKind::periodic_trapezoid;
  rule.a = 0.0;
  rule.b = 2.0 * std::numbers::pi;
  rule.nodes.resize(n);
  rule.weights.assign(n, 2.0 * std::numbers::pi / n);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = 2.0 * std::numbers::pi * k / n;
  }
  return rule;
}

QuadratureRule gauss_laguerre_modified(int n) {
  if (n < 1 || n > 128) {
    throw InvalidArgument("gauss_laguerre_modified: node count must be in [1, 128], got " + std::to_string(n));
  }
  QuadratureRule rule;
  rule.kind = RuleKind::tail_exp_transform;
  rule.a = 0.0;
  rule.b = std::numeric_limits<double>::infinity();
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    // Initial guesses for the alpha = 0 case.
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - rule.nodes[i - 2]);
    }
    double p1 = 0.0;
    double p2 = 0.0;
    double pp = 1.0;
    for (int it = 0; it < kMaxNewton; ++it) {
      p1 = 1.0;
      p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0 - z) * p2 - j * p3) / (j + 1.0);
      }
      pp = (n * p1 - n * p2) / z;
      const double z_prev = z;
      z = z_prev - p1 / pp;
      if (std::abs(z - z_prev) <= kNewtonTol * std::max(1.0, z)) break;
    }
    p1 = 1.0;
    p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j + 1.0 - z) * p2 - j * p3) / (j + 1.0);
    }
    pp = (n * p1 - n * p2) / z;
    rule.nodes[i] = z;
    // w_i e^{x_i} evaluated in log space; L_{n-1} and L_n' can be ~e^{300}.
    const double log_w = -std::log(std::abs(pp)) - std::log(static_cast<double>(n)) - std::log(std::abs(p2));
    rule.weights[i] = std::exp(log_w + z);
  }
  return rule;
}

QuadratureRule tail_rule(int order, double a, const TailOptions& opts) {
  if (!(a > 0.0)) {
    throw InvalidArgument("tail_rule: lower limit must be > 0");
  }
  if (!(opts.rate > 0.0) || !(opts.panel_width > 0.0)) {
    throw InvalidArgument("tail_rule: rate and panel_width must be > 0");
  }
  const double t0 = a * a;
  const double t1 = t0 + opts.panel_width;
  const QuadratureRule panel = gauss_legendre(order, t0, t1);
  const QuadratureRule rest = gauss_laguerre_modified(order);

  QuadratureRule rule;
  rule.kind = RuleKind::tail_exp_transform;
  rule.a = a;
  rule.b = std::numeric_limits<double>::infinity();
  rule.nodes.reserve(2 * order);
  rule.weights.reserve(2 * order);
  // dkappa = dt / (2 sqrt(t))
  for (std::size_t i = 0; i < panel.size(); ++i) {
    const double kappa = std::sqrt(panel.nodes[i]);
    rule.nodes.push_back(kappa);
    rule.weights.push_back(panel.weights[i] / (2.0 * kappa));
  }
  for (std::size_t i = 0; i < rest.size(); ++i) {
    const double t = t1 + rest.nodes[i] / opts.rate;
    const double kappa = std::sqrt(t);
    rule.nodes.push_back(kappa);
    rule.weights.push_back(rest.weights[i] / opts.rate / (2.0 * kappa));
  }
  return rule;
}

TailResult integrate_tail(const ComplexIntegrand& f, double a, double tol, const TailOptions& opts) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("integrate_tail: tolerance must be > 0");
  }
  if (std::isinf(a) && a > 0.0) {
    return TailResult{{0.0, 0.0}, 0.0, 0};
  }
  int order = opts.initial_order;
  std::complex<double> previous = tail_rule(order, a, opts).integrate(f);
  double diff = std::numeric_limits<double>::infinity();
  while (2 * order <= opts.max_order) {
    order *= 2;
    const std::complex<double> current = tail_rule(order, a, opts).integrate(f);
    diff = std::abs(current - previous);
    if (diff <= std::max(tol, opts.rel_tol * std::abs(current))) {
      return TailResult{current, diff, order};
    }
    previous = current;
  }
  throw NoConvergence("no-convergence: integrate_tail refinement stalled above tolerance", previous.real(), previous.imag(), diff);
}

}  // namespace beamgram::quadrature
