#include "beamgram/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "beamgram/errors.hpp"

namespace beamgram::specfun {

double laguerre_assoc(int m, int a, double x) {
  if (m < 0 || a < 0) {
    throw InvalidArgument("laguerre_assoc: indices must be non-negative");
  }
  if (m == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + a - x;
  for (int k = 1; k < m; ++k) {
    const double next = ((2.0 * k + a + 1.0 - x) * curr - (k + a) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

double laguerre_assoc_derivative(int m, int a, double x) {
  if (m == 0) return 0.0;
  return -laguerre_assoc(m - 1, a + 1, x);
}

namespace {

double bessel_series(int l, double x) {
  // sum_k (-1)^k (x/2)^{2k+l} / (k! (k+l)!)
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= l; ++k) term *= half / k;
  double sum = term;
  const double q = -half * half;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + l));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double bessel_miller(int l, double x) {
  constexpr double kBig = 1e150;
  constexpr double kSmall = 1e-150;
  const double top = std::max(static_cast<double>(l), x);
  int start = static_cast<int>(top + 30.0 + std::sqrt(60.0 * top));
  start += start % 2;

  const double two_over_x = 2.0 / x;
  double next = 0.0;  // J_{k+1}
  double curr = 1.0;  // J_k, arbitrary scale
  double norm = 0.0;  // J_0 + 2 sum_{k even > 0} J_k
  double result = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = k * two_over_x * curr - next;  // J_{k-1}
    next = curr;
    curr = prev;
    if (std::abs(curr) > kBig) {
      curr *= kSmall;
      next *= kSmall;
      norm *= kSmall;
      result *= kSmall;
    }
    const int index = k - 1;
    if (index == l) result = curr;
    if (index > 0 && index % 2 == 0) norm += 2.0 * curr;
  }
  norm += curr;
  return result / norm;
}

}  // namespace

double bessel_j(int l, double x) {
  if (l < 0) {
    throw InvalidArgument("bessel_j: order must be >= 0");
  }
  if (!(x >= 0.0)) {
    throw InvalidArgument("bessel_j: argument must be >= 0");
  }
  if (x > kBesselMaxArgument) {
    throw InvalidArgument("overflow-range: bessel_j argument " + std::to_string(x) + " outside supported window");
  }
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  if (x < 1.0) return bessel_series(l, x);
  return bessel_miller(l, x);
}

namespace {

double log_factorial(int n) { return std::lgamma(n + 1.0); }

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// i^k for any integer k, exact.
std::complex<double> i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

}  // namespace

LgConstants lg_constants(int m, int l) {
  if (m < 0) {
    throw InvalidArgument("lg_constants: radial index must be >= 0");
  }
  const int al = std::abs(l);
  LgConstants c;
  c.m = m;
  c.l = l;
  if (m + al > 20) {
    c.norm = std::exp(0.5 * (log_factorial(m) - log_factorial(m + al)) - 0.5 * std::log(std::numbers::pi));
  } else {
    c.norm = std::sqrt(factorial(m) / (std::numbers::pi * factorial(m + al)));
  }
  // [sign l]^l is (-1)^|l| for l < 0 and 1 otherwise; e^{-i pi m} = i^{-2m}.
  const int sign_power = (l < 0 && al % 2 == 1) ? 2 : 0;
  c.phase = i_power(sign_power - 2 * m + l);
  return c;
}

}  // namespace beamgram::specfun
