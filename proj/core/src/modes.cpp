#include "beamgram/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "beamgram/errors.hpp"
#include "beamgram/quadrature.hpp"
#include "beamgram/specfun.hpp"

namespace beamgram {

void BeamConfig::validate() const {
  if (!std::isfinite(w0) || !(w0 > 0.0)) {
    throw InvalidArgument("beam config: w0 must be finite and > 0");
  }
  if (!std::isfinite(f) || !(f > 0.0)) {
    throw InvalidArgument("beam config: f must be finite and > 0");
  }
  if (m_max < 0) {
    throw InvalidArgument("beam config: m_max must be >= 0");
  }
  if (l_set.empty()) {
    throw InvalidArgument("beam config: l_set must not be empty");
  }
  const std::set<int> unique(l_set.begin(), l_set.end());
  if (unique.size() != l_set.size()) {
    throw InvalidArgument("beam config: l_set contains duplicates");
  }
}

namespace modes {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double lg_radial_spectrum(int m, int l, double kappa) {
  const int al = std::abs(l);
  const specfun::LgConstants c = specfun::lg_constants(m, l);
  const double k2 = kappa * kappa;
  return c.norm * std::pow(kappa, al) * std::exp(-0.5 * k2) * specfun::laguerre_assoc(m, al, k2);
}

std::complex<double> lg_spectrum(int m, int l, double kappa) {
  const specfun::LgConstants c = specfun::lg_constants(m, l);
  return kTwoPi * c.phase * lg_radial_spectrum(m, l, kappa);
}

double spectrum_cutoff(int m, int l, double rel) {
  const int al = std::abs(l);
  const double turning = std::sqrt(4.0 * m + 2.0 * al + 2.0);
  double peak = 0.0;
  for (double k = 0.0; k <= turning + 1.0; k += 0.05) {
    peak = std::max(peak, std::abs(k * lg_radial_spectrum(m, l, k)));
  }
  double k = turning + 1.0;
  while (std::abs(k * lg_radial_spectrum(m, l, k)) > rel * peak) {
    k += 0.25;
  }
  return k;
}

std::complex<double> mode_kernel(const ModeIndex& j, TransverseMomentum q, const BeamConfig& cfg) {
  const double qmag = std::hypot(q.qx, q.qy);
  const double theta = std::atan2(q.qy, q.qx);
  const std::complex<double> azimuthal = std::polar(1.0, -j.l * theta);
  return azimuthal * cfg.w0 * lg_spectrum(j.m, j.l, cfg.w0 * qmag) / kTwoPi;
}

std::complex<double> lg_object_plane(int m, int l, double rho, double theta) {
  return std::polar(1.0, l * theta) * lg_radial_spectrum(m, l, rho);
}

namespace {

std::complex<double> fourier_with_orders(int m, int l, double kappa, double theta_kappa, int panels, int n_angle,
                                         double radius) {
  const auto radial = quadrature::composite_gauss_legendre(panels, 16, 0.0, radius);
  const auto angular = quadrature::periodic_trapezoid(n_angle);
  std::complex<double> total{};
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double rho = radial.nodes[i];
    const double radial_part = lg_radial_spectrum(m, l, rho);
    std::complex<double> ring{};
    for (std::size_t k = 0; k < angular.size(); ++k) {
      const double th = angular.nodes[k];
      // e^{i kappa.rho} conj(Psi) = e^{i kappa rho cos(th - th_k)} e^{-i l th} psi(rho)
      ring += angular.weights[k] * std::polar(1.0, kappa * rho * std::cos(th - theta_kappa) - l * th);
    }
    total += radial.weights[i] * rho * radial_part * ring;
  }
  return total;
}

}  // namespace

std::complex<double> lg_fourier_numeric(int m, int l, double kappa, double theta_kappa) {
  const double radius = spectrum_cutoff(m, l);
  const int panels = static_cast<int>(std::ceil(radius / 0.5));
  const int n_angle = 2 * static_cast<int>(std::ceil((kappa * radius + std::abs(l) + 40.0) / 2.0));
  const auto coarse = fourier_with_orders(m, l, kappa, theta_kappa, panels, n_angle, radius);
  const auto fine = fourier_with_orders(m, l, kappa, theta_kappa, 2 * panels, 2 * n_angle, radius);
  const double diff = std::abs(fine - coarse);
  if (diff > 1e-11) {
    throw NoConvergence("no-convergence: lg_fourier_numeric: nested quadrature not self-converged", fine.real(), fine.imag(), diff);
  }
  return fine;
}

std::complex<double> lg_fourier_closed(int m, int l, double kappa, double theta_kappa) {
  return std::polar(1.0, -l * theta_kappa) * lg_spectrum(m, l, kappa);
}

double fourier_identity_check(int m, int l, std::span<const double> kappa_grid) {
  static constexpr double kAngles[] = {0.0, 1.1, 2.5};
  double worst = 0.0;
  for (double kappa : kappa_grid) {
    if (!(kappa >= 0.0)) {
      throw InvalidArgument("fourier_identity_check: kappa must be >= 0");
    }
    for (double th : kAngles) {
      const auto numeric = lg_fourier_numeric(m, l, kappa, th);
      worst = std::max(worst, std::abs(numeric - lg_fourier_closed(m, l, kappa, th)));
    }
  }
  return worst;
}

std::vector<double> default_kappa_grid() {
  std::vector<double> grid(81);
  for (int i = 0; i < 81; ++i) grid[i] = kDefaultKappaMax * i / 80.0;
  return grid;
}

}  // namespace modes
}  // namespace beamgram
