#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include <beamgram/errors.hpp>
#include <beamgram/modes.hpp>
#include <beamgram/quadrature.hpp>

#include "property.hpp"

namespace md = beamgram::modes;
using beamgram::BeamConfig;
using beamgram::ModeIndex;
using beamgram::TransverseMomentum;
using beamgram::testing::describe;
using beamgram::testing::for_all;
using beamgram::testing::uniform;
using beamgram::testing::uniform_int;
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

TEST(BeamConfig, Validation) {
  BeamConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.f = 0.0;
  EXPECT_THROW(cfg.validate(), beamgram::InvalidArgument);
  cfg.f = 0.5;
  cfg.w0 = -1.0;
  EXPECT_THROW(cfg.validate(), beamgram::InvalidArgument);
  cfg.w0 = 1.0;
  cfg.m_max = -1;
  EXPECT_THROW(cfg.validate(), beamgram::InvalidArgument);
  cfg.m_max = 0;
  cfg.l_set = {};
  EXPECT_THROW(cfg.validate(), beamgram::InvalidArgument);
  cfg.l_set = {1, 1};
  EXPECT_THROW(cfg.validate(), beamgram::InvalidArgument);
}

TEST(BeamConfig, RayleighLengthTimesF) {
  for_all(
      31u, 200, [](std::mt19937& rng) { return std::tuple{uniform(rng, 1e-3, 1e3), uniform(rng, 1e-3, 3.0)}; },
      [](const auto& in) -> std::string {
        const auto [w0, f] = in;
        BeamConfig cfg;
        cfg.w0 = w0;
        cfg.f = f;
        const double prod = cfg.rayleigh_length() * f;
        if (std::abs(prod - w0) > 2.0 * std::numeric_limits<double>::epsilon() * w0) return describe(w0, f, prod);
        return {};
      });
}

TEST(RadialSpectrum, Examples) {
  EXPECT_NEAR(md::lg_radial_spectrum(0, 0, 0.0), 0.5641895835, 1e-10);
  EXPECT_EQ(md::lg_radial_spectrum(0, 1, 0.0), 0.0);
  EXPECT_NEAR(md::lg_radial_spectrum(1, 0, 1.0), 0.0, 1e-16);
}

TEST(Spectrum, Examples) {
  EXPECT_NEAR(std::abs(md::lg_spectrum(0, 0, 0.0) - 2.0 * std::sqrt(kPi)), 0.0, 1e-14);
  EXPECT_NEAR(md::lg_spectrum(0, 0, 0.0).real(), 3.5449077, 1e-7);
  for (double k : {0.0, 0.3, 1.7, 3.0}) {
    const cplx v = md::lg_spectrum(1, 0, k);
    EXPECT_NEAR(std::abs(v + 2.0 * kPi * md::lg_radial_spectrum(1, 0, k)), 0.0, 1e-14);
  }
}

TEST(Spectrum, GaussianNormalisation) {
  const auto rule = beamgram::quadrature::composite_gauss_legendre(20, 20, 0.0, 12.0);
  const double v = rule.integrate([](double k) { return k * std::norm(md::lg_spectrum(0, 0, k)); });
  EXPECT_NEAR(v, 2.0 * kPi, 1e-12);
}

TEST(Spectrum, RadialOrthonormality) {
  const auto rule = beamgram::quadrature::composite_gauss_legendre(32, 24, 0.0, 16.0);
  for (int l = -4; l <= 4; ++l) {
    for (int m = 0; m <= 6; ++m) {
      for (int m2 = 0; m2 <= 6; ++m2) {
        const cplx v =
            rule.integrate([&](double k) { return k * std::conj(md::lg_spectrum(m, l, k)) * md::lg_spectrum(m2, l, k); });
        EXPECT_NEAR(std::abs(v - (m == m2 ? 2.0 * kPi : 0.0)), 0.0, 1e-10) << m << ' ' << m2 << ' ' << l;
      }
    }
  }
}

TEST(Spectrum, CutoffBoundsTheTail) {
  for (int m = 0; m <= 6; ++m) {
    for (int l = -4; l <= 4; ++l) {
      const double c = md::spectrum_cutoff(m, l);
      EXPECT_GT(c, 0.0);
      EXPECT_LT(std::abs(c * md::lg_radial_spectrum(m, l, c)), 1e-15) << m << ' ' << l;
    }
  }
  EXPECT_LT(md::spectrum_cutoff(6, 4, 1e-8), md::spectrum_cutoff(6, 4, 1e-13));
  EXPECT_LE(md::spectrum_cutoff(0, 0, 1e-12), md::kDefaultKappaMax);
}

TEST(ModeKernel, AngularIndependenceForLZero) {
  BeamConfig cfg;
  const ModeIndex j{1, 1, 2, 0};
  const cplx ref = md::mode_kernel(j, {0.8, 0.0}, cfg);
  for (double t : {0.3, 1.4, 2.9, 4.0}) {
    EXPECT_NEAR(std::abs(md::mode_kernel(j, {0.8 * std::cos(t), 0.8 * std::sin(t)}, cfg) - ref), 0.0, 1e-15);
  }
}

TEST(ModeKernel, VortexNull) {
  BeamConfig cfg;
  EXPECT_EQ(md::mode_kernel(ModeIndex{1, 1, 0, 1}, {0.0, 0.0}, cfg), cplx(0.0, 0.0));
}

TEST(ModeKernel, PropertyRotationInvariantModulusAndPhaseWinding) {
  BeamConfig cfg;
  cfg.w0 = 1.3;
  for_all(
      32u, 300,
      [](std::mt19937& rng) {
        return std::tuple{uniform_int(rng, 0, 5), uniform_int(rng, -4, 4), uniform(rng, 0.01, 4.0),
                          uniform(rng, 0.0, 2 * kPi), uniform(rng, 0.0, 2 * kPi)};
      },
      [&](const auto& in) -> std::string {
        const auto [m, l, q, t1, t2] = in;
        const ModeIndex j{1, 1, m, l};
        const cplx a = md::mode_kernel(j, {q * std::cos(t1), q * std::sin(t1)}, cfg);
        const cplx b = md::mode_kernel(j, {q * std::cos(t2), q * std::sin(t2)}, cfg);
        if (std::abs(std::abs(a) - std::abs(b)) > 1e-13 * std::max(1.0, std::abs(a))) return describe(m, l, q, "modulus");
        const cplx expected = a * std::polar(1.0, -l * (t2 - t1));
        if (std::abs(b - expected) > 1e-12 * std::max(1.0, std::abs(a))) return describe(m, l, q, "phase");
        return {};
      });
}

TEST(ModeKernel, ScalingWithWaist) {
  BeamConfig cfg;
  cfg.w0 = 2.0;
  const ModeIndex j{1, 1, 1, 2};
  const double q = 0.4;
  const cplx u = md::mode_kernel(j, {q, 0.0}, cfg);
  EXPECT_NEAR(std::abs(u - cfg.w0 * md::lg_spectrum(1, 2, cfg.w0 * q) / (2.0 * kPi)), 0.0, 1e-15);
}

TEST(ModeKernel, CompletenessResidualShrinks) {
  // Parseval defect of a smooth off-centre Gaussian on the mode set m <= M,
  // |l| <= L, in kappa units.
  const auto radial = beamgram::quadrature::composite_gauss_legendre(24, 16, 0.0, 12.0);
  const auto angular = beamgram::quadrature::periodic_trapezoid(128);
  auto g = [](double k, double t) {
    const double x = k * std::cos(t) - 0.7;
    const double y = k * std::sin(t) - 0.3;
    return std::exp(-(x * x + y * y));
  };
  double norm2 = 0.0;
  for (std::size_t i = 0; i < radial.size(); ++i) {
    for (std::size_t k = 0; k < angular.size(); ++k) {
      norm2 += radial.weights[i] * radial.nodes[i] * angular.weights[k] * std::pow(g(radial.nodes[i], angular.nodes[k]), 2);
    }
  }
  BeamConfig cfg;
  auto coefficient = [&](int m, int l) {
    cplx c{};
    for (std::size_t i = 0; i < radial.size(); ++i) {
      for (std::size_t k = 0; k < angular.size(); ++k) {
        const double kap = radial.nodes[i];
        const double t = angular.nodes[k];
        const cplx u = md::mode_kernel(ModeIndex{1, 1, m, l}, {kap * std::cos(t), kap * std::sin(t)}, cfg);
        c += radial.weights[i] * kap * angular.weights[k] * std::conj(u) * g(kap, t);
      }
    }
    return c;
  };
  double prev = norm2;
  for (int ml : {1, 3, 6, 10}) {
    double captured = 0.0;
    for (int l = -ml; l <= ml; ++l) {
      for (int m = 0; m <= ml; ++m) captured += std::norm(coefficient(m, l));
    }
    const double defect = norm2 - captured;
    EXPECT_LT(defect, prev) << ml;
    EXPECT_GT(defect, -1e-12);
    prev = defect;
  }
  EXPECT_LT(prev, 1e-3 * norm2);
}

TEST(ObjectPlane, Examples) {
  EXPECT_NEAR(md::lg_object_plane(0, 0, 0.0, 1.2).real(), 1.0 / std::sqrt(kPi), 1e-15);
  const cplx a = md::lg_object_plane(0, 2, 0.9, 0.0);
  const cplx b = md::lg_object_plane(0, 2, 0.9, 0.4);
  EXPECT_NEAR(std::abs(b - a * std::polar(1.0, 0.8)), 0.0, 1e-15);
}

TEST(ObjectPlane, UnitNorm) {
  const auto radial = beamgram::quadrature::composite_gauss_legendre(16, 16, 0.0, 10.0);
  const auto angular = beamgram::quadrature::periodic_trapezoid(16);
  for (auto [m, l] : {std::pair{0, 0}, std::pair{1, 2}, std::pair{3, -1}}) {
    double n = 0.0;
    for (std::size_t i = 0; i < radial.size(); ++i) {
      for (std::size_t k = 0; k < angular.size(); ++k) {
        n += radial.weights[i] * radial.nodes[i] * angular.weights[k] *
             std::norm(md::lg_object_plane(m, l, radial.nodes[i], angular.nodes[k]));
      }
    }
    EXPECT_NEAR(n, 1.0, 1e-12) << m << ' ' << l;
  }
}

TEST(FourierIdentity, ValueAtOrigin) {
  EXPECT_NEAR(std::abs(md::lg_fourier_closed(0, 0, 0.0, 0.0) - 3.5449077), 0.0, 1e-7);
  EXPECT_NEAR(std::abs(md::lg_fourier_numeric(0, 0, 0.0, 0.0) - 2.0 * std::sqrt(kPi)), 0.0, 1e-10);
}

TEST(FourierIdentity, ZeroOneOnDefaultGrid) {
  EXPECT_LE(md::fourier_identity_check(0, 1, md::default_kappa_grid()), 1e-8);
}

TEST(FourierIdentity, TwoMinusOneOnDefaultGrid) {
  EXPECT_LE(md::fourier_identity_check(2, -1, md::default_kappa_grid()), 1e-8);
}

TEST(FourierIdentity, DefaultGridCoversZeroToEight) {
  const auto g = md::default_kappa_grid();
  ASSERT_EQ(g.size(), 81u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 8.0);
  const std::vector<double> bad{-1.0};
  EXPECT_THROW(md::fourier_identity_check(0, 0, bad), beamgram::InvalidArgument);
}
