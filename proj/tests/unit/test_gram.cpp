#include <cmath>
#include <complex>
#include <cstdlib>
#include <cstring>
#include <numbers>

#include <gtest/gtest.h>

#include <beamgram/errors.hpp>
#include <beamgram/gram.hpp>
#include <beamgram/parallel.hpp>
#include <beamgram/quadrature.hpp>
#include <beamgram/specfun.hpp>

#include "property.hpp"

namespace gr = beamgram::gram;
using beamgram::BeamConfig;
using beamgram::ModeIndex;
using beamgram::testing::describe;
using beamgram::testing::for_all;
using beamgram::testing::uniform;
using beamgram::testing::uniform_int;
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

BeamConfig config(double f, int m_max, std::vector<int> ls) {
  BeamConfig cfg;
  cfg.f = f;
  cfg.m_max = m_max;
  cfg.l_set = std::move(ls);
  return cfg;
}

// Independent path: plain composite Gauss on [1/f, 1/f + 12] of the real
// radial product, ignoring the library's tail transform.
double delta_f_reference(int m, int m2, int l, double f) {
  const double a = 1.0 / f;
  const auto rule = beamgram::quadrature::composite_gauss_legendre(48, 20, a, a + 12.0);
  return rule.integrate([&](double k) {
    return 2.0 * kPi * k * beamgram::modes::lg_radial_spectrum(m, l, k) * beamgram::modes::lg_radial_spectrum(m2, l, k);
  });
}

}  // namespace

TEST(DeltaF, GaussianClosedForm) {
  EXPECT_NEAR(gr::delta_f(0, 0, 0, 0.5).real(), std::exp(-4.0), 1e-12);
  EXPECT_NEAR(gr::delta_f(0, 0, 0, 0.5).real(), 1.831563889e-2, 1e-11);
  for (double f : {0.2, 0.3, 0.7, 1.0, 2.0}) {
    EXPECT_NEAR(gr::delta_f(0, 0, 0, f).real(), std::exp(-1.0 / (f * f)), 1e-12) << f;
  }
}

TEST(DeltaF, VortexClosedForm) {
  EXPECT_NEAR(gr::delta_f(0, 0, 1, 1.0).real(), 2.0 * std::exp(-1.0), 1e-12);
  EXPECT_NEAR(gr::delta_f(0, 0, 1, 1.0).real(), 0.7357588823, 1e-10);
  for (double f : {0.3, 0.5, 1.5}) {
    const double u = 1.0 / (f * f);
    EXPECT_NEAR(gr::delta_f(0, 0, 1, f).real(), (1.0 + u) * std::exp(-u), 1e-12) << f;
  }
}

TEST(DeltaF, OffDiagonalClosedForm) {
  const cplx d = gr::delta_f(0, 1, 1, 1.0);
  EXPECT_NEAR(d.real(), std::exp(-1.0) / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(d.real(), 0.2601300475, 1e-10);
  EXPECT_EQ(d.imag(), 0.0);
  for (double f : {0.4, 0.8, 1.3}) {
    EXPECT_NEAR(gr::delta_f(0, 1, 1, f).real(), std::exp(-1.0 / (f * f)) / (std::sqrt(2.0) * std::pow(f, 4)), 1e-12);
  }
}

TEST(DeltaF, MatchesPlainQuadrature) {
  for (int l = -2; l <= 2; ++l) {
    for (int m = 0; m <= 3; ++m) {
      for (int m2 = 0; m2 <= 3; ++m2) {
        const double f = 0.6;
        const cplx phase = std::conj(beamgram::specfun::lg_constants(m, l).phase) *
                           beamgram::specfun::lg_constants(m2, l).phase;
        EXPECT_NEAR(std::abs(gr::delta_f(m, m2, l, f) - phase * delta_f_reference(m, m2, l, f)), 0.0, 1e-12)
            << m << ' ' << m2 << ' ' << l;
      }
    }
  }
}

TEST(DeltaF, RejectsBadInput) {
  EXPECT_THROW(gr::delta_f(0, 0, 0, 0.0), beamgram::InvalidArgument);
  EXPECT_THROW(gr::delta_f(0, 0, 0, -1.0), beamgram::InvalidArgument);
  EXPECT_THROW(gr::delta_f(-1, 0, 0, 0.5), beamgram::InvalidArgument);
}

TEST(DeltaF, PropertyNonnegativeAndMonotoneInF) {
  for_all(
      41u, 150,
      [](std::mt19937& rng) {
        const double f1 = uniform(rng, 0.1, 2.0);
        return std::tuple{uniform_int(rng, 0, 5), uniform_int(rng, -3, 3), f1, f1 + uniform(rng, 1e-3, 0.5)};
      },
      [](const auto& in) -> std::string {
        const auto [m, l, f1, f2] = in;
        const double a = gr::delta_f(m, m, l, f1).real();
        const double b = gr::delta_f(m, m, l, f2).real();
        if (a < 0.0 || b < 0.0) return describe("negative", m, l, f1, f2, a, b);
        if (b < a) return describe("decreasing", m, l, f1, f2, a, b);
        return {};
      });
}

TEST(GramMatrix, SingleGaussianEntry) {
  const auto g = gr::gram_matrix(config(0.2, 0, {0}));
  EXPECT_NEAR(g.delta_block(0)(0, 0).real() / std::exp(-25.0), 1.0, 1e-12);
  EXPECT_NEAR(1.0 - g.entry(0, 0, 0, 0).real(), 1.389e-11, 1e-14);
}

TEST(GramMatrix, NearIdentityAtSmallF) {
  for (double f : {0.05, 0.1, 0.15}) {
    const auto g = gr::gram_matrix(config(f, 2, {-1, 0, 1}));
    for (const auto& b : g.blocks) {
      EXPECT_LE((b - Eigen::MatrixXcd::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff(), 1e-10) << f;
    }
  }
}

TEST(GramMatrix, OffDiagonalIsMinusDeltaF) {
  const auto g = gr::gram_matrix(config(1.0, 1, {1}));
  const cplx F = g.entry(0, 1, 1, 1);
  EXPECT_NEAR(F.real(), -0.2601300475, 1e-10);
  EXPECT_EQ(F, -g.delta_block(1)(0, 1));
  EXPECT_NE(F, cplx(0.0, 0.0));
}

TEST(GramMatrix, BlockLayoutAndCrossL) {
  const auto g = gr::gram_matrix(config(0.7, 3, {-2, 0, 5}));
  ASSERT_EQ(g.blocks.size(), 3u);
  EXPECT_EQ(g.block(5).rows(), 4);
  EXPECT_EQ(g.entry(1, -2, 1, 0), cplx(0.0, 0.0));
  EXPECT_THROW(g.block(1), beamgram::InvalidArgument);
}

TEST(GramMatrix, ExactlyHermitianWithBoundedSpectrum) {
  for (double f : {0.3, 0.6, 1.0, 2.5}) {
    const auto g = gr::gram_matrix(config(f, 10, {-3, -1, 0, 2, 3}));
    for (const auto& b : g.blocks) {
      EXPECT_EQ((b - b.adjoint()).cwiseAbs().maxCoeff(), 0.0);
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b, Eigen::EigenvaluesOnly);
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10) << f;
      EXPECT_LE(es.eigenvalues().maxCoeff(), 1.0 + 1e-10) << f;
    }
  }
}

TEST(GramMatrix, AgreesWithDiscOracle) {
  for (double f : {0.3, 0.6, 1.0}) {
    const auto cfg = config(f, 4, {-3, -2, -1, 0, 1, 2, 3});
    const auto g = gr::gram_matrix(cfg);
    for (int l : cfg.l_set) {
      for (int m = 0; m <= 4; ++m) {
        for (int m2 = 0; m2 <= 4; ++m2) {
          const cplx o = gr::overlap_2d_oracle(ModeIndex{1, 1, m, l}, ModeIndex{1, 1, m2, l}, cfg);
          EXPECT_NEAR(std::abs(o - g.entry(m, l, m2, l)), 0.0, 1e-9) << f << ' ' << m << ' ' << m2 << ' ' << l;
        }
      }
    }
  }
}

TEST(GramMatrix, UnrestrictedMaskGivesIdentityExactly) {
  const auto g = gr::gram_matrix(config(1.0, 8, {-2, 0, 3}), gr::HomogeneousMask::unrestricted);
  for (const auto& b : g.blocks) {
    EXPECT_TRUE(b == Eigen::MatrixXcd::Identity(b.rows(), b.cols()));
  }
}

TEST(GramMatrix, IndependentOfThreadCap) {
  const auto cfg = config(0.8, 6, {-1, 0, 1, 2});
  ::setenv("BEAMGRAM_THREADS", "1", 1);
  const auto a = gr::gram_matrix(cfg);
  ::setenv("BEAMGRAM_THREADS", "8", 1);
  const auto b = gr::gram_matrix(cfg);
  ::unsetenv("BEAMGRAM_THREADS");
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    EXPECT_EQ(std::memcmp(a.blocks[i].data(), b.blocks[i].data(), sizeof(cplx) * a.blocks[i].size()), 0);
  }
}

TEST(DiscOracle, StructuralZeros) {
  const auto cfg = config(0.5, 0, {0});
  for (int l = -3; l <= 3; ++l) {
    for (int l2 = -3; l2 <= 3; ++l2) {
      if (l == l2) continue;
      EXPECT_LE(std::abs(gr::overlap_2d_oracle(ModeIndex{1, 1, 1, l}, ModeIndex{1, 1, 2, l2}, cfg)), 1e-12);
    }
  }
  EXPECT_EQ(gr::overlap_2d_oracle(ModeIndex{1, 1, 0, 0}, ModeIndex{-1, 1, 0, 0}, cfg), cplx(0.0, 0.0));
  EXPECT_THROW(gr::overlap_2d_oracle(ModeIndex{1, 2, 0, 0}, ModeIndex{1, 1, 0, 0}, cfg), beamgram::InvalidArgument);
}

TEST(DiscOracle, GaussianSelfOverlap) {
  const cplx o = gr::overlap_2d_oracle(ModeIndex{}, ModeIndex{}, config(0.5, 0, {0}));
  EXPECT_NEAR(std::abs(o - (1.0 - std::exp(-4.0))), 0.0, 1e-12);
}

TEST(DiscOracle, WaistDoesNotChangeOverlaps) {
  auto cfg = config(0.7, 0, {0});
  const cplx a = gr::overlap_2d_oracle(ModeIndex{1, 1, 1, 2}, ModeIndex{1, 1, 3, 2}, cfg);
  cfg.w0 = 3.5;
  const cplx b = gr::overlap_2d_oracle(ModeIndex{1, 1, 1, 2}, ModeIndex{1, 1, 3, 2}, cfg);
  EXPECT_NEAR(std::abs(a - b), 0.0, 1e-13);
}

TEST(ProjectorDefect, ScalarClosedForm) {
  for (double f : {0.5, 1.0, 2.0}) {
    const double e = std::exp(-1.0 / (f * f));
    const auto d = gr::projector_defect(gr::gram_matrix(config(f, 0, {0})));
    EXPECT_NEAR(d.idempotence, (1.0 - e) * e, 1e-13) << f;
  }
  EXPECT_NEAR(gr::projector_defect(gr::gram_matrix(config(1.0, 0, {0}))).idempotence, 0.2325, 1e-4);
}

TEST(ProjectorDefect, VacuumNormEqualsIdempotenceNorm) {
  // F^2 - F = -F Delta F for F = I - Delta F.
  for (double f : {0.4, 1.0}) {
    for (int m_max : {1, 3, 7}) {
      const auto g = gr::gram_matrix(config(f, m_max, {0, 2}));
      for (std::size_t b = 0; b < g.blocks.size(); ++b) {
        const Eigen::MatrixXcd lhs = g.blocks[b] * g.blocks[b] - g.blocks[b];
        const Eigen::MatrixXcd rhs = -g.blocks[b] * g.delta_blocks[b];
        EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-15);
      }
    }
  }
}

TEST(ProjectorDefect, TrendAtFOneFromZeroToSixteen) {
  std::vector<double> series;
  for (int m_max : {0, 2, 4, 8, 16}) {
    series.push_back(gr::projector_defect(gr::gram_matrix(config(1.0, m_max, {0}))).idempotence);
  }
  for (std::size_t i = 1; i < series.size(); ++i) {
    EXPECT_LT(series[i], series[i - 1]) << "m_max index " << i;
  }
}

TEST(ProjectorDefect, SmallFBoundForEveryTruncation) {
  for (double f : {0.1, 0.15}) {
    for (int m_max : {2, 4, 8, 16}) {
      const auto d = gr::projector_defect(gr::gram_matrix(config(f, m_max, {0})));
      EXPECT_LE(d.idempotence, 1e-10) << "f=" << f << " m_max=" << m_max;
      EXPECT_LE(d.vacuum, 1e-10) << "f=" << f << " m_max=" << m_max;
    }
  }
}

TEST(ProjectorDefect, SmallFBoundForLowTruncation) {
  for (double f : {0.1, 0.15}) {
    for (int m_max : {0, 1, 2}) {
      const auto d = gr::projector_defect(gr::gram_matrix(config(f, m_max, {0})));
      EXPECT_LE(d.idempotence, 1e-10) << "f=" << f << " m_max=" << m_max;
    }
  }
}

TEST(ProjectorDefect, DecreasesFromFourToSixteen) {
  std::vector<double> series;
  for (int m_max : {4, 8, 16}) {
    series.push_back(gr::projector_defect(gr::gram_matrix(config(1.0, m_max, {0}))).idempotence);
  }
  EXPECT_LT(series[1], series[0]);
  EXPECT_LT(series[2], series[1]);
}

TEST(TailAsymptotics, GaussianLogIsMinusInverseSquare) {
  const std::vector<double> fs{0.2, 0.3, 0.5, 1.0};
  for (const auto& r : gr::tail_asymptotics_report(0, 0, fs)) {
    EXPECT_FALSE(r.underflow);
    EXPECT_NEAR(r.log_delta_f, r.minus_inv_f2, 1e-10) << r.f;
  }
}

TEST(TailAsymptotics, VortexLogHasCorrection) {
  const std::vector<double> fs{0.25, 0.5, 1.0};
  for (const auto& r : gr::tail_asymptotics_report(0, 1, fs)) {
    EXPECT_NEAR(r.log_delta_f, -1.0 / (r.f * r.f) + std::log(1.0 + 1.0 / (r.f * r.f)), 1e-10) << r.f;
  }
}

TEST(TailAsymptotics, RatioToEighthPowerIsSmallAndDecreasing) {
  const std::vector<double> fs{0.5, 0.4, 0.3, 0.25, 0.2};
  const auto rows = gr::tail_asymptotics_report(0, 0, fs);
  EXPECT_NEAR(rows[2].ratio_f8, std::exp(-1.0 / 0.09) / std::pow(0.3, 8), 1e-10 * rows[2].ratio_f8);
  EXPECT_LT(rows[2].ratio_f8, 1.0);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].ratio_f8, rows[i - 1].ratio_f8);
}

TEST(TailAsymptotics, UnderflowIsFlagged) {
  const std::vector<double> fs{0.03};
  const auto rows = gr::tail_asymptotics_report(0, 0, fs);
  EXPECT_TRUE(rows[0].underflow);
  EXPECT_EQ(rows[0].delta_f, 0.0);
  EXPECT_TRUE(std::isinf(rows[0].log_delta_f));
}

TEST(TailAsymptotics, RejectsOutOfRangeF) {
  const std::vector<double> bad{1.5};
  EXPECT_THROW(gr::tail_asymptotics_report(0, 0, bad), beamgram::InvalidArgument);
  const std::vector<double> zero{0.0};
  EXPECT_THROW(gr::tail_asymptotics_report(0, 0, zero), beamgram::InvalidArgument);
}

TEST(Parallel, EveryIndexOnceAndErrorsPropagate) {
  std::vector<int> hits(1000, 0);
  beamgram::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(beamgram::parallel_for(10,
                                      [](std::size_t i) {
                                        if (i == 7) throw beamgram::NumericError("boom");
                                      }),
               beamgram::NumericError);
  ::setenv("BEAMGRAM_THREADS", "1", 1);
  EXPECT_EQ(beamgram::worker_count(), 1u);
  ::unsetenv("BEAMGRAM_THREADS");
}
