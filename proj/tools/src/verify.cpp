#include "beamgram/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include <beamgram/errors.hpp>
#include <beamgram/fields.hpp>
#include <beamgram/gram.hpp>
#include <beamgram/modes.hpp>
#include <beamgram/parallel.hpp>
#include <beamgram/quadrature.hpp>
#include <beamgram/specfun.hpp>
#include <beamgram/states.hpp>

#include "beamgram/cli/output.hpp"

namespace beamgram::cli {

namespace {

using nlohmann::ordered_json;
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Measurement {
  double measured = 0.0;
  ordered_json data = ordered_json::object();
};

struct CheckDef {
  std::string name;
  std::string suite;
  int criterion = 0;
  std::string description;
  Comparison comparison = Comparison::le;
  double tolerance = 0.0;
  bool error_bound = true;  // global tolerance override applies
  std::function<Measurement()> run;
};

ordered_json complex_json(cplx z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; }

// Largest ratio between successive entries; < 1 means strictly decreasing.
double max_successive_ratio(const std::vector<double>& series) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double r = series[i - 1] > 0.0 ? series[i] / series[i - 1] : std::numeric_limits<double>::infinity();
    worst = std::max(worst, r);
  }
  return worst;
}

// Power series for J_l(x) in long double; independent of the library's Bessel.
double bessel_series(int l, double x) {
  long double term = 1.0L;
  for (int k = 1; k <= l; ++k) term *= (x / 2.0L) / k;
  long double sum = term;
  const long double q = -(x * x) / 4.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * (k + l));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

// --- quadrature ----------------------------------------------------------------

Measurement gauss_exactness() {
  Measurement out;
  double worst = 0.0;
  for (int n = 1; n <= 24; ++n) {
    const auto rule = quadrature::gauss_legendre(n, 0.0, 1.0);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      const double v = rule.integrate([d](double x) { return std::pow(x, d); });
      worst = std::max(worst, std::abs(v * (d + 1) - 1.0));
    }
  }
  out.measured = worst;
  out.data["max_n"] = 24;
  return out;
}

Measurement gauss_exp() {
  Measurement out;
  const auto rule = quadrature::gauss_legendre(8, 0.0, 1.0);
  const double v = rule.integrate([](double x) { return std::exp(x); });
  out.measured = std::abs(v - (std::numbers::e - 1.0));
  out.data["value"] = v;
  return out;
}

Measurement periodic_self_convergence() {
  Measurement out;
  auto f = [](double t) { return 1.0 / std::sqrt(1.0 - 0.25 * std::sin(t) * std::sin(t)); };
  const double v64 = quadrature::periodic_trapezoid(64).integrate(f);
  const double v256 = quadrature::periodic_trapezoid(256).integrate(f);
  out.measured = std::abs(v64 - v256);
  out.data["n64"] = v64;
  out.data["n256"] = v256;
  return out;
}

Measurement tail_closed_forms() {
  Measurement out;
  double worst = 0.0;
  ordered_json rows = ordered_json::array();
  for (double a : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    auto g1 = [](double k) -> cplx { return 2.0 * k * std::exp(-k * k); };
    auto g3 = [](double k) -> cplx { return 2.0 * k * k * k * std::exp(-k * k); };
    const double v1 = quadrature::integrate_tail(g1, a, 1e-14).value.real();
    const double v3 = quadrature::integrate_tail(g3, a, 1e-14).value.real();
    const double e1 = std::exp(-a * a);
    const double e3 = (a * a + 1.0) * std::exp(-a * a);
    worst = std::max({worst, std::abs(v1 - e1), std::abs(v3 - e3)});
    rows.push_back({{"a", a}, {"linear", v1}, {"cubic", v3}});
  }
  out.measured = worst;
  out.data["rows"] = rows;
  return out;
}

// --- specfun -------------------------------------------------------------------

Measurement laguerre_recurrence() {
  Measurement out;
  std::mt19937 rng(20240611u);
  std::uniform_int_distribution<int> mdist(1, 20);
  std::uniform_int_distribution<int> adist(0, 10);
  std::uniform_real_distribution<double> xdist(0.0, 40.0);
  double worst = 0.0;
  for (int trial = 0; trial < 400; ++trial) {
    const int m = mdist(rng);
    const int a = adist(rng);
    const double x = xdist(rng);
    const double t1 = (m + 1) * specfun::laguerre_assoc(m + 1, a, x);
    const double t2 = (2 * m + a + 1 - x) * specfun::laguerre_assoc(m, a, x);
    const double t3 = (m + a) * specfun::laguerre_assoc(m - 1, a, x);
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
    worst = std::max(worst, std::abs(t1 - t2 + t3) / scale);
  }
  out.measured = worst;
  out.data["samples"] = 400;
  return out;
}

Measurement bessel_recurrence() {
  Measurement out;
  std::mt19937 rng(7331u);
  std::uniform_int_distribution<int> ldist(1, 20);
  std::uniform_real_distribution<double> xdist(0.5, 40.0);
  double worst = 0.0;
  for (int trial = 0; trial < 400; ++trial) {
    const int l = ldist(rng);
    const double x = xdist(rng);
    const double lhs = specfun::bessel_j(l - 1, x) + specfun::bessel_j(l + 1, x);
    const double rhs = 2.0 * l / x * specfun::bessel_j(l, x);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  out.measured = worst;
  out.data["samples"] = 400;
  return out;
}

Measurement bessel_series_oracle() {
  Measurement out;
  double worst = 0.0;
  for (int l = 0; l <= 10; ++l) {
    for (int i = 0; i <= 80; ++i) {
      const double x = 0.1 * i;
      worst = std::max(worst, std::abs(specfun::bessel_j(l, x) - bessel_series(l, x)));
    }
  }
  out.measured = worst;
  out.data["grid"] = "l=0..10, x=0:8:81";
  return out;
}

// --- modes ---------------------------------------------------------------------

Measurement radial_orthonormality() {
  Measurement out;
  const auto rule = quadrature::composite_gauss_legendre(32, 24, 0.0, 16.0);
  double worst = 0.0;
  for (int l = -4; l <= 4; ++l) {
    for (int m = 0; m <= 6; ++m) {
      for (int m2 = 0; m2 <= 6; ++m2) {
        const cplx v = rule.integrate([&](double k) {
          return k * std::conj(modes::lg_spectrum(m, l, k)) * modes::lg_spectrum(m2, l, k);
        });
        const double target = m == m2 ? 2.0 * kPi : 0.0;
        worst = std::max(worst, std::abs(v - target));
      }
    }
  }
  out.measured = worst;
  return out;
}

Measurement fourier_identity(int m, int l) {
  Measurement out;
  const auto grid = modes::default_kappa_grid();
  out.measured = modes::fourier_identity_check(m, l, grid);
  out.data["grid"] = "kappa=0:8:81, theta in {0, 1.1, 2.5}";
  return out;
}

// --- gram ----------------------------------------------------------------------

Measurement delta_f_closed(int l) {
  Measurement out;
  double worst = 0.0;
  ordered_json rows = ordered_json::array();
  for (double f : {0.3, 0.5, 1.0}) {
    const double v = gram::delta_f(0, 0, l, f).real();
    const double u = 1.0 / (f * f);
    const double closed = l == 0 ? std::exp(-u) : (1.0 + u) * std::exp(-u);
    worst = std::max(worst, std::abs(v - closed));
    rows.push_back({{"f", f}, {"quadrature", v}, {"closed", closed}});
  }
  out.measured = worst;
  out.data["rows"] = rows;
  return out;
}

Measurement nonorthogonality() {
  Measurement out;
  BeamConfig cfg;
  cfg.f = 1.0;
  cfg.m_max = 1;
  cfg.l_set = {1};
  const cplx F = gram::gram_matrix(cfg).entry(0, 1, 1, 1);
  const double target = std::exp(-1.0) / std::sqrt(2.0);
  out.measured = std::abs(std::abs(F) - target);
  out.data["F_01_11"] = complex_json(F);
  out.data["closed_abs"] = target;
  return out;
}

Measurement two_path_agreement() {
  Measurement out;
  BeamConfig cfg;
  cfg.f = 1.0;
  cfg.m_max = 1;
  cfg.l_set = {1};
  const cplx one_d = gram::gram_matrix(cfg).entry(0, 1, 1, 1);
  const cplx two_d = gram::overlap_2d_oracle(ModeIndex{1, 1, 0, 1}, ModeIndex{1, 1, 1, 1}, cfg);
  out.measured = std::abs(one_d - two_d);
  out.data["radial_1d"] = complex_json(one_d);
  out.data["disc_2d"] = complex_json(two_d);
  return out;
}

Measurement oracle_agreement() {
  Measurement out;
  const std::vector<double> fs{0.3, 0.6, 1.0};
  std::vector<double> worst(fs.size(), 0.0);
  parallel_for(fs.size(), [&](std::size_t i) {
    BeamConfig cfg;
    cfg.f = fs[i];
    cfg.m_max = 4;
    cfg.l_set = {-3, -2, -1, 0, 1, 2, 3};
    const auto g = gram::gram_matrix(cfg);
    for (int l : cfg.l_set) {
      for (int m = 0; m <= 4; ++m) {
        for (int m2 = 0; m2 <= 4; ++m2) {
          const cplx o = gram::overlap_2d_oracle(ModeIndex{1, 1, m, l}, ModeIndex{1, 1, m2, l}, cfg);
          worst[i] = std::max(worst[i], std::abs(o - g.entry(m, l, m2, l)));
        }
      }
    }
  });
  out.measured = *std::max_element(worst.begin(), worst.end());
  for (std::size_t i = 0; i < fs.size(); ++i) out.data["max_deviation_f_" + format_double(fs[i])] = worst[i];
  return out;
}

Measurement cross_l_orthogonality() {
  Measurement out;
  double worst = 0.0;
  std::size_t pairs = 0;
  for (double f : {0.5, 1.0}) {
    BeamConfig cfg;
    cfg.f = f;
    for (int l = -3; l <= 3; ++l) {
      for (int l2 = -3; l2 <= 3; ++l2) {
        if (l == l2) continue;
        for (int m = 0; m <= 2; ++m) {
          for (int m2 = 0; m2 <= 2; ++m2) {
            const cplx o = gram::overlap_2d_oracle(ModeIndex{1, 1, m, l}, ModeIndex{1, 1, m2, l2}, cfg);
            worst = std::max(worst, std::abs(o));
            ++pairs;
          }
        }
      }
    }
  }
  out.measured = worst;
  out.data["pairs"] = pairs;
  return out;
}

Measurement hermitian_exact() {
  Measurement out;
  double worst = 0.0;
  for (double f : {0.3, 0.6, 1.0, 2.0}) {
    BeamConfig cfg;
    cfg.f = f;
    cfg.m_max = 8;
    cfg.l_set = {-3, -2, -1, 0, 1, 2, 3};
    const auto g = gram::gram_matrix(cfg);
    for (const auto& b : g.blocks) worst = std::max(worst, (b - b.adjoint()).cwiseAbs().maxCoeff());
  }
  out.measured = worst;
  return out;
}

Measurement eigenvalue_range() {
  Measurement out;
  double worst = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double f : {0.3, 0.6, 1.0, 2.0}) {
    BeamConfig cfg;
    cfg.f = f;
    cfg.m_max = 8;
    cfg.l_set = {-3, -2, -1, 0, 1, 2, 3};
    const auto g = gram::gram_matrix(cfg);
    for (const auto& b : g.blocks) {
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b, Eigen::EigenvaluesOnly);
      const auto& ev = es.eigenvalues();
      lo = std::min(lo, ev.minCoeff());
      hi = std::max(hi, ev.maxCoeff());
      worst = std::max({worst, -ev.minCoeff(), ev.maxCoeff() - 1.0});
    }
  }
  out.measured = std::max(worst, 0.0);
  out.data["min_eigenvalue"] = lo;
  out.data["max_eigenvalue"] = hi;
  return out;
}

Measurement delta_f_monotone() {
  Measurement out;
  double worst = -std::numeric_limits<double>::infinity();
  for (int l = 0; l <= 2; ++l) {
    for (int m = 0; m <= 3; ++m) {
      double prev = -1.0;
      for (int i = 1; i <= 20; ++i) {
        const double f = 0.1 * i;
        const double v = gram::delta_f(m, m, l, f).real();
        if (v < 0.0) worst = std::max(worst, -v);
        if (prev >= 0.0) worst = std::max(worst, prev - v);
        prev = v;
      }
    }
  }
  out.measured = worst;
  out.data["f_grid"] = "0.1:2.0:20";
  return out;
}

std::vector<gram::ProjectorDefect> projector_series(double f, const std::vector<int>& m_maxes) {
  std::vector<gram::ProjectorDefect> out(m_maxes.size());
  parallel_for(m_maxes.size(), [&](std::size_t i) {
    BeamConfig cfg;
    cfg.f = f;
    cfg.m_max = m_maxes[i];
    cfg.l_set = {0};
    out[i] = gram::projector_defect(gram::gram_matrix(cfg));
  });
  return out;
}

Measurement projector_trend(bool vacuum) {
  Measurement out;
  const std::vector<int> m_maxes{2, 4, 8, 16};
  const auto series = projector_series(1.0, m_maxes);
  std::vector<double> values;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double v = vacuum ? series[i].vacuum : series[i].idempotence;
    values.push_back(v);
    rows.push_back({{"m_max", m_maxes[i]}, {"value", v}});
  }
  out.measured = max_successive_ratio(values);
  out.data["f"] = 1.0;
  out.data["series"] = rows;
  return out;
}

Measurement projector_small_f() {
  Measurement out;
  const std::vector<int> m_maxes{2, 4, 8, 16};
  double worst = 0.0;
  ordered_json rows = ordered_json::array();
  for (double f : {0.05, 0.1, 0.15}) {
    const auto series = projector_series(f, m_maxes);
    for (std::size_t i = 0; i < series.size(); ++i) {
      worst = std::max({worst, series[i].idempotence, series[i].vacuum});
      rows.push_back({{"f", f},
                      {"m_max", m_maxes[i]},
                      {"idempotence", series[i].idempotence},
                      {"vacuum", series[i].vacuum}});
    }
  }
  out.measured = worst;
  out.data["rows"] = rows;
  return out;
}

Measurement superpolynomial_decay() {
  Measurement out;
  const std::vector<double> fs{0.5, 0.4, 0.3, 0.25, 0.2};
  const auto rows = gram::tail_asymptotics_report(0, 0, fs);
  std::vector<double> ratios;
  ordered_json series = ordered_json::array();
  for (const auto& r : rows) {
    ratios.push_back(r.ratio_f8);
    series.push_back({{"f", r.f}, {"delta_f", r.delta_f}, {"ratio_f8", r.ratio_f8}, {"underflow", r.underflow}});
  }
  out.measured = max_successive_ratio(ratios);
  out.data["series"] = series;
  return out;
}

Measurement unrestricted_identity() {
  Measurement out;
  double worst = 0.0;
  for (double f : {0.3, 1.0, 3.0}) {
    BeamConfig cfg;
    cfg.f = f;
    cfg.m_max = 6;
    cfg.l_set = {-2, -1, 0, 1, 2};
    const auto g = gram::gram_matrix(cfg, gram::HomogeneousMask::unrestricted);
    for (const auto& b : g.blocks) {
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(b.rows(), b.cols());
      worst = std::max(worst, (b - id).cwiseAbs().maxCoeff());
    }
  }
  out.measured = worst;
  return out;
}

Measurement unrestricted_oracle() {
  Measurement out;
  BeamConfig cfg;
  cfg.f = 1.0;
  gram::OracleOptions opts;
  opts.mask = gram::HomogeneousMask::unrestricted;
  double worst = 0.0;
  for (int l = -2; l <= 2; ++l) {
    for (int m = 0; m <= 4; ++m) {
      for (int m2 = 0; m2 <= 4; ++m2) {
        const cplx o = gram::overlap_2d_oracle(ModeIndex{1, 1, m, l}, ModeIndex{1, 1, m2, l}, cfg, opts);
        worst = std::max(worst, std::abs(o - (m == m2 ? 1.0 : 0.0)));
      }
    }
  }
  out.measured = worst;
  return out;
}

// --- states --------------------------------------------------------------------

Measurement state_overlap_vs_gram() {
  Measurement out;
  double worst = 0.0;
  const std::vector<int> ls{-1, 0, 1, 2};
  for (double f : {0.5, 1.0}) {
    BeamConfig cfg;
    cfg.f = f;
    cfg.m_max = 3;
    cfg.l_set = ls;
    const auto g = gram::gram_matrix(cfg);
    const auto grid = states::make_polar_grid(f);
    std::vector<states::SinglePhotonState> basis;
    for (int l : ls) {
      for (int m = 0; m <= 3; ++m) basis.push_back(states::build_state(ModeIndex{1, 1, m, l}, cfg, grid));
    }
    for (const auto& a : basis) {
      for (const auto& b : basis) {
        const cplx o = states::state_overlap(a, b);
        worst = std::max(worst, std::abs(o - g.entry(a.j.m, a.j.l, b.j.m, b.j.l)));
      }
    }
  }
  out.measured = worst;
  out.data["modes"] = "m=0..3, l in {-1,0,1,2}, f in {0.5, 1}";
  return out;
}

Measurement state_norm_closed() {
  Measurement out;
  BeamConfig cfg;
  cfg.f = 0.5;
  const auto psi = states::build_state(ModeIndex{}, cfg, states::make_polar_grid(0.5));
  const double n2 = states::state_norm2(psi);
  out.measured = std::abs(n2 - (1.0 - std::exp(-4.0)));
  out.data["norm2"] = n2;
  return out;
}

std::size_t differing_amplitudes(const states::SinglePhotonState& a, const states::SinglePhotonState& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    if (std::memcmp(&a.amplitudes[i], &b.amplitudes[i], sizeof(cplx)) != 0) ++n;
  }
  return n;
}

Measurement projector_idempotent() {
  Measurement out;
  std::size_t diff = 0;
  for (double f : {0.2, 0.5, 1.0}) {
    BeamConfig cfg;
    cfg.f = f;
    const auto grid = states::make_polar_grid(f);
    for (int l = -2; l <= 2; ++l) {
      const auto psi = states::build_state(ModeIndex{1, 1, 1, l}, cfg, grid);
      const auto once = states::truncation_projector(psi);
      const auto twice = states::truncation_projector(once);
      diff += differing_amplitudes(once, twice);
      diff += differing_amplitudes(psi, once);
    }
  }
  out.measured = static_cast<double>(diff);
  out.data["note"] = "count of amplitudes where P(P psi) != P psi or P psi != psi, bitwise";
  return out;
}

Measurement evanescent_to_zero() {
  Measurement out;
  const double f = 0.5;
  BeamConfig cfg;
  cfg.f = f;
  const auto grid = states::make_polar_grid(f);
  auto psi = states::build_state(ModeIndex{1, 1, 2, 1}, cfg, grid);
  double support = 0.0;
  for (std::size_t i = 0; i < grid.radial_size(); ++i) {
    for (std::size_t k = 0; k < grid.angular_size(); ++k) {
      const std::size_t idx = grid.index(i, k);
      if (grid.homogeneous(i)) {
        psi.amplitudes[idx] = 0.0;
      } else {
        psi.amplitudes[idx] = std::polar(1.0, grid.theta[k]) * std::exp(-grid.kappa[i]);
        support = std::max(support, std::abs(psi.amplitudes[idx]));
      }
    }
  }
  const auto projected = states::truncation_projector(psi);
  double worst = 0.0;
  for (const auto& a : projected.amplitudes) worst = std::max(worst, std::abs(a));
  out.measured = worst;
  out.data["input_max_amplitude"] = support;
  return out;
}

Measurement vacuum_evanescent_sum() {
  Measurement out;
  BeamConfig cfg;
  cfg.f = 0.5;
  cfg.m_max = 2;
  cfg.l_set = {0, 1};
  const auto report = states::vacuum_constraint_check(cfg, states::make_polar_grid(cfg.f));
  out.measured = report.evanescent_sum_max;
  out.data["evanescent_nodes"] = report.evanescent_nodes;
  out.data["f_delta_f_max"] = report.f_delta_f_max;
  return out;
}

// --- fields --------------------------------------------------------------------

Measurement oracle_triangle() {
  Measurement out;
  std::mt19937 rng(424242u);
  std::uniform_int_distribution<int> mdist(0, 3);
  std::uniform_int_distribution<int> ldist(-3, 3);
  std::uniform_int_distribution<int> sdist(0, 1);
  std::uniform_real_distribution<double> rdist(0.0, 3.0);
  std::uniform_real_distribution<double> tdist(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> zdist(-2.0, 2.0);
  struct Sample {
    int m, l, s;
    fields::FieldPoint p;
  };
  std::vector<Sample> samples;
  for (int i = 0; i < 50; ++i) {
    Sample smp;
    smp.m = mdist(rng);
    smp.l = ldist(rng);
    smp.s = sdist(rng) == 0 ? 1 : -1;
    smp.p = {rdist(rng), tdist(rng), zdist(rng)};
    samples.push_back(smp);
  }
  std::vector<double> dev(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const auto& smp = samples[i];
    dev[i] = std::abs(fields::fresnel_paraxial_field(smp.m, smp.l, smp.s, smp.p) -
                      fields::closed_form_paraxial(smp.m, smp.l, smp.s, smp.p));
  });
  out.measured = *std::max_element(dev.begin(), dev.end());
  out.data["points"] = samples.size();
  out.data["seed"] = 424242;
  return out;
}

const std::vector<fields::FieldPoint>& residual_points() {
  static const std::vector<fields::FieldPoint> pts{
      {0.7, 0.3, 0.4}, {1.2, 1.0, -0.5}, {0.4, 2.0, 0.8}, {1.5, -0.7, 0.2}, {0.9, 3.0, -1.0}};
  return pts;
}

constexpr double kResidualStep = 0.02;

Measurement residual_order(bool exact) {
  Measurement out;
  const double f = 0.3;
  const int m = 0;
  const int l = 1;
  const std::optional<fields::ExactFieldIntegrator> integ =
      exact ? std::optional<fields::ExactFieldIntegrator>(fields::ExactFieldIntegrator(m, l, 1, f)) : std::nullopt;
  double worst = 0.0;
  ordered_json rows = ordered_json::array();
  for (const auto& p : residual_points()) {
    double r1 = 0.0;
    double r2 = 0.0;
    if (exact) {
      r1 = fields::helmholtz_residual(*integ, p, kResidualStep, fields::Equation::full);
      r2 = fields::helmholtz_residual(*integ, p, kResidualStep / 2, fields::Equation::full);
    } else {
      r1 = fields::helmholtz_residual(fields::FieldKind::closed, m, l, 1, f, p, kResidualStep, fields::Equation::paraxial);
      r2 = fields::helmholtz_residual(fields::FieldKind::closed, m, l, 1, f, p, kResidualStep / 2,
                                      fields::Equation::paraxial);
    }
    const double order = std::log2(r1 / r2);
    worst = std::max(worst, std::isfinite(order) ? std::abs(order - 2.0) : std::numeric_limits<double>::infinity());
    rows.push_back({{"rho", p.rho}, {"theta", p.theta}, {"z", p.z}, {"r_h", r1}, {"r_h2", r2}, {"order", order}});
  }
  out.measured = worst;
  out.data["f"] = f;
  out.data["mode"] = {m, l};
  out.data["h"] = kResidualStep;
  out.data["equation"] = exact ? "full" : "paraxial";
  out.data["points"] = rows;
  return out;
}

struct FullResidualOfClosed {
  std::vector<double> coarse;
  std::vector<double> fine;
};

FullResidualOfClosed closed_full_residuals() {
  FullResidualOfClosed r;
  for (const auto& p : residual_points()) {
    r.coarse.push_back(fields::helmholtz_residual(fields::FieldKind::closed, 0, 1, 1, 0.3, p, kResidualStep,
                                                  fields::Equation::full));
    r.fine.push_back(fields::helmholtz_residual(fields::FieldKind::closed, 0, 1, 1, 0.3, p, kResidualStep / 2,
                                                fields::Equation::full));
  }
  return r;
}

Measurement closed_full_limit() {
  Measurement out;
  const auto r = closed_full_residuals();
  out.measured = *std::min_element(r.fine.begin(), r.fine.end());
  out.data["f"] = 0.3;
  out.data["residual_h"] = r.coarse;
  out.data["residual_h2"] = r.fine;
  return out;
}

Measurement closed_full_converged() {
  Measurement out;
  const auto r = closed_full_residuals();
  double worst = 0.0;
  for (std::size_t i = 0; i < r.fine.size(); ++i) {
    worst = std::max(worst, std::abs(r.coarse[i] - r.fine[i]) / r.fine[i]);
  }
  out.measured = worst;
  out.data["note"] = "relative change of the full-equation residual of the closed form under h-halving";
  return out;
}

Measurement paraxial_limit_trend() {
  Measurement out;
  const std::vector<double> fs{0.2, 0.1, 0.05, 0.025};
  std::vector<fields::FieldPoint> pts;
  for (double z : {0.0, 0.5, 1.0}) {
    for (int i = 1; i <= 8; ++i) pts.push_back({0.25 * i, 0.3, z});
  }
  std::vector<double> dev(fs.size(), 0.0);
  parallel_for(fs.size(), [&](std::size_t i) {
    const fields::ExactFieldIntegrator field(0, 1, 1, fs[i]);
    for (const auto& p : pts) {
      dev[i] = std::max(dev[i], std::abs(field(p) - fields::closed_form_paraxial(0, 1, 1, p)));
    }
  });
  out.measured = max_successive_ratio(dev);
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < fs.size(); ++i) rows.push_back({{"f", fs[i]}, {"max_deviation", dev[i]}});
  out.data["mode"] = {0, 1};
  out.data["grid"] = "rho=0.25:2:8, theta=0.3, z in {0, 0.5, 1}";
  out.data["series"] = rows;
  return out;
}

Measurement angular_identity() {
  Measurement out;
  double worst = 0.0;
  for (int l = -4; l <= 4; ++l) {
    for (double u : {0.0, 0.5, 1.0, 2.5, 5.0, 10.0}) worst = std::max(worst, fields::angular_identity_check(l, u));
  }
  out.measured = worst;
  out.data["grid"] = "l=-4..4, u in {0, 0.5, 1, 2.5, 5, 10}, 128 nodes";
  return out;
}

Measurement hankel_identity() {
  Measurement out;
  struct Case {
    int m, l;
    cplx beta;
    double gamma;
  };
  const std::vector<Case> cases{{0, 0, {1.0, 0.0}, 0.0},
                                {1, 1, {1.0, 0.5}, 1.3},
                                {2, -1, {0.8, 0.3}, 2.0},
                                {3, 2, {1.5, 0.0}, 0.7},
                                {2, 3, {0.6, -0.4}, 1.1}};
  double worst = 0.0;
  ordered_json rows = ordered_json::array();
  for (const auto& c : cases) {
    const auto r = fields::hankel_identity_check(c.m, c.l, c.beta, c.gamma);
    worst = std::max(worst, r.deviation);
    rows.push_back({{"m", c.m}, {"l", c.l}, {"beta", complex_json(c.beta)}, {"gamma", c.gamma}, {"deviation", r.deviation}});
  }
  out.measured = worst;
  out.data["cases"] = rows;
  return out;
}

Measurement phase_winding() {
  Measurement out;
  double worst = 0.0;
  const int n = 64;
  for (int l = -3; l <= 3; ++l) {
    for (double z : {0.0, 1.0}) {
      double total = 0.0;
      double prev = std::arg(fields::closed_form_paraxial(0, l, 1, {1.0, 0.0, z}));
      for (int k = 1; k <= n; ++k) {
        const double theta = 2.0 * kPi * k / n;
        const double cur = std::arg(fields::closed_form_paraxial(0, l, 1, {1.0, theta, z}));
        total += std::remainder(cur - prev, 2.0 * kPi);
        prev = cur;
      }
      worst = std::max(worst, std::abs(total / (2.0 * kPi) - l));
    }
  }
  out.measured = worst;
  return out;
}

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> checks = [] {
    std::vector<CheckDef> c;
    auto le = [&](std::string name, std::string suite, int crit, std::string desc, double tol,
                  std::function<Measurement()> run, bool error_bound = true) {
      c.push_back({std::move(name), std::move(suite), crit, std::move(desc), Comparison::le, tol, error_bound,
                   std::move(run)});
    };
    auto trend = [&](std::string name, std::string suite, int crit, std::string desc,
                     std::function<Measurement()> run) {
      c.push_back({std::move(name), std::move(suite), crit, std::move(desc), Comparison::lt, 1.0, false,
                   std::move(run)});
    };

    le("quadrature.gauss_exactness", "quadrature", 0, "Gauss-Legendre n=1..24 integrates x^d, d<=2n-1, on [0,1]",
       1e-13, gauss_exactness);
    le("quadrature.gauss_exp", "quadrature", 0, "8-point Gauss-Legendre of e^x on [0,1] vs e-1", 1e-12, gauss_exp);
    le("quadrature.periodic_self_convergence", "quadrature", 0,
       "periodic trapezoid of (1-0.25 sin^2)^-1/2, n=64 vs n=256", 1e-12, periodic_self_convergence);
    le("quadrature.tail_closed_forms", "quadrature", 0, "tail integrals of 2k e^-k^2 and 2k^3 e^-k^2 vs antiderivatives",
       1e-12, tail_closed_forms);

    le("specfun.laguerre_recurrence", "specfun", 0, "three-term recurrence residual, random m<=20, a<=10, x<=40",
       1e-12, laguerre_recurrence);
    le("specfun.bessel_recurrence", "specfun", 0, "J_{l-1}+J_{l+1} = (2l/x) J_l, random l<=20, x in [0.5,40]", 1e-10,
       bessel_recurrence);
    le("specfun.bessel_series", "specfun", 0, "J_l vs long-double power series, l<=10, x<=8", 1e-12,
       bessel_series_oracle);

    le("modes.radial_orthonormality", "modes", 0, "int k conj(V_ml) V_m'l dk = 2 pi delta, m,m'<=6, |l|<=4", 1e-10,
       radial_orthonormality);
    le("modes.fourier_identity_0_1", "modes", 9, "nested-quadrature Fourier transform of (0,1) vs closed form", 1e-8,
       [] { return fourier_identity(0, 1); });
    le("modes.fourier_identity_2_m1", "modes", 9, "nested-quadrature Fourier transform of (2,-1) vs closed form",
       1e-8, [] { return fourier_identity(2, -1); });

    le("gram.delta_f_00", "gram", 1, "Delta F_{00,00}(f) vs e^{-1/f^2}, f in {0.3,0.5,1}", 1e-10,
       [] { return delta_f_closed(0); });
    le("gram.delta_f_01", "gram", 1, "Delta F_{01,01}(f) vs (1+1/f^2) e^{-1/f^2}, f in {0.3,0.5,1}", 1e-10,
       [] { return delta_f_closed(1); });
    le("gram.nonorthogonality", "gram", 2, "|F_{01,11}(f=1)| vs e^-1/sqrt 2", 1e-8, nonorthogonality);
    le("gram.two_path_agreement", "gram", 2, "F_{01,11}(f=1): radial tail vs 2D disc quadrature", 1e-9,
       two_path_agreement);
    le("gram.oracle_agreement", "gram", 0, "gram_matrix vs 2D oracle, m,m'<=4, |l|<=3, f in {0.3,0.6,1}", 1e-9,
       oracle_agreement);
    le("gram.cross_l_orthogonality", "gram", 3, "2D-oracle overlaps with l != l', |l|,|l'|<=3, m,m'<=2", 1e-12,
       cross_l_orthogonality);
    le("gram.hermitian", "gram", 0, "max |F - F^H| over blocks (exact)", 0.0, hermitian_exact, false);
    le("gram.eigenvalue_range", "gram", 0, "block eigenvalues in [-1e-10, 1+1e-10], m_max=8", 1e-10,
       eigenvalue_range);
    le("gram.delta_f_monotone", "gram", 0, "Delta F_mm nonnegative and nondecreasing in f", 0.0, delta_f_monotone,
       false);
    trend("gram.projector_trend_idempotence", "gram", 4,
          "||F^2-F||_max decreases over m_max in {2,4,8,16} at f=1, l=0 (largest successive ratio)",
          [] { return projector_trend(false); });
    trend("gram.projector_trend_vacuum", "gram", 4,
          "||F Delta F||_max decreases over m_max in {2,4,8,16} at f=1, l=0 (largest successive ratio)",
          [] { return projector_trend(true); });
    le("gram.projector_small_f", "gram", 4, "||F^2-F||_max and ||F Delta F||_max at f<=0.15, m_max in {2,4,8,16}",
       1e-10, projector_small_f);
    trend("gram.superpolynomial_decay", "gram", 5,
          "Delta F_00(f)/f^8 decreases on f in {0.5,0.4,0.3,0.25,0.2} (largest successive ratio)",
          superpolynomial_decay);
    le("gram.unrestricted_identity", "gram", 11, "Theta = 1 gives F = I exactly", 0.0, unrestricted_identity, false);
    le("gram.unrestricted_oracle", "gram", 11, "2D oracle with Theta = 1 vs identity", 1e-10, unrestricted_oracle);

    le("states.overlap_vs_gram", "states", 10, "state_overlap vs gram_matrix on the default polar grid", 1e-8,
       state_overlap_vs_gram);
    le("states.norm_closed_form", "states", 10, "norm^2 of (0,0) at f=0.5 vs 1 - e^-4", 1e-8, state_norm_closed);
    le("states.projector_idempotent", "states", 10, "truncation projector idempotent, states are fixed points", 0.0,
       projector_idempotent, false);
    le("states.evanescent_to_zero", "states", 10, "evanescent-support state maps to zero", 0.0, evanescent_to_zero,
       false);
    le("states.vacuum_evanescent_sum", "states", 0, "sum_j U_j(q) psi_j(q') at evanescent q, q'", 0.0,
       vacuum_evanescent_sum, false);

    le("fields.oracle_triangle", "fields", 6, "Fresnel integral vs closed-form LG at 50 seeded points", 1e-8,
       oracle_triangle);
    le("fields.residual_order_exact", "fields", 7, "|order - 2| of the exact-field full-equation residual, f=0.3",
       0.3, [] { return residual_order(true); }, false);
    le("fields.residual_order_closed", "fields", 7, "|order - 2| of the closed-form paraxial residual", 0.3,
       [] { return residual_order(false); }, false);
    c.push_back({"fields.closed_full_residual_nonzero", "fields", 7,
                 "closed form under the full equation at f=0.3: smallest residual stays above the bound",
                 Comparison::ge, 1e-4, false, closed_full_limit});
    le("fields.closed_full_residual_converged", "fields", 7,
       "closed form under the full equation: relative change under h-halving", 0.05, closed_full_converged, false);
    trend("fields.paraxial_limit_trend", "fields", 8,
          "max |exact/f - closed| for (0,1) decreases over f in {0.2,0.1,0.05,0.025} (largest successive ratio)",
          paraxial_limit_trend);
    le("fields.angular_identity", "fields", 9, "angular Bessel identity by 128-node periodic trapezoid", 1e-12,
       angular_identity);
    le("fields.hankel_identity", "fields", 0, "Laguerre-Gauss Hankel integral vs closed form", 1e-9,
       hankel_identity);
    le("fields.phase_winding", "fields", 0, "closed-form phase winds by 2 pi l on rho=1 circles", 1e-9,
       phase_winding);
    return c;
  }();
  return checks;
}

bool compare(Comparison c, double measured, double tol) {
  if (std::isnan(measured)) return false;
  switch (c) {
    case Comparison::le:
      return measured <= tol;
    case Comparison::lt:
      return measured < tol;
    case Comparison::ge:
      return measured >= tol;
  }
  return false;
}

ordered_json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string_view to_string(Comparison c) {
  switch (c) {
    case Comparison::le:
      return "<=";
    case Comparison::lt:
      return "<";
    case Comparison::ge:
      return ">=";
  }
  return "<=";
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<const CheckResult*> VerifyReport::for_criterion(int criterion) const {
  std::vector<const CheckResult*> out;
  for (const auto& c : checks) {
    if (c.criterion == criterion) out.push_back(&c);
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"quadrature", "specfun", "modes", "gram", "states", "fields"};
  return names;
}

VerifyReport run_verify(const std::string& suite, const ToleranceOverrides& tol) {
  const auto& names = suite_names();
  if (!suite.empty() && suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
    throw InvalidArgument("unknown verify suite '" + suite + "'");
  }
  std::set<std::string> known;
  for (const auto& def : registry()) known.insert(def.name);
  for (const auto& [name, v] : tol.per_check) {
    if (!known.count(name)) throw InvalidArgument("tolerance override names unknown check '" + name + "'");
  }

  VerifyReport report;
  for (const auto& def : registry()) {
    if (!suite.empty() && suite != "all" && def.suite != suite) continue;
    CheckResult r;
    r.name = def.name;
    r.suite = def.suite;
    r.criterion = def.criterion;
    r.description = def.description;
    r.comparison = def.comparison;
    r.tolerance = def.tolerance;
    if (def.error_bound && tol.global) r.tolerance = *tol.global;
    if (const auto it = tol.per_check.find(def.name); it != tol.per_check.end()) r.tolerance = it->second;
    try {
      Measurement m = def.run();
      r.measured = m.measured;
      r.data = std::move(m.data);
    } catch (const Error& e) {
      r.measured = std::numeric_limits<double>::quiet_NaN();
      r.data = ordered_json::object();
      r.data["error"] = e.what();
    }
    r.passed = compare(r.comparison, r.measured, r.tolerance);
    report.checks.push_back(std::move(r));
  }
  return report;
}

nlohmann::ordered_json to_json(const VerifyReport& report, const RunConfig& cfg) {
  ordered_json doc;
  doc["meta"] = meta_block(cfg);
  std::size_t passed = 0;
  for (const auto& c : report.checks) passed += c.passed ? 1 : 0;
  doc["summary"] = {{"checks", report.checks.size()},
                    {"passed", passed},
                    {"failed", report.checks.size() - passed},
                    {"all_passed", report.all_passed()}};
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json j;
    j["name"] = c.name;
    j["suite"] = c.suite;
    j["criterion"] = c.criterion;
    j["description"] = c.description;
    j["measured"] = finite_or_string(c.measured);
    j["comparison"] = to_string(c.comparison);
    j["tolerance"] = c.tolerance;
    j["passed"] = c.passed;
    j["data"] = c.data;
    checks.push_back(std::move(j));
  }
  doc["checks"] = checks;
  return doc;
}

}  // namespace beamgram::cli
