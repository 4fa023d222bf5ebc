#include "beamgram/gram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "beamgram/errors.hpp"
#include "beamgram/parallel.hpp"
#include "beamgram/quadrature.hpp"
#include "beamgram/specfun.hpp"

namespace beamgram::gram {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t block_index(const GramMatrix& g, int l) {
  const auto it = std::find(g.l_set.begin(), g.l_set.end(), l);
  if (it == g.l_set.end()) {
    throw InvalidArgument("gram matrix has no block for l = " + std::to_string(l));
  }
  return static_cast<std::size_t>(it - g.l_set.begin());
}

}  // namespace

const Eigen::MatrixXcd& GramMatrix::block(int l) const { return blocks[block_index(*this, l)]; }

const Eigen::MatrixXcd& GramMatrix::delta_block(int l) const { return delta_blocks[block_index(*this, l)]; }

std::complex<double> GramMatrix::entry(int m, int l, int m2, int l2) const {
  if (l != l2) return {0.0, 0.0};
  return block(l)(m, m2);
}

std::complex<double> delta_f(int m, int m2, int l, double f) { return delta_f(m, m2, l, f, 0.0); }

std::complex<double> delta_f(int m, int m2, int l, double f, double rel_tol) {
  if (!std::isfinite(f) || !(f > 0.0)) {
    throw InvalidArgument("delta_f: f must be finite and > 0");
  }
  if (m < 0 || m2 < 0) {
    throw InvalidArgument("delta_f: radial indices must be >= 0");
  }
  // conj(V_m) V_m2 = (2 pi)^2 conj(phase_m) phase_m2 phi_m phi_m2, a real
  // integrand times a unit phase.
  const auto c1 = specfun::lg_constants(m, l);
  const auto c2 = specfun::lg_constants(m2, l);
  const std::complex<double> phase = std::conj(c1.phase) * c2.phase;
  auto integrand = [&](double kappa) -> std::complex<double> {
    return kTwoPi * kappa * modes::lg_radial_spectrum(m, l, kappa) * modes::lg_radial_spectrum(m2, l, kappa);
  };
  quadrature::TailOptions opts;
  opts.rel_tol = rel_tol;
  const auto result = quadrature::integrate_tail(integrand, 1.0 / f, kDeltaFTolerance, opts);
  return phase * result.value;
}

GramMatrix gram_matrix(const BeamConfig& cfg, HomogeneousMask mask) {
  cfg.validate();
  GramMatrix g;
  g.f = cfg.f;
  g.m_max = cfg.m_max;
  g.l_set = cfg.l_set;
  g.mask = mask;
  const int n = cfg.m_max + 1;
  const std::size_t per_block = static_cast<std::size_t>(n) * n;

  // Raw Delta F entries for every (l, m, m') in a fixed slot layout.
  std::vector<std::complex<double>> raw(cfg.l_set.size() * per_block);
  if (mask == HomogeneousMask::step) {
    parallel_for(raw.size(), [&](std::size_t idx) {
      const std::size_t b = idx / per_block;
      const int row = static_cast<int>((idx % per_block) / n);
      const int col = static_cast<int>(idx % n);
      raw[idx] = delta_f(row, col, cfg.l_set[b], cfg.f);
    });
  }

  for (std::size_t b = 0; b < cfg.l_set.size(); ++b) {
    Eigen::MatrixXcd delta(n, n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        const auto a = raw[b * per_block + i * n + k];
        const auto t = raw[b * per_block + k * n + i];
        delta(i, k) = 0.5 * (a + std::conj(t));
      }
    }
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Identity(n, n) - delta;
    g.delta_blocks.push_back(std::move(delta));
    g.blocks.push_back(std::move(block));
  }
  return g;
}

std::complex<double> overlap_2d_oracle(const ModeIndex& j, const ModeIndex& j2, const BeamConfig& cfg,
                                       const OracleOptions& opts) {
  cfg.validate();
  if (j.polarization != 1 || j2.polarization != 1) {
    throw InvalidArgument("overlap_2d_oracle: only polarization 1 is represented");
  }
  if (j.s != j2.s) return {0.0, 0.0};

  // Integrate in kappa = w0 q; d^2q = d^2kappa / w0^2.
  const double reach = std::max(modes::spectrum_cutoff(j.m, j.l), modes::spectrum_cutoff(j2.m, j2.l));
  const double kappa_edge = opts.mask == HomogeneousMask::step ? std::min(1.0 / cfg.f, reach) : reach;
  const int panels = opts.radial_panels > 0 ? opts.radial_panels : std::max(1, static_cast<int>(std::ceil(kappa_edge / 0.5)));
  const auto radial = quadrature::composite_gauss_legendre(panels, opts.radial_order, 0.0, kappa_edge);
  const auto angular = quadrature::periodic_trapezoid(opts.angular_nodes);

  std::complex<double> total{};
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double q = radial.nodes[i] / cfg.w0;
    std::complex<double> ring{};
    for (std::size_t k = 0; k < angular.size(); ++k) {
      const TransverseMomentum qv{q * std::cos(angular.nodes[k]), q * std::sin(angular.nodes[k])};
      ring += angular.weights[k] * std::conj(modes::mode_kernel(j, qv, cfg)) * modes::mode_kernel(j2, qv, cfg);
    }
    total += radial.weights[i] / cfg.w0 * q * ring;
  }
  return total;
}

ProjectorDefect projector_defect(const GramMatrix& g) {
  ProjectorDefect d;
  for (std::size_t b = 0; b < g.blocks.size(); ++b) {
    const Eigen::MatrixXcd& F = g.blocks[b];
    const Eigen::MatrixXcd& D = g.delta_blocks[b];
    const Eigen::MatrixXcd idem = F * F - F;
    const Eigen::MatrixXcd vac = F * D;
    d.idempotence = std::max(d.idempotence, idem.cwiseAbs().maxCoeff());
    d.vacuum = std::max(d.vacuum, vac.cwiseAbs().maxCoeff());
  }
  return d;
}

std::vector<TailAsymptoticsRow> tail_asymptotics_report(int m, int l, std::span<const double> f_grid) {
  std::vector<TailAsymptoticsRow> rows;
  rows.reserve(f_grid.size());
  for (double f : f_grid) {
    if (!(f > 0.0) || f > 1.0) {
      throw InvalidArgument("tail_asymptotics_report: f must lie in (0, 1]");
    }
    TailAsymptoticsRow row;
    row.f = f;
    row.minus_inv_f2 = -1.0 / (f * f);
    const double value = delta_f(m, m, l, f, 1e-12).real();
    if (value < 1e-300) {
      row.underflow = true;
      row.delta_f = 0.0;
      row.log_delta_f = -std::numeric_limits<double>::infinity();
      row.ratio_f8 = 0.0;
    } else {
      row.delta_f = value;
      row.log_delta_f = std::log(value);
      row.ratio_f8 = value / std::pow(f, 8);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace beamgram::gram
