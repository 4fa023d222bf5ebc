#include "beamgram/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "beamgram/errors.hpp"
#include "beamgram/gram.hpp"
#include "beamgram/quadrature.hpp"

namespace beamgram::states {

namespace {

constexpr int kPanelOrder = 16;

void append_panels(PolarGrid& grid, int panels, double lo, double hi) {
  if (panels <= 0) return;
  const auto rule = quadrature::composite_gauss_legendre(panels, kPanelOrder, lo, hi);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    grid.kappa.push_back(rule.nodes[i]);
    grid.radial_weights.push_back(rule.weights[i] * rule.nodes[i]);
  }
}

}  // namespace

PolarGrid make_polar_grid(double f, double kappa_max, int radial_nodes, int angular_nodes) {
  if (!std::isfinite(f) || !(f > 0.0)) {
    throw InvalidArgument("make_polar_grid: f must be finite and > 0");
  }
  if (!(kappa_max > 0.0)) {
    throw InvalidArgument("make_polar_grid: kappa_max must be > 0");
  }
  if (radial_nodes < kMinRadialNodes) {
    throw InvalidArgument("grid-too-coarse: need at least " + std::to_string(kMinRadialNodes) + " radial nodes, got " +
                          std::to_string(radial_nodes));
  }
  PolarGrid grid;
  grid.f = f;
  const double edge = 1.0 / f;
  grid.kappa_max = std::max(kappa_max, edge);

  const int panels = (radial_nodes + kPanelOrder - 1) / kPanelOrder;
  if (edge < grid.kappa_max) {
    // Split panels between [0, 1/f] and [1/f, kappa_max] by length, at least one each.
    int inner = static_cast<int>(std::lround(panels * edge / grid.kappa_max));
    inner = std::clamp(inner, 1, panels - 1);
    append_panels(grid, inner, 0.0, edge);
    append_panels(grid, panels - inner, edge, grid.kappa_max);
  } else {
    append_panels(grid, panels, 0.0, grid.kappa_max);
  }

  const auto angular = quadrature::periodic_trapezoid(angular_nodes);
  grid.theta = angular.nodes;
  grid.angular_weight = angular.weights.front();
  return grid;
}

CommutatorKernel CommutatorKernel::on(const PolarGrid& grid) {
  CommutatorKernel kernel;
  kernel.f = grid.f;
  kernel.mask.resize(grid.radial_size());
  for (std::size_t i = 0; i < grid.radial_size(); ++i) {
    kernel.mask[i] = grid.homogeneous(i) ? 1 : 0;
  }
  return kernel;
}

SinglePhotonState build_state(const ModeIndex& j, const BeamConfig& cfg, const PolarGrid& grid) {
  cfg.validate();
  if (grid.f != cfg.f) {
    throw InvalidArgument("build_state: grid was built for f = " + std::to_string(grid.f) + ", config has f = " +
                          std::to_string(cfg.f));
  }
  if (grid.radial_size() < static_cast<std::size_t>(kMinRadialNodes)) {
    throw InvalidArgument("grid-too-coarse: need at least 64 radial nodes");
  }
  SinglePhotonState psi;
  psi.j = j;
  psi.f = cfg.f;
  psi.grid = grid;
  psi.amplitudes.assign(grid.size(), {0.0, 0.0});

  const CommutatorKernel kernel = CommutatorKernel::on(grid);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < grid.radial_size(); ++i) {
    if (!kernel.mask[i]) continue;
    // w0 U*_j(kappa / w0) = (1/2pi) e^{i l theta} conj(V~_ml(kappa))
    const std::complex<double> radial = std::conj(modes::lg_spectrum(j.m, j.l, grid.kappa[i])) / two_pi;
    for (std::size_t k = 0; k < grid.angular_size(); ++k) {
      psi.amplitudes[grid.index(i, k)] = std::polar(1.0, j.l * grid.theta[k]) * radial;
    }
  }
  return psi;
}

std::complex<double> state_overlap(const SinglePhotonState& a, const SinglePhotonState& b) {
  if (a.f != b.f || !(a.grid == b.grid)) {
    throw GridMismatch("state_overlap: states live on different grids or frequency slices");
  }
  if (a.j.s != b.j.s || a.j.polarization != b.j.polarization) {
    throw GridMismatch("state_overlap: direction or polarization differ; overlap is structurally zero");
  }
  const PolarGrid& g = a.grid;
  std::complex<double> total{};
  for (std::size_t i = 0; i < g.radial_size(); ++i) {
    std::complex<double> ring{};
    for (std::size_t k = 0; k < g.angular_size(); ++k) {
      const std::size_t idx = g.index(i, k);
      ring += std::conj(a.amplitudes[idx]) * b.amplitudes[idx];
    }
    total += g.radial_weights[i] * g.angular_weight * ring;
  }
  return total;
}

double state_norm2(const SinglePhotonState& psi) { return state_overlap(psi, psi).real(); }

SinglePhotonState truncation_projector(const SinglePhotonState& psi) {
  SinglePhotonState out = psi;
  const CommutatorKernel kernel = CommutatorKernel::on(psi.grid);
  for (std::size_t i = 0; i < psi.grid.radial_size(); ++i) {
    if (kernel.mask[i]) continue;
    for (std::size_t k = 0; k < psi.grid.angular_size(); ++k) {
      out.amplitudes[psi.grid.index(i, k)] = {0.0, 0.0};
    }
  }
  return out;
}

VacuumReport vacuum_constraint_check(const BeamConfig& cfg, const PolarGrid& grid) {
  cfg.validate();
  if (cfg.m_max < 2) {
    throw InvalidArgument("vacuum_constraint_check: m_max must be >= 2");
  }
  VacuumReport report;
  report.m_max = cfg.m_max;
  report.f_delta_f_max = gram::projector_defect(gram::gram_matrix(cfg)).vacuum;

  std::vector<SinglePhotonState> basis;
  for (int l : cfg.l_set) {
    for (int m = 0; m <= cfg.m_max; ++m) {
      basis.push_back(build_state(ModeIndex{+1, 1, m, l}, cfg, grid));
    }
  }

  const CommutatorKernel kernel = CommutatorKernel::on(grid);
  std::vector<std::size_t> evanescent;
  for (std::size_t i = 0; i < grid.radial_size(); ++i) {
    if (!kernel.mask[i]) evanescent.push_back(i);
  }
  report.evanescent_nodes = evanescent.size() * grid.angular_size();

  // Sum_j U_j(q) psi_j(q') for evanescent q (one angle suffices; the
  // coefficient is a scalar) at every evanescent q'.
  for (std::size_t iq : evanescent) {
    const double q = grid.kappa[iq] / cfg.w0;
    std::vector<std::complex<double>> coeff;
    coeff.reserve(basis.size());
    for (const auto& psi : basis) {
      coeff.push_back(modes::mode_kernel(psi.j, TransverseMomentum{q, 0.0}, cfg));
    }
    for (std::size_t ip : evanescent) {
      for (std::size_t k = 0; k < grid.angular_size(); ++k) {
        std::complex<double> sum{};
        for (std::size_t b = 0; b < basis.size(); ++b) {
          sum += coeff[b] * basis[b].amplitudes[grid.index(ip, k)];
        }
        report.evanescent_sum_max = std::max(report.evanescent_sum_max, std::abs(sum));
      }
    }
  }
  return report;
}

}  // namespace beamgram::states
