#include "beamgram/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <beamgram/errors.hpp>
#include <beamgram/fields.hpp>
#include <beamgram/gram.hpp>
#include <beamgram/modes.hpp>
#include <beamgram/parallel.hpp>

#include "beamgram/cli/output.hpp"
#include "beamgram/cli/verify.hpp"

namespace beamgram::cli {

namespace {

using nlohmann::ordered_json;
using cplx = std::complex<double>;

constexpr double kExactFieldTolerance = 1e-9;

ordered_json matrix_json(const Eigen::MatrixXcd& a) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      row.push_back({{"re", a(i, k).real()}, {"im", a(i, k).imag()}});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string default_path(const RunConfig& cfg, const char* fallback) { return cfg.out.empty() ? fallback : cfg.out; }

}  // namespace

ordered_json gram_document(const RunConfig& cfg) {
  const auto g = gram::gram_matrix(cfg.beam);
  const auto defect = gram::projector_defect(g);
  ordered_json doc;
  doc["meta"] = meta_block(cfg);
  doc["f"] = g.f;
  doc["l"] = g.l_set;
  doc["m_max"] = g.m_max;
  ordered_json blocks = ordered_json::array();
  ordered_json deltas = ordered_json::array();
  for (std::size_t b = 0; b < g.blocks.size(); ++b) {
    blocks.push_back(matrix_json(g.blocks[b]));
    deltas.push_back(matrix_json(g.delta_blocks[b]));
  }
  doc["blocks"] = blocks;
  doc["delta_f"] = deltas;
  doc["projector_defect"] = {{"idempotence", defect.idempotence}, {"vacuum", defect.vacuum}};
  return doc;
}

FieldOutput field_output(const RunConfig& cfg) {
  const auto& gs = cfg.grid;
  std::vector<fields::FieldPoint> points;
  points.reserve(gs.size());
  for (int iz = 0; iz < gs.z.n; ++iz) {
    for (int ir = 0; ir < gs.rho.n; ++ir) {
      for (int it = 0; it < gs.theta.n; ++it) {
        points.push_back({gs.rho.at(ir), gs.theta.at(it), gs.z.at(iz)});
      }
    }
  }

  const int m = cfg.mode_m;
  const int l = cfg.mode_l;
  const int s = cfg.s;
  std::vector<cplx> values(points.size());
  std::vector<double> deviation(points.size(), 0.0);

  std::optional<fields::ExactFieldIntegrator> coarse;
  std::optional<fields::ExactFieldIntegrator> fine;
  if (cfg.kind == fields::FieldKind::exact) {
    coarse.emplace(m, l, s, cfg.beam.f, cfg.quadrature);
    fine.emplace(m, l, s, cfg.beam.f, fields::refined(cfg.quadrature));
  }

  parallel_for(points.size(), [&](std::size_t i) {
    const auto& p = points[i];
    cplx v;
    switch (cfg.kind) {
      case fields::FieldKind::exact: {
        const cplx a = (*coarse)(p);
        v = (*fine)(p);
        const double diff = std::abs(v - a);
        if (diff > kExactFieldTolerance) {
          throw NoConvergence("exact field did not converge under refinement", v.real(), v.imag(), diff);
        }
        break;
      }
      case fields::FieldKind::fresnel:
        v = fields::fresnel_paraxial_field(m, l, s, p);
        break;
      case fields::FieldKind::closed:
        v = fields::closed_form_paraxial(m, l, s, p);
        break;
    }
    values[i] = v;
    deviation[i] = std::abs(v - fields::closed_form_paraxial(m, l, s, p));
  });

  FieldOutput out;
  std::string csv = "rho,theta,z,re,im,abs,phase\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const cplx v = values[i];
    csv += format_double(p.rho) + ',' + format_double(p.theta) + ',' + format_double(p.z) + ',' +
           format_double(v.real()) + ',' + format_double(v.imag()) + ',' + format_double(std::abs(v)) + ',' +
           format_double(std::arg(v)) + '\n';
  }
  out.csv = std::move(csv);

  ordered_json side;
  side["meta"] = meta_block(cfg);
  side["points"] = points.size();
  side["reference"] = "closed";
  side["max_abs_deviation_from_closed"] =
      deviation.empty() ? 0.0 : *std::max_element(deviation.begin(), deviation.end());
  if (cfg.kind == fields::FieldKind::exact) side["refinement_tolerance"] = kExactFieldTolerance;
  out.sidecar = std::move(side);
  return out;
}

std::string spectrum_csv(const RunConfig& cfg) {
  std::string csv = "kappa,phi,re,im,abs\n";
  for (int i = 0; i < cfg.kappa.n; ++i) {
    const double k = cfg.kappa.at(i);
    const double phi = modes::lg_radial_spectrum(cfg.mode_m, cfg.mode_l, k);
    const cplx v = modes::lg_spectrum(cfg.mode_m, cfg.mode_l, k);
    csv += format_double(k) + ',' + format_double(phi) + ',' + format_double(v.real()) + ',' +
           format_double(v.imag()) + ',' + format_double(std::abs(v)) + '\n';
  }
  return csv;
}

int run_command(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  switch (cfg.command) {
    case Command::gram: {
      const std::string path = default_path(cfg, "gram.json");
      write_file(path, gram_document(cfg).dump(2) + "\n");
      log << "wrote " << path << "\n";
      return kExitOk;
    }
    case Command::field: {
      const std::string path = default_path(cfg, "field.csv");
      const auto out = field_output(cfg);
      write_file(path, out.csv);
      write_file(path + ".json", out.sidecar.dump(2) + "\n");
      log << "wrote " << path << " and " << path << ".json\n";
      return kExitOk;
    }
    case Command::spectrum: {
      const std::string csv = spectrum_csv(cfg);
      if (cfg.out.empty()) {
        log << csv;
      } else {
        ordered_json side;
        side["meta"] = meta_block(cfg);
        write_file(cfg.out, csv);
        write_file(cfg.out + ".json", side.dump(2) + "\n");
        log << "wrote " << cfg.out << "\n";
      }
      return kExitOk;
    }
    case Command::verify: {
      const auto report = run_verify(cfg.suite, cfg.tol);
      write_file(cfg.report, to_json(report, cfg).dump(2) + "\n");
      for (const auto& c : report.checks) {
        char line[64];
        std::snprintf(line, sizeof line, "  measured=%.6g %s %.6g", c.measured, to_string(c.comparison).data(),
                      c.tolerance);
        log << (c.passed ? "PASS " : "FAIL ") << c.name << line << "\n";
      }
      log << "wrote " << cfg.report << "\n";
      return report.all_passed() ? kExitOk : kExitVerifyFailed;
    }
  }
  return kExitConfig;
}

int run_guarded(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    return run_command(cfg, log);
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace beamgram::cli
