#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <beamgram/errors.hpp>

#include "beamgram/cli/commands.hpp"
#include "beamgram/cli/config.hpp"
#include "beamgram/cli/verify.hpp"

namespace {

using beamgram::cli::Command;
using beamgram::cli::RunConfig;

struct Flags {
  std::string config;
  double f = 0.0;
  double w0 = 0.0;
  std::string l;
  int m_max = 0;
  std::string kind;
  std::string mode;
  std::string s;
  std::string grid;
  std::string kappa;
  std::string out;
  std::string suite;
  std::string report;
  std::vector<std::string> tol;
};

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw beamgram::InvalidArgument("cannot read config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw beamgram::InvalidArgument("config file '" + path + "' is not valid JSON: " + e.what());
  }
  beamgram::cli::apply_json(cfg, doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gram matrices, beam fields and verification suites for quantized structured beams"};
  app.require_subcommand(1);
  Flags fl;

  auto* gram = app.add_subcommand("gram", "Overlap matrix F and Delta F per l-block, written as JSON");
  auto* field = app.add_subcommand("field", "Sample an exact, Fresnel or closed-form field on a grid (CSV)");
  auto* spectrum = app.add_subcommand("spectrum", "LG spectrum on a kappa axis (CSV)");
  auto* verify = app.add_subcommand("verify", "Run the verification checks and write a JSON report");

  std::vector<CLI::Option*> given;
  auto track = [&](CLI::Option* o) {
    given.push_back(o);
    return o;
  };
  for (auto* sub : {gram, field, spectrum, verify}) {
    sub->add_option("--config", fl.config, "JSON config file; flags win on conflict");
  }
  track(gram->add_option("--f", fl.f, "Diffraction parameter f"));
  track(gram->add_option("--w0", fl.w0, "Beam waist"));
  track(gram->add_option("--l", fl.l, "Azimuthal range a..b or a single l"));
  track(gram->add_option("--m-max", fl.m_max, "Radial truncation"));
  track(gram->add_option("--out", fl.out, "Output path (default gram.json)"));

  track(field->add_option("--kind", fl.kind, "exact | fresnel | closed"));
  track(field->add_option("--mode", fl.mode, "Mode m,l"));
  track(field->add_option("--s", fl.s, "Propagation direction + or -"));
  track(field->add_option("--f", fl.f, "Diffraction parameter f"));
  track(field->add_option("--grid", fl.grid, "Grid spec, e.g. rho=0:3:121,z=-2:2:81,theta=0"));
  track(field->add_option("--out", fl.out, "Output CSV path (default field.csv)"));

  track(spectrum->add_option("--mode", fl.mode, "Mode m,l"));
  track(spectrum->add_option("--kappa", fl.kappa, "Kappa axis a:b:n"));
  track(spectrum->add_option("--out", fl.out, "Output CSV path (default stdout)"));

  track(verify->add_option("--suite", fl.suite, "Run one suite only"));
  track(verify->add_option("--report", fl.report, "Report path (default verify-report.json)"));
  track(verify->add_option("--tol", fl.tol, "Tolerance override: value, or check=value (repeatable)"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return beamgram::cli::kExitConfig;
  }

  RunConfig cfg;
  if (gram->parsed()) cfg.command = Command::gram;
  if (field->parsed()) cfg.command = Command::field;
  if (spectrum->parsed()) cfg.command = Command::spectrum;
  if (verify->parsed()) cfg.command = Command::verify;

  auto set = [&](const CLI::Option* o) { return o->count() > 0; };
  try {
    if (!fl.config.empty()) load_config_file(cfg, fl.config);
    for (const CLI::Option* o : given) {
      if (!set(o)) continue;
      const std::string name = o->get_name();
      if (name == "--f") cfg.beam.f = fl.f;
      if (name == "--w0") cfg.beam.w0 = fl.w0;
      if (name == "--l") cfg.beam.l_set = beamgram::cli::parse_l_range(fl.l);
      if (name == "--m-max") cfg.beam.m_max = fl.m_max;
      if (name == "--kind") {
        const auto kind = beamgram::fields::parse_field_kind(fl.kind);
        if (!kind) throw beamgram::InvalidArgument("unknown field kind '" + fl.kind + "'");
        cfg.kind = *kind;
      }
      if (name == "--mode") std::tie(cfg.mode_m, cfg.mode_l) = beamgram::cli::parse_mode(fl.mode);
      if (name == "--s") cfg.s = beamgram::cli::parse_direction(fl.s);
      if (name == "--grid") cfg.grid = beamgram::cli::parse_grid(fl.grid);
      if (name == "--kappa") cfg.kappa = beamgram::cli::parse_axis(fl.kappa);
      if (name == "--out") cfg.out = fl.out;
      if (name == "--suite") cfg.suite = fl.suite;
      if (name == "--report") cfg.report = fl.report;
      if (name == "--tol") {
        for (const auto& t : fl.tol) beamgram::cli::add_tolerance_override(cfg.tol, t);
      }
    }
  } catch (const beamgram::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return beamgram::cli::kExitConfig;
  }

  return beamgram::cli::run_guarded(cfg, std::cout, std::cerr);
}
