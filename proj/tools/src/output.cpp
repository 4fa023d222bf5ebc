#include "beamgram/cli/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <beamgram/errors.hpp>
#include <beamgram/gram.hpp>
#include <beamgram/quadrature.hpp>
#include <beamgram/states.hpp>

namespace beamgram::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json meta_block(const RunConfig& cfg) {
  nlohmann::ordered_json meta;
  meta["tool"] = kToolName;
  meta["version"] = kToolVersion;
  nlohmann::ordered_json modules;
  for (const char* name : {"quadrature", "specfun", "modes", "gram", "states", "fields", "cli"}) {
    modules[name] = kToolVersion;
  }
  meta["modules"] = modules;
  meta["config"] = to_json(cfg);

  const quadrature::TailOptions tail;
  nlohmann::ordered_json quad;
  quad["gauss_newton_threshold"] = 1e-15;
  quad["tail"] = {{"initial_order", tail.initial_order},
                  {"max_order", tail.max_order},
                  {"panel_width", tail.panel_width},
                  {"abs_tol", gram::kDeltaFTolerance}};
  quad["exact_field"] = {{"radial_panel_order", cfg.quadrature.radial_panel_order},
                         {"radial_panel_width", cfg.quadrature.radial_panel_width},
                         {"edge_order", cfg.quadrature.edge_order},
                         {"angular_nodes", cfg.quadrature.angular_nodes}};
  quad["state_grid"] = {{"radial_nodes", states::kDefaultRadialNodes},
                        {"angular_nodes", states::kDefaultAngularNodes}};
  meta["quadrature"] = quad;
  return meta;
}

void write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot open '" + tmp.string() + "' for writing");
    out << content;
    if (!out.flush()) throw InvalidArgument("cannot write '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InvalidArgument("cannot write '" + path + "'");
  }
}

}  // namespace beamgram::cli
