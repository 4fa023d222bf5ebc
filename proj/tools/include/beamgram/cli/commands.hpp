#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "beamgram/cli/config.hpp"

namespace beamgram::cli {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitConfig = 2, kExitNumeric = 3 };

/// gram.json document: meta, f, l, m_max, blocks, delta_f, projector_defect.
nlohmann::ordered_json gram_document(const RunConfig& cfg);

struct FieldOutput {
  std::string csv;
  nlohmann::ordered_json sidecar;
};

/// CSV "rho,theta,z,re,im,abs,phase" in (z, rho, theta) order plus a sidecar
/// with the max deviation from the closed form. Throws NoConvergence before
/// producing anything if any point fails.
FieldOutput field_output(const RunConfig& cfg);

/// CSV "kappa,phi,re,im,abs" of the LG spectrum.
std::string spectrum_csv(const RunConfig& cfg);

/// Runs one command and writes its files. Returns the exit code; library
/// exceptions propagate to the caller.
int run_command(const RunConfig& cfg, std::ostream& log);

/// run_command with errors mapped to exit codes 2 (config) and 3 (numeric).
int run_guarded(const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace beamgram::cli
