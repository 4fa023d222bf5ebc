#pragma once

#include <string>

#include <json.hpp>

#include "beamgram/cli/config.hpp"

namespace beamgram::cli {

inline constexpr const char* kToolName = "beamgram";
inline constexpr const char* kToolVersion = "0.1.0";

/// "%.17g" rendering used for every CSV number.
std::string format_double(double v);

/// Meta block carried by every emitted file: tool, module versions, config
/// echo and quadrature orders.
nlohmann::ordered_json meta_block(const RunConfig& cfg);

/// Writes `content` to `path` via a temporary file and a rename, so a failed
/// run never leaves a partial file behind. Throws InvalidArgument when the
/// path cannot be written.
void write_file(const std::string& path, const std::string& content);

}  // namespace beamgram::cli
