#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "beamgram/cli/config.hpp"

namespace beamgram::cli {

/// How a check's measured value is compared with its tolerance.
///   le: measured <= tolerance (error bounds; affected by a global override)
///   lt: measured <  tolerance (trend checks, e.g. largest successive ratio < 1)
///   ge: measured >= tolerance (quantities that must stay away from zero)
enum class Comparison { le, lt, ge };

/// "<=", "<" or ">=" (null-terminated).
std::string_view to_string(Comparison c);

struct CheckResult {
  std::string name;
  std::string suite;
  int criterion = 0;  // acceptance criterion number, 0 if none
  std::string description;
  Comparison comparison = Comparison::le;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  nlohmann::ordered_json data;  // supporting values (series, per-point errors)
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  /// Checks tagged with one acceptance criterion.
  std::vector<const CheckResult*> for_criterion(int criterion) const;
};

/// Suite names in execution order.
const std::vector<std::string>& suite_names();

/// Runs every check of `suite` (all suites when empty). Throws
/// InvalidArgument for an unknown suite name or an override naming an
/// unknown check. Numerical exceptions inside a check are caught and
/// reported as a failed check.
VerifyReport run_verify(const std::string& suite = {}, const ToleranceOverrides& tol = {});

/// Deterministic JSON document: meta block, summary, then checks in order.
nlohmann::ordered_json to_json(const VerifyReport& report, const RunConfig& cfg);

}  // namespace beamgram::cli
