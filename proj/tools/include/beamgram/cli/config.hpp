#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include <beamgram/fields.hpp>
#include <beamgram/modes.hpp>

namespace beamgram::cli {

enum class Command { gram, field, spectrum, verify };

std::string_view to_string(Command command);
std::optional<Command> parse_command(std::string_view text);

/// One sampled axis: `n` points from `lo` to `hi` inclusive, or a single
/// value when n == 1.
struct AxisSpec {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;

  double at(int i) const;
};

/// Cylindrical grid, e.g. "rho=0:3:121,z=-2:2:81,theta=0". Missing axes are
/// fixed at zero.
struct GridSpec {
  AxisSpec rho;
  AxisSpec theta;
  AxisSpec z;

  std::size_t size() const { return static_cast<std::size_t>(rho.n) * theta.n * z.n; }
};

/// "a:b:n" or a single number "a".
AxisSpec parse_axis(std::string_view text);
GridSpec parse_grid(std::string_view text);
/// "a..b" (inclusive) or a single integer.
std::vector<int> parse_l_range(std::string_view text);
/// "m,l".
std::pair<int, int> parse_mode(std::string_view text);
/// "+", "-", "+1", "-1".
int parse_direction(std::string_view text);

struct ToleranceOverrides {
  std::optional<double> global;           // replaces every error-bound tolerance
  std::map<std::string, double> per_check;  // replaces one named check's tolerance
};

/// "1e-20" sets the global override, "name=1e-20" a per-check one.
void add_tolerance_override(ToleranceOverrides& tol, std::string_view text);

struct RunConfig {
  Command command = Command::verify;
  BeamConfig beam;
  int mode_m = 0;
  int mode_l = 0;
  int s = +1;
  fields::FieldKind kind = fields::FieldKind::closed;
  GridSpec grid;
  AxisSpec kappa{0.0, modes::kDefaultKappaMax, 81};
  std::string out;
  std::string suite;
  std::string report = "verify-report.json";
  ToleranceOverrides tol;
  fields::ExactQuadratureOrders quadrature;

  /// Throws InvalidArgument on any non-finite or out-of-range value.
  void validate() const;
};

/// Applies the keys of a JSON config object to `cfg`. Unknown keys and
/// ill-typed values throw InvalidArgument.
void apply_json(RunConfig& cfg, const nlohmann::json& doc);

/// Config echo used in the meta block of every output file.
nlohmann::ordered_json to_json(const RunConfig& cfg);

}  // namespace beamgram::cli
