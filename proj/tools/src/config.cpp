#include "beamgram/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include <beamgram/errors.hpp>

namespace beamgram::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(value)) {
    throw InvalidArgument("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

void require_finite_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw InvalidArgument(std::string(what) + " must be finite and > 0");
  }
}

template <class T>
T get_as(const nlohmann::json& value, std::string_view key) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument("config key '" + std::string(key) + "' has the wrong type");
  }
}

std::string get_string(const nlohmann::json& value, std::string_view key) {
  if (!value.is_string()) {
    throw InvalidArgument("config key '" + std::string(key) + "' must be a string");
  }
  return value.get<std::string>();
}

double get_number(const nlohmann::json& value, std::string_view key) {
  if (!value.is_number()) {
    throw InvalidArgument("config key '" + std::string(key) + "' must be a number");
  }
  return value.get<double>();
}

int get_integer(const nlohmann::json& value, std::string_view key) {
  if (!value.is_number_integer()) {
    throw InvalidArgument("config key '" + std::string(key) + "' must be an integer");
  }
  return get_as<int>(value, key);
}

std::string axis_text(const AxisSpec& a) {
  if (a.n == 1) return nlohmann::json(a.lo).dump();
  return nlohmann::json(a.lo).dump() + ":" + nlohmann::json(a.hi).dump() + ":" + std::to_string(a.n);
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::gram:
      return "gram";
    case Command::field:
      return "field";
    case Command::spectrum:
      return "spectrum";
    case Command::verify:
      return "verify";
  }
  return "verify";
}

std::optional<Command> parse_command(std::string_view text) {
  if (text == "gram") return Command::gram;
  if (text == "field") return Command::field;
  if (text == "spectrum") return Command::spectrum;
  if (text == "verify") return Command::verify;
  return std::nullopt;
}

double AxisSpec::at(int i) const {
  if (n == 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

AxisSpec parse_axis(std::string_view text) {
  text = trim(text);
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) {
    const double v = parse_double(text, "axis value");
    return AxisSpec{v, v, 1};
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
    throw InvalidArgument("malformed axis '" + std::string(text) + "': expected a:b:n");
  }
  AxisSpec axis;
  axis.lo = parse_double(text.substr(0, c1), "axis start");
  axis.hi = parse_double(text.substr(c1 + 1, c2 - c1 - 1), "axis end");
  axis.n = parse_int(text.substr(c2 + 1), "axis count");
  if (axis.n < 1) throw InvalidArgument("axis count must be >= 1");
  if (axis.n > 1 && !(axis.hi > axis.lo)) {
    throw InvalidArgument("axis '" + std::string(text) + "' must have end > start");
  }
  if (axis.n == 1) axis.hi = axis.lo;
  return axis;
}

GridSpec parse_grid(std::string_view text) {
  GridSpec grid;
  bool seen_rho = false;
  bool seen_theta = false;
  bool seen_z = false;
  text = trim(text);
  if (text.empty()) throw InvalidArgument("empty grid spec");
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("malformed grid item '" + std::string(item) + "': expected name=spec");
    }
    const std::string_view name = trim(item.substr(0, eq));
    const AxisSpec axis = parse_axis(item.substr(eq + 1));
    auto assign = [&](AxisSpec& slot, bool& seen) {
      if (seen) throw InvalidArgument("grid axis '" + std::string(name) + "' given twice");
      slot = axis;
      seen = true;
    };
    if (name == "rho") {
      assign(grid.rho, seen_rho);
    } else if (name == "theta") {
      assign(grid.theta, seen_theta);
    } else if (name == "z") {
      assign(grid.z, seen_z);
    } else {
      throw InvalidArgument("unknown grid axis '" + std::string(name) + "'");
    }
  }
  if (grid.rho.lo < 0.0) throw InvalidArgument("grid rho must be >= 0");
  return grid;
}

std::vector<int> parse_l_range(std::string_view text) {
  text = trim(text);
  const auto dots = text.find("..");
  int lo = 0;
  int hi = 0;
  if (dots == std::string_view::npos) {
    lo = hi = parse_int(text, "l range");
  } else {
    lo = parse_int(text.substr(0, dots), "l range start");
    hi = parse_int(text.substr(dots + 2), "l range end");
  }
  if (hi < lo) throw InvalidArgument("malformed l range '" + std::string(text) + "': end < start");
  if (hi - lo > 256) throw InvalidArgument("l range too wide");
  std::vector<int> out;
  for (int l = lo; l <= hi; ++l) out.push_back(l);
  return out;
}

std::pair<int, int> parse_mode(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw InvalidArgument("malformed mode '" + std::string(text) + "': expected m,l");
  }
  const int m = parse_int(text.substr(0, comma), "mode m");
  const int l = parse_int(text.substr(comma + 1), "mode l");
  if (m < 0) throw InvalidArgument("mode m must be >= 0");
  return {m, l};
}

int parse_direction(std::string_view text) {
  text = trim(text);
  if (text == "+" || text == "+1" || text == "1") return +1;
  if (text == "-" || text == "-1") return -1;
  throw InvalidArgument("malformed direction '" + std::string(text) + "': expected + or -");
}

void add_tolerance_override(ToleranceOverrides& tol, std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    const double v = parse_double(text, "tolerance");
    if (v < 0.0) throw InvalidArgument("tolerance must be >= 0");
    tol.global = v;
    return;
  }
  const std::string name(trim(text.substr(0, eq)));
  if (name.empty()) throw InvalidArgument("tolerance override needs a check name");
  const double v = parse_double(text.substr(eq + 1), "tolerance");
  if (v < 0.0) throw InvalidArgument("tolerance must be >= 0");
  tol.per_check[name] = v;
}

void RunConfig::validate() const {
  beam.validate();
  if (s != 1 && s != -1) throw InvalidArgument("s must be +1 or -1");
  if (mode_m < 0) throw InvalidArgument("mode m must be >= 0");
  if (grid.rho.lo < 0.0 || grid.rho.n < 1 || grid.theta.n < 1 || grid.z.n < 1) {
    throw InvalidArgument("invalid grid");
  }
  if (grid.size() > 10'000'000) throw InvalidArgument("grid has more than 1e7 points");
  if (kappa.lo < 0.0 || kappa.n < 1) throw InvalidArgument("kappa axis must start at >= 0");
  if (quadrature.radial_panel_order < 1 || quadrature.edge_order < 1) {
    throw InvalidArgument("quadrature orders must be >= 1");
  }
  require_finite_positive(quadrature.radial_panel_width, "quadrature radial_panel_width");
  if (quadrature.angular_nodes < 4 || quadrature.angular_nodes % 2 != 0) {
    throw InvalidArgument("quadrature angular_nodes must be even and >= 4");
  }
  if (tol.global && !(std::isfinite(*tol.global) && *tol.global >= 0.0)) {
    throw InvalidArgument("tolerance must be finite and >= 0");
  }
  for (const auto& [name, v] : tol.per_check) {
    if (!(std::isfinite(v) && v >= 0.0)) throw InvalidArgument("tolerance for '" + name + "' must be >= 0");
  }
}

void apply_json(RunConfig& cfg, const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidArgument("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") {
      const auto c = parse_command(get_string(value, key));
      if (!c) throw InvalidArgument("unknown command in config");
      if (*c != cfg.command) {
        throw InvalidArgument("config is for command '" + std::string(to_string(*c)) + "', not '" +
                              std::string(to_string(cfg.command)) + "'");
      }
    } else if (key == "f") {
      cfg.beam.f = get_number(value, key);
    } else if (key == "w0") {
      cfg.beam.w0 = get_number(value, key);
    } else if (key == "m_max") {
      cfg.beam.m_max = get_integer(value, key);
    } else if (key == "l") {
      if (value.is_number_integer()) {
        cfg.beam.l_set = {get_integer(value, key)};
      } else {
        cfg.beam.l_set = parse_l_range(get_string(value, key));
      }
    } else if (key == "mode") {
      std::tie(cfg.mode_m, cfg.mode_l) = parse_mode(get_string(value, key));
    } else if (key == "s") {
      cfg.s = value.is_number_integer() ? get_integer(value, key) : parse_direction(get_string(value, key));
    } else if (key == "kind") {
      const auto kind = fields::parse_field_kind(get_string(value, key));
      if (!kind) throw InvalidArgument("unknown field kind in config");
      cfg.kind = *kind;
    } else if (key == "grid") {
      cfg.grid = parse_grid(get_string(value, key));
    } else if (key == "kappa") {
      cfg.kappa = parse_axis(get_string(value, key));
    } else if (key == "out") {
      cfg.out = get_string(value, key);
    } else if (key == "suite") {
      cfg.suite = get_string(value, key);
    } else if (key == "report") {
      cfg.report = get_string(value, key);
    } else if (key == "tolerance") {
      const double v = get_number(value, key);
      if (v < 0.0) throw InvalidArgument("tolerance must be >= 0");
      cfg.tol.global = v;
    } else if (key == "tolerances") {
      if (!value.is_object()) throw InvalidArgument("config key 'tolerances' must be an object");
      for (const auto& [name, v] : value.items()) {
        const double t = get_number(v, "tolerances." + name);
        if (t < 0.0) throw InvalidArgument("tolerance must be >= 0");
        cfg.tol.per_check[name] = t;
      }
    } else if (key == "quadrature") {
      if (!value.is_object()) throw InvalidArgument("config key 'quadrature' must be an object");
      for (const auto& [name, v] : value.items()) {
        if (name == "radial_panel_order") {
          cfg.quadrature.radial_panel_order = get_integer(v, name);
        } else if (name == "radial_panel_width") {
          cfg.quadrature.radial_panel_width = get_number(v, name);
        } else if (name == "edge_order") {
          cfg.quadrature.edge_order = get_integer(v, name);
        } else if (name == "angular_nodes") {
          cfg.quadrature.angular_nodes = get_integer(v, name);
        } else {
          throw InvalidArgument("unknown quadrature key '" + name + "'");
        }
      }
    } else {
      throw InvalidArgument("unknown config key '" + key + "'");
    }
  }
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["command"] = to_string(cfg.command);
  switch (cfg.command) {
    case Command::gram:
      j["w0"] = cfg.beam.w0;
      j["f"] = cfg.beam.f;
      j["l"] = cfg.beam.l_set;
      j["m_max"] = cfg.beam.m_max;
      break;
    case Command::field:
      j["kind"] = fields::to_string(cfg.kind);
      j["mode"] = {cfg.mode_m, cfg.mode_l};
      j["s"] = cfg.s;
      j["f"] = cfg.beam.f;
      j["grid"] = "rho=" + axis_text(cfg.grid.rho) + ",theta=" + axis_text(cfg.grid.theta) + ",z=" +
                  axis_text(cfg.grid.z);
      break;
    case Command::spectrum:
      j["mode"] = {cfg.mode_m, cfg.mode_l};
      j["kappa"] = axis_text(cfg.kappa);
      break;
    case Command::verify:
      j["suite"] = cfg.suite.empty() ? "all" : cfg.suite;
      if (cfg.tol.global) j["tolerance"] = *cfg.tol.global;
      if (!cfg.tol.per_check.empty()) {
        nlohmann::ordered_json per;
        for (const auto& [name, v] : cfg.tol.per_check) per[name] = v;
        j["tolerances"] = per;
      }
      break;
  }
  return j;
}

}  // namespace beamgram::cli
