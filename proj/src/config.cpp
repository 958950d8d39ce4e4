#include "nlwr/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace nlwr {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      throw ConfigError(where + ": unknown field '" + key + "'");
    }
  }
}

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

std::string text(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_array()) throw ConfigError(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) {
      throw ConfigError(std::string("field '") + key + "' must hold numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

template <typename F>
auto named(const char* field, const std::string& value, F&& lookup) {
  try {
    return lookup(value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field '") + field + "': " + e.what());
  }
}

InitialData parse_initial(const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "bell") return InitialData::bell();
    if (name == "riemann") return InitialData::riemann(0.1, 0.6);
    throw ConfigError("field 'initial': unknown initial data '" + name + "'");
  }
  if (!j.is_object()) throw ConfigError("field 'initial' must be a string or object");
  const std::string type = text(j, "type");
  if (type == "bell") {
    reject_unknown(j, {"type"}, "initial");
    return InitialData::bell();
  }
  if (type == "riemann") {
    reject_unknown(j, {"type", "rho_left", "rho_right"}, "initial");
    const double l = number_or(j, "rho_left", 0.1);
    const double r = number_or(j, "rho_right", 0.6);
    if (!(l >= 0.0 && l <= 1.0 && r >= 0.0 && r <= 1.0)) {
      throw ConfigError("field 'initial': Riemann states must lie in [0, 1]");
    }
    return InitialData::riemann(l, r);
  }
  if (type == "table") {
    reject_unknown(j, {"type", "x", "rho"}, "initial");
    if (!j.contains("x") || !j.contains("rho")) {
      throw ConfigError("field 'initial': table needs 'x' and 'rho'");
    }
    try {
      return InitialData::table(numbers(j, "x"), numbers(j, "rho"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("field 'initial': ") + e.what());
    }
  }
  throw ConfigError("field 'initial': unknown type '" + type + "'");
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"kernel", "rule", "flux", "delta", "h", "lambda", "alpha", "T",
                  "initial", "report_window", "snapshot_times"},
                 "config");
  RunConfig c;
  if (j.contains("kernel")) c.kernel = named("kernel", text(j, "kernel"), kernel_from_name);
  c.rule = named("rule", text(j, "rule"), rule_from_name);
  c.flux = named("flux", text(j, "flux"), flux_from_name);
  c.delta = number(j, "delta");
  c.h = number(j, "h");
  c.lambda = number_or(j, "lambda", 0.25);
  c.alpha = number_or(j, "alpha", 2.0);
  c.T = number(j, "T");
  if (!j.contains("initial")) throw ConfigError("missing field 'initial'");
  c.initial = parse_initial(j.at("initial"));
  if (j.contains("report_window")) {
    const auto w = numbers(j, "report_window");
    if (w.size() != 2 || !(w[1] > w[0])) {
      throw ConfigError("field 'report_window' must be [x_lo, x_hi] with x_lo < x_hi");
    }
    c.x_lo = w[0];
    c.x_hi = w[1];
  }
  if (j.contains("snapshot_times")) c.snapshot_times = numbers(j, "snapshot_times");

  if (!(c.delta > 0.0)) throw ConfigError("field 'delta' must be positive");
  if (!(c.h > 0.0)) throw ConfigError("field 'h' must be positive");
  if (!(c.lambda > 0.0)) throw ConfigError("field 'lambda' must be positive");
  if (!(c.alpha >= 0.0)) throw ConfigError("field 'alpha' must be >= 0");
  if (!(c.T >= 0.0)) throw ConfigError("field 'T' must be >= 0");
  for (double t : c.snapshot_times) {
    if (!(t >= 0.0)) throw ConfigError("field 'snapshot_times' must be >= 0");
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

json to_json(const InitialData& d) {
  switch (d.kind) {
    case InitialData::Kind::BellShape:
      return {{"type", "bell"}};
    case InitialData::Kind::Riemann:
      return {{"type", "riemann"}, {"rho_left", d.rho_left}, {"rho_right", d.rho_right}};
    case InitialData::Kind::UserTable:
      return {{"type", "table"}, {"x", d.table_x}, {"rho", d.table_rho}};
  }
  return {};
}

json to_json(const RunConfig& c) {
  return {{"kernel", to_string(c.kernel)},
          {"rule", to_string(c.rule)},
          {"flux", to_string(c.flux)},
          {"delta", c.delta},
          {"h", c.h},
          {"lambda", c.lambda},
          {"alpha", c.alpha},
          {"T", c.T},
          {"initial", to_json(c.initial)},
          {"report_window", {c.x_lo, c.x_hi}},
          {"snapshot_times", c.snapshot_times}};
}

std::vector<double> parse_time_list(std::string_view s) {
  std::vector<double> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const auto item = s.substr(0, comma);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || !(v >= 0.0)) {
      throw ConfigError("bad snapshot time '" + std::string(item) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

ExperimentSpec apply_experiment_overrides(ExperimentSpec spec, const json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  reject_unknown(j, {"rules", "kernels", "initial", "m_values", "deltas", "h_ladder",
                     "snapshot_times", "reference_h", "flux", "alpha", "lambda", "T"},
                 "experiment");
  auto names = [&](const char* key) {
    const json& v = j.at(key);
    if (!v.is_array() || v.empty()) {
      throw ConfigError(std::string("field '") + key + "' must be a non-empty array");
    }
    std::vector<std::string> out;
    for (const auto& x : v) {
      if (!x.is_string()) throw ConfigError(std::string("field '") + key + "' must hold strings");
      out.push_back(x.get<std::string>());
    }
    return out;
  };
  auto positive = [&](const char* key) {
    auto v = numbers(j, key);
    for (double x : v) {
      if (!(x > 0.0)) throw ConfigError(std::string("field '") + key + "' must be positive");
    }
    return v;
  };
  if (j.contains("rules")) {
    spec.rules.clear();
    for (const auto& n : names("rules")) {
      spec.rules.push_back(named("rules", n, rule_from_name));
    }
  }
  if (j.contains("kernels")) {
    spec.kernels.clear();
    for (const auto& n : names("kernels")) {
      spec.kernels.push_back(
          named("kernels", n, kernel_from_name));
    }
  }
  if (j.contains("initial")) {
    const json& v = j.at("initial");
    if (!v.is_array() || v.empty()) throw ConfigError("field 'initial' must be a non-empty array");
    spec.initial.clear();
    for (const auto& x : v) spec.initial.push_back(parse_initial(x));
  }
  if (j.contains("m_values")) {
    spec.m_values.clear();
    for (double x : positive("m_values")) {
      if (x != std::floor(x)) throw ConfigError("field 'm_values' must hold integers");
      spec.m_values.push_back(static_cast<int>(x));
    }
  }
  if (j.contains("deltas")) spec.deltas = positive("deltas");
  if (j.contains("h_ladder")) spec.h_ladder = positive("h_ladder");
  if (j.contains("snapshot_times")) spec.snapshot_times = numbers(j, "snapshot_times");
  if (j.contains("reference_h")) spec.reference_h = number(j, "reference_h");
  if (j.contains("flux")) {
    spec.flux = named("flux", text(j, "flux"), flux_from_name);
  }
  spec.alpha = number_or(j, "alpha", spec.alpha);
  spec.lambda = number_or(j, "lambda", spec.lambda);
  spec.T = number_or(j, "T", spec.T);
  if (!(spec.reference_h > 0.0) || !(spec.lambda > 0.0) || !(spec.T >= 0.0) ||
      !(spec.alpha >= 0.0)) {
    throw ConfigError("experiment: reference_h, lambda must be positive; T, alpha >= 0");
  }
  for (double h : spec.h_ladder) {
    const double ratio = h / spec.reference_h;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio || ratio < 1.0 - 1e-9) {
      throw ConfigError("experiment: every h must be an integer multiple of reference_h");
    }
  }
  return spec;
}

}  // namespace nlwr
