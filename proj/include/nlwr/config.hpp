#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nlwr/experiments.hpp"
#include "nlwr/solver.hpp"

namespace nlwr {

/// Malformed run configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a RunConfig from JSON. Unknown fields are rejected.
///
/// Required: "rule", "flux", "delta", "h", "T", "initial".
/// Optional: "kernel" (linear), "lambda" (0.25), "alpha" (2),
/// "report_window" ([0, 1]), "snapshot_times" ([0, T/2, T]).
/// "initial" is "bell", "riemann", or an object with "type" plus
/// "rho_left"/"rho_right" (riemann) or "x"/"rho" arrays (table).
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

nlohmann::json to_json(const InitialData& data);
nlohmann::json to_json(const RunConfig& config);

/// Overrides fields of an experiment's default parameterization.
/// Accepted: "rules", "kernels", "initial" (arrays of names/objects),
/// "m_values", "deltas", "h_ladder", "snapshot_times" (arrays),
/// "reference_h", "flux", "alpha", "lambda", "T".
ExperimentSpec apply_experiment_overrides(ExperimentSpec spec, const nlohmann::json& j);

/// "0,0.5,1" -> {0, 0.5, 1}.
std::vector<double> parse_time_list(std::string_view text);

}  // namespace nlwr
