// Command-line driver: single runs, the four experiment sweeps, and
// assumption checks.
#include <cmath>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "nlwr/config.hpp"
#include "nlwr/experiments.hpp"

namespace {

using namespace nlwr;
using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;

json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_single(const fs::path& config_path, const fs::path& out,
               const std::string& times) {
  RunConfig config = load_run_config(config_path);
  if (!times.empty()) config.snapshot_times = parse_time_list(times);
  const DiagnosedRun run = run_diagnosed(config);
  print_warnings(run.trajectory.warnings);
  print_warnings(run.lipschitz.warnings);
  const fs::path dir = write_run(out / "single", run);
  std::cout << dir.string() << '\n';
  std::cout << "steps " << run.trajectory.steps << ", m " << run.trajectory.m
            << ", max principle " << (run.max_principle.ok ? "ok" : "VIOLATED")
            << ", tvd " << (run.tvd.ok ? "ok" : "VIOLATED") << '\n';
  return kOk;
}

int cmd_experiment(int number, const std::string& config_path, const fs::path& out,
                   unsigned jobs, const std::string& times) {
  if (number < 1 || number > 4) throw ConfigError("experiment must be 1, 2, 3 or 4");
  ExperimentSpec spec = default_experiment(static_cast<ExperimentId>(number));
  if (!config_path.empty()) spec = apply_experiment_overrides(spec, load_json(config_path));
  if (!times.empty()) spec.snapshot_times = parse_time_list(times);
  spec.output_dir = out;
  spec.jobs = jobs;
  const ExperimentResult result = run_experiment(spec);
  print_warnings(result.warnings);
  for (const auto& f : result.failures) std::cerr << "failed: " << f << '\n';
  std::cout << "h,delta,m,rule,kernel,initial,error\n";
  for (const auto& r : result.rows) {
    std::cout << r.h << ',' << r.delta << ',' << r.m << ',' << to_string(r.rule) << ','
              << to_string(r.kernel) << ',' << r.initial << ',' << r.error << '\n';
  }
  std::cout << "wrote " << (out / experiment_name(spec.id) / "errors.csv").string() << '\n';
  return result.failures.empty() ? kOk : kNumericalFailure;
}

struct CheckArgs {
  std::string flux = "lf";
  std::string rule = "exact";
  std::string kernel = "linear";
  double lambda = 0.25;
  double alpha = 2.0;
  int m = 5;
  double h = 0.01;
  double rho_min = 0.0;
  double lipschitz = -1.0;
  std::string out;
};

int cmd_check(const CheckArgs& a) {
  if (a.m < 1) throw ConfigError("--m must be >= 1");
  if (!(a.h > 0.0) || !(a.lambda > 0.0) || !(a.alpha >= 0.0)) {
    throw ConfigError("--cell-width, --lambda must be positive and --alpha >= 0");
  }
  auto lookup = [](auto fn, const std::string& name, const char* flag) {
    try {
      return fn(name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string(flag) + ": " + e.what());
    }
  };
  const FluxFunction<double> flux{lookup(flux_from_name, a.flux, "--flux"), a.alpha};
  const auto kernel = make_kernel<double>(lookup(kernel_from_name, a.kernel, "--kernel"));
  const WeightRule rule = lookup(rule_from_name, a.rule, "--rule");
  const double delta = a.m * a.h;

  const auto weights = build_weights(kernel, delta, a.h, rule);
  const auto a3 = check_assumption3(weights, kernel, delta, a.h);
  const auto a4 = check_assumption4(flux);
  const auto a5 = check_assumption5(flux, a.lambda);

  json clauses = json::array();
  for (const auto& c : a4.clauses) {
    json entry = {{"name", c.name}, {"ok", c.ok}, {"worst", c.worst}};
    if (c.witness) {
      entry["witness"] = {(*c.witness)(0), (*c.witness)(1), (*c.witness)(2),
                          (*c.witness)(3)};
    }
    clauses.push_back(entry);
  }
  json report = {
      {"flux", std::string(to_string(flux.kind))},
      {"alpha", a.alpha},
      {"lambda", a.lambda},
      {"kernel", std::string(to_string(kernel.profile))},
      {"rule", std::string(to_string(rule))},
      {"m", weights.m},
      {"weights",
       {{"values", std::vector<double>(weights.weights.data(),
                                       weights.weights.data() + weights.weights.size())},
        {"sum", weights.weight_sum}}},
      {"assumption3",
       {{"sandwich_ok", a3.sandwich_ok},
        {"gap_constant", a3.gap_constant},
        {"tail_gap", a3.tail_gap},
        {"normalized", a3.normalized},
        {"c_theoretical", a3.c_theoretical},
        {"strictly_decreasing_kernel", is_strictly_decreasing(kernel.profile)}}},
      {"assumption4", {{"ok", a4.all_ok()}, {"clauses", clauses}}},
      {"assumption5",
       {{"ok", a5.ok},
        {"margin", a5.margin},
        {"sup_norms", {a5.sup_norms(0), a5.sup_norms(1), a5.sup_norms(2), a5.sup_norms(3)}}}},
  };
  std::vector<std::string> warnings;
  if (a.rho_min > 0.0 && a.lipschitz >= 0.0) {
    try {
      const double d0 = delta0({a3.gap_constant, a.rho_min, a.lipschitz, kernel.value_at_zero});
      report["delta0"] = std::isfinite(d0) ? json(d0) : json(nullptr);
      report["delta_within_delta0"] = delta <= d0;
    } catch (const std::domain_error& e) {
      report["delta0"] = nullptr;
      warnings.push_back(e.what());
    }
  }
  if (!a5.ok) {
    std::ostringstream msg;
    msg << "CFL bound lambda*sum_i ||theta_i|| < 1 fails for " << to_string(flux.kind)
        << " at lambda = " << a.lambda << " (margin " << a5.margin << ")";
    warnings.push_back(msg.str());
  }
  if (!a4.all_ok()) warnings.push_back("flux structure conditions fail; see assumption4.clauses");
  if (!a3.sandwich_ok || !(a3.gap_constant > 0.0)) {
    warnings.push_back("weights violate the sandwich or positive-gap condition");
  }
  report["warnings"] = warnings;
  print_warnings(warnings);

  std::cout << report.dump(2) << '\n';
  if (!a.out.empty()) {
    const fs::path dir = fs::path(a.out) / "check";
    fs::create_directories(dir);
    std::ofstream(dir / "check.json") << report.dump(2) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume solver for the nonlocal LWR traffic model"};
  app.require_subcommand(1);

  std::string config_path, out = "out", times;
  unsigned jobs = 1;

  auto* single = app.add_subcommand("single", "Run one configuration");
  single->add_option("--config", config_path, "JSON run configuration")->required();
  single->add_option("--out", out, "Output directory");
  single->add_option("--snapshot-times", times, "Comma-separated snapshot times");

  int number = 0;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment sweep");
  experiment->add_option("id", number, "Experiment number (1-4)")->required();
  experiment->add_option("--config", config_path, "JSON overrides of the sweep");
  experiment->add_option("--out", out, "Output directory");
  experiment->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  experiment->add_option("--snapshot-times", times, "Comma-separated snapshot times");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Report the weight and flux assumptions");
  check->add_option("--flux", check_args.flux, "lf, godunov or mlf");
  check->add_option("--rule", check_args.rule, "left, normalized-left or exact");
  check->add_option("--kernel", check_args.kernel, "linear, exponential or constant");
  check->add_option("--lambda", check_args.lambda, "Mesh ratio tau/h");
  check->add_option("--alpha", check_args.alpha, "Numerical viscosity");
  check->add_option("--m", check_args.m, "Stencil size (delta = m h)");
  check->add_option("--cell-width", check_args.h, "Cell width h");
  check->add_option("--rho-min", check_args.rho_min, "Lower bound of the initial density");
  check->add_option("--lipschitz", check_args.lipschitz,
                    "One-sided Lipschitz constant of the initial density");
  check->add_option("--out", check_args.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*single) return cmd_single(config_path, out, times);
    if (*experiment) return cmd_experiment(number, config_path, out, jobs, times);
    return cmd_check(check_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure at cell " << e.cell() << ", level " << e.level()
              << ": " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}
