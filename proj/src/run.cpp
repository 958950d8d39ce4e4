#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nlwr/diagnostics.hpp"
#include "nlwr/solver.hpp"

namespace nlwr {

namespace {

void validate(const RunConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(c.h > 0.0 && std::isfinite(c.h), "h must be positive");
  require(c.delta > 0.0 && std::isfinite(c.delta), "delta must be positive");
  require(c.lambda > 0.0 && std::isfinite(c.lambda), "lambda must be positive");
  require(c.alpha >= 0.0 && std::isfinite(c.alpha), "alpha must be >= 0");
  require(c.T >= 0.0 && std::isfinite(c.T), "T must be >= 0");
  require(c.x_hi > c.x_lo, "report window must be non-empty");
  for (double t : c.snapshot_times) {
    require(t >= 0.0 && std::isfinite(t), "snapshot times must be >= 0");
  }
}

std::vector<double> requested_times(const RunConfig& c) {
  if (!c.snapshot_times.empty()) return c.snapshot_times;
  std::vector<double> t{0.0, 0.5 * c.T, c.T};
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

template <typename Stepper>
Trajectory drive(const RunConfig& config, const RunOptions& options,
                 Index m, Stepper&& advance) {
  Trajectory traj;
  traj.config = config;
  traj.m = m;
  const Grid grid = grid_for(config);
  traj.steps = step_count(config);
  traj.final_time = static_cast<double>(traj.steps) * grid.tau();

  if (std::abs(traj.final_time - config.T) > 1e-12 * std::max(1.0, config.T)) {
    std::ostringstream msg;
    msg << "T = " << config.T << " is not a multiple of tau = " << grid.tau()
        << "; running " << traj.steps << " steps to t = " << traj.final_time;
    traj.warnings.push_back(msg.str());
  }

  SolutionField<double> current = discretize_initial(config.initial, grid);
  traj.initial = current;

  const std::vector<double> times = requested_times(config);
  std::vector<Index> snapshot_levels;
  for (double t : times) {
    snapshot_levels.push_back(nearest_level(t, grid.tau(), traj.steps));
  }
  auto take_snapshots = [&](const SolutionField<double>& field) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (snapshot_levels[i] == field.n) traj.snapshots.push_back({times[i], field});
    }
  };

  take_snapshots(current);
  if (options.keep_all_levels) traj.levels.push_back(current);
  for (Index n = 0; n < traj.steps; ++n) {
    SolutionField<double> next = advance(current);
    for (const auto& observe : options.observers) observe(current, next);
    current = std::move(next);
    take_snapshots(current);
    if (options.keep_all_levels) traj.levels.push_back(current);
  }
  std::stable_sort(traj.snapshots.begin(), traj.snapshots.end(),
                   [](const Snapshot& a, const Snapshot& b) {
                     return a.field.n < b.field.n;
                   });
  traj.final = std::move(current);
  return traj;
}

}  // namespace

double domain_padding(const RunConfig& config) {
  return config.T + config.delta + 2.0 * config.h;
}

Grid grid_for(const RunConfig& config) {
  return make_grid(config.h, config.lambda, config.x_lo, config.x_hi,
                   domain_padding(config));
}

Index step_count(const RunConfig& config) {
  return static_cast<Index>(std::llround(config.T / (config.lambda * config.h)));
}

Index nearest_level(double t, double tau, Index steps) {
  const double level = std::ceil(t / tau - 0.5);
  return std::clamp(static_cast<Index>(level), Index(0), steps);
}

Trajectory run(const RunConfig& config, const RunOptions& options) {
  validate(config);
  const auto kernel = make_kernel<double>(config.kernel);
  const auto weights = build_weights(kernel, config.delta, config.h, config.rule);
  const FluxFunction<double> flux{config.flux, config.alpha};

  const auto a5 = check_assumption5(flux, config.lambda);
  const auto a3 = check_assumption3(weights, kernel, config.delta, config.h);

  Trajectory traj = drive(config, options, weights.m,
                          [&](const SolutionField<double>& f) {
                            return step(f, flux, weights);
                          });
  traj.assumption5_margin = a5.margin;
  if (!a5.ok) {
    std::ostringstream msg;
    msg << "CFL bound lambda*sum_i ||theta_i|| < 1 fails for " << to_string(flux.kind)
        << " at lambda = " << config.lambda << " (margin " << a5.margin << ")";
    traj.warnings.push_back(msg.str());
  }

  const double pad = domain_padding(config);
  Delta0Inputs inputs{a3.gap_constant, config.initial.inf(),
                      initial_lipschitz_constant(config.initial,
                                                 config.x_lo - pad,
                                                 config.x_hi + pad,
                                                 config.h / 10.0),
                      kernel.value_at_zero};
  try {
    traj.delta0 = delta0(inputs);
    if (config.delta > traj.delta0) {
      std::ostringstream msg;
      msg << "delta = " << config.delta << " exceeds the horizon threshold "
          << traj.delta0 << "; maximum-principle/TVD guarantees do not apply";
      traj.warnings.push_back(msg.str());
    }
  } catch (const std::domain_error&) {
    traj.delta0 = 0.0;
    traj.warnings.push_back(
        "horizon threshold undefined (needs positive weight gap, rho_min, w(0))");
  }
  return traj;
}

Trajectory run_local(const RunConfig& config, const RunOptions& options) {
  validate(config);
  const FluxFunction<double> flux{config.flux, config.alpha};
  Trajectory traj = drive(config, options, 1,
                          [&](const SolutionField<double>& f) {
                            return step_local(f, flux);
                          });
  const auto a5 = check_assumption5(flux, config.lambda);
  traj.assumption5_margin = a5.margin;
  if (!a5.ok) {
    traj.warnings.push_back("CFL bound lambda*sum_i ||theta_i|| < 1 fails");
  }
  return traj;
}

SolutionField<double> run_local_reference(const RunConfig& config) {
  RunConfig c = config;
  c.snapshot_times = {c.T};
  return run_local(c).final;
}

}  // namespace nlwr
