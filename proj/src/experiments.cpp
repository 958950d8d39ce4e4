#include "nlwr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace nlwr {

Delta0Inputs delta0_inputs(const RunConfig& config) {
  const auto kernel = make_kernel<double>(config.kernel);
  const auto w = build_weights(kernel, config.delta, config.h, config.rule);
  const auto a3 = check_assumption3(w, kernel, config.delta, config.h);
  const double pad = domain_padding(config);
  return {a3.gap_constant, config.initial.inf(),
          initial_lipschitz_constant(config.initial, config.x_lo - pad,
                                     config.x_hi + pad, config.h / 10.0),
          kernel.value_at_zero};
}

DiagnosedRun run_diagnosed(const RunConfig& config, bool local, bool keep_all_levels) {
  const SolutionField<double> initial =
      discretize_initial(config.initial, grid_for(config));
  const double final_time =
      static_cast<double>(step_count(config)) * config.lambda * config.h;

  MaxPrincipleMonitor mp(initial);
  TvdMonitor tvd(initial, final_time);
  RunOptions options;
  options.keep_all_levels = keep_all_levels;
  options.observers.push_back(
      [&](const SolutionField<double>& a, const SolutionField<double>& b) {
        mp.observe(a, b);
      });
  options.observers.push_back(
      [&](const SolutionField<double>& a, const SolutionField<double>& b) {
        tvd.observe(a, b);
      });

  DiagnosedRun out;
  out.local = local;
  if (local) {
    out.trajectory = run_local(config, options);
  } else {
    const FluxFunction<double> flux{config.flux, config.alpha};
    const double margin = check_assumption5(flux, config.lambda).margin;
    LipschitzMonitor lip(initial, delta0_inputs(config), config.delta, margin);
    options.observers.push_back(
        [&](const SolutionField<double>& a, const SolutionField<double>& b) {
          lip.observe(a, b);
        });
    out.trajectory = run(config, options);
    out.lipschitz = lip.trace();
  }
  out.max_principle = mp.report();
  out.tvd = tvd.report();
  return out;
}

std::string experiment_name(ExperimentId id) {
  switch (id) {
    case ExperimentId::Exp1Snapshots:
      return "exp1";
    case ExperimentId::Exp2LocalLimit:
      return "exp2";
    case ExperimentId::Exp3UniformInDelta:
      return "exp3";
    case ExperimentId::Exp4Kernels:
      return "exp4";
  }
  return "exp";
}

ExperimentSpec default_experiment(ExperimentId id) {
  ExperimentSpec s;
  s.id = id;
  s.initial = {InitialData::bell(), InitialData::riemann(0.1, 0.6)};
  s.kernels = {KernelProfile::LinearDecreasing};
  s.rules = {WeightRule::LeftEndpoint, WeightRule::NormalizedLeftEndpoint,
             WeightRule::ExactQuadrature};
  for (int l = 0; l <= 3; ++l) s.h_ladder.push_back(0.01 / std::ldexp(1.0, l));
  s.m_values = {1, 2, 5};
  s.snapshot_times = {1.0};
  switch (id) {
    case ExperimentId::Exp1Snapshots:
      s.deltas = {0.005};
      s.h_ladder = {0.001};
      s.m_values.clear();
      s.reference_h = 0.0002;
      s.snapshot_times = {0.0, 0.5, 1.0};
      break;
    case ExperimentId::Exp2LocalLimit:
      break;
    case ExperimentId::Exp3UniformInDelta:
      s.m_values.clear();
      s.deltas = {0.01, 0.005, 0.0025};
      break;
    case ExperimentId::Exp4Kernels:
      s.rules = {WeightRule::ExactQuadrature};
      s.kernels = {KernelProfile::LinearDecreasing, KernelProfile::Exponential,
                   KernelProfile::Constant};
      break;
  }
  return s;
}

void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

namespace {

struct Job {
  RunConfig config;
  std::size_t reference = 0;
};

bool uses_nonlocal_reference(ExperimentId id) {
  return id == ExperimentId::Exp3UniformInDelta;
}

std::string describe(const RunConfig& c) {
  std::ostringstream s;
  s << to_string(c.rule) << '/' << to_string(c.kernel) << '/' << c.initial.name()
    << " h=" << c.h << " delta=" << c.delta;
  return s.str();
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  RunConfig base;
  base.flux = spec.flux;
  base.alpha = spec.alpha;
  base.lambda = spec.lambda;
  base.T = spec.T;
  base.snapshot_times = spec.snapshot_times;

  // Coarse jobs and the distinct reference configurations they need.
  std::vector<Job> jobs;
  std::vector<RunConfig> references;
  std::map<std::string, std::size_t> reference_index;
  auto reference_for = [&](const RunConfig& coarse) {
    RunConfig r = base;
    r.initial = coarse.initial;
    r.h = spec.reference_h;
    r.snapshot_times = {spec.T};
    if (uses_nonlocal_reference(spec.id)) {
      r.rule = coarse.rule;
      r.kernel = coarse.kernel;
      r.delta = coarse.delta;
    } else {
      r.delta = spec.reference_h;
    }
    const std::string key = config_hash(r, !uses_nonlocal_reference(spec.id));
    auto [it, inserted] = reference_index.emplace(key, references.size());
    if (inserted) references.push_back(r);
    return it->second;
  };

  for (const auto& initial : spec.initial) {
    for (auto kernel : spec.kernels) {
      for (auto rule : spec.rules) {
        auto add = [&](double h, double delta) {
          RunConfig c = base;
          c.initial = initial;
          c.kernel = kernel;
          c.rule = rule;
          c.h = h;
          c.delta = delta;
          jobs.push_back({c, reference_for(c)});
        };
        for (double h : spec.h_ladder) {
          for (int m : spec.m_values) add(h, m * h);
          for (double d : spec.deltas) add(h, d);
        }
      }
    }
  }

  ExperimentResult result;
  std::mutex lock;
  const auto root = spec.output_dir.empty()
                        ? std::filesystem::path()
                        : spec.output_dir / experiment_name(spec.id);

  std::vector<std::optional<SolutionField<double>>> ref_fields(references.size());
  parallel_for(references.size(), spec.jobs, [&](std::size_t i) {
    try {
      const bool local = !uses_nonlocal_reference(spec.id);
      DiagnosedRun r = run_diagnosed(references[i], local);
      ref_fields[i] = r.trajectory.final;
      if (!root.empty()) write_run(root / "reference", r);
    } catch (const std::exception& e) {
      std::lock_guard g(lock);
      result.failures.push_back("reference " + describe(references[i]) + ": " + e.what());
    }
  });

  std::vector<std::optional<DiagnosedRun>> runs(jobs.size());
  std::vector<std::optional<ErrorRow>> rows(jobs.size());
  parallel_for(jobs.size(), spec.jobs, [&](std::size_t i) {
    const Job& job = jobs[i];
    try {
      DiagnosedRun r = run_diagnosed(job.config);
      const auto& ref = ref_fields[job.reference];
      if (!ref) throw std::runtime_error("reference solve failed");
      ErrorRow row{job.config.h,    job.config.delta,        r.trajectory.m,
                   job.config.rule, job.config.flux,         job.config.kernel,
                   job.config.initial.name(),
                   l1_error(r.trajectory.final, *ref, job.config.x_lo, job.config.x_hi)};
      if (!root.empty()) write_run(root, r);
      rows[i] = row;
      runs[i] = std::move(r);
    } catch (const NumericalError& e) {
      DiagnosedRun r;
      r.trajectory.config = job.config;
      r.trajectory.warnings.push_back(std::string("diverged: ") + e.what());
      rows[i] = ErrorRow{job.config.h, job.config.delta,
                         stencil_size(job.config.delta, job.config.h), job.config.rule,
                         job.config.flux, job.config.kernel, job.config.initial.name(),
                         std::numeric_limits<double>::infinity()};
      runs[i] = std::move(r);
      std::lock_guard g(lock);
      result.failures.push_back(describe(job.config) + ": " + e.what());
    } catch (const std::exception& e) {
      std::lock_guard g(lock);
      result.failures.push_back(describe(job.config) + ": " + e.what());
    }
  });

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!rows[i]) continue;
    for (const auto& w : runs[i]->trajectory.warnings) {
      result.warnings.push_back(describe(jobs[i].config) + ": " + w);
    }
    result.rows.push_back(*rows[i]);
    result.runs.push_back(std::move(*runs[i]));
  }
  if (!root.empty()) write_errors_csv(root / "errors.csv", result.rows);
  return result;
}

std::vector<ErrorRow> select_rows(const std::vector<ErrorRow>& rows,
                                  std::optional<WeightRule> rule,
                                  std::optional<KernelProfile> kernel,
                                  std::optional<std::string> initial,
                                  std::optional<Index> m,
                                  std::optional<double> delta) {
  std::vector<ErrorRow> out;
  for (const auto& r : rows) {
    if (rule && r.rule != *rule) continue;
    if (kernel && r.kernel != *kernel) continue;
    if (initial && r.initial != *initial) continue;
    if (m && r.m != *m) continue;
    if (delta && std::abs(r.delta - *delta) > 1e-12 * *delta) continue;
    out.push_back(r);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ErrorRow& a, const ErrorRow& b) { return a.h > b.h; });
  return out;
}

std::vector<std::pair<double, double>> error_series(const std::vector<ErrorRow>& rows) {
  std::vector<std::pair<double, double>> out;
  for (const auto& r : rows) out.emplace_back(r.h, r.error);
  return out;
}

}  // namespace nlwr
