#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlwr/diagnostics.hpp"
#include "nlwr/solver.hpp"

namespace nlwr {

/// A run together with the streaming property checks gathered during it.
struct DiagnosedRun {
  Trajectory trajectory;
  bool local = false;
  MaxPrincipleReport max_principle;
  TvdReport tvd;
  LipschitzTrace lipschitz;
};

/// Runs `config` (or its local counterpart) with maximum-principle, TVD and
/// one-sided Lipschitz monitors attached.
DiagnosedRun run_diagnosed(const RunConfig& config, bool local = false,
                           bool keep_all_levels = false);

/// Inputs of the horizon threshold for a configuration, with L sampled at
/// h/10 over the stored domain.
Delta0Inputs delta0_inputs(const RunConfig& config);

// --- output layout ---------------------------------------------------------

/// Stable short hash of the echoed configuration (FNV-1a, hex).
std::string config_hash(const RunConfig& config, bool local);

/// Number of cells whose centre lies in the report window.
Index window_cell_count(const Grid& grid);

/// Writes "x,rho" rows for the cells centred in the report window.
void write_snapshot_csv(const std::filesystem::path& path,
                        const SolutionField<double>& field);

nlohmann::json meta_json(const DiagnosedRun& run);
nlohmann::json diagnostics_json(const DiagnosedRun& run);

/// Writes <root>/<hash>/{snapshot_t*.csv, meta.json, diagnostics.json} and
/// returns the run directory.
std::filesystem::path write_run(const std::filesystem::path& root,
                                const DiagnosedRun& run);

// --- experiment sweeps -----------------------------------------------------

enum class ExperimentId {
  Exp1Snapshots = 1,
  Exp2LocalLimit = 2,
  Exp3UniformInDelta = 3,
  Exp4Kernels = 4,
};

struct ExperimentSpec {
  ExperimentId id = ExperimentId::Exp2LocalLimit;
  std::vector<WeightRule> rules;
  std::vector<KernelProfile> kernels;
  std::vector<InitialData> initial;
  /// Horizons as multiples of h (Exp1/2/4); Exp1 uses `deltas` instead.
  std::vector<int> m_values;
  /// Fixed horizons (Exp1, Exp3).
  std::vector<double> deltas;
  std::vector<double> h_ladder;
  double reference_h = 0.01 / 32.0;
  FluxKind flux = FluxKind::LaxFriedrichs;
  double alpha = 2.0;
  double lambda = 0.25;
  double T = 1.0;
  std::vector<double> snapshot_times;
  /// Empty: nothing is written.
  std::filesystem::path output_dir;
  unsigned jobs = 1;
};

/// Default parameterization of each experiment.
ExperimentSpec default_experiment(ExperimentId id);

std::string experiment_name(ExperimentId id);

struct ErrorRow {
  double h = 0.0;
  double delta = 0.0;
  Index m = 0;
  WeightRule rule = WeightRule::ExactQuadrature;
  FluxKind flux = FluxKind::LaxFriedrichs;
  KernelProfile kernel = KernelProfile::LinearDecreasing;
  std::string initial;
  double error = 0.0;
};

struct ExperimentResult {
  std::vector<ErrorRow> rows;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
  /// Diagnosed coarse runs, in the same order as rows. Diverged runs carry
  /// only their config and a warning.
  std::vector<DiagnosedRun> runs;
};

/// Reference solves first, then every coarse configuration; independent
/// jobs run on a pool of `spec.jobs` workers. Failed jobs are listed in
/// `failures`. A coarse run that blows up keeps its row with an infinite
/// error; any other failure drops the row.
ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_errors_csv(const std::filesystem::path& path,
                      const std::vector<ErrorRow>& rows);

/// Rows matching every given filter, sorted by decreasing h.
std::vector<ErrorRow> select_rows(const std::vector<ErrorRow>& rows,
                                  std::optional<WeightRule> rule,
                                  std::optional<KernelProfile> kernel,
                                  std::optional<std::string> initial,
                                  std::optional<Index> m,
                                  std::optional<double> delta);

/// (h, error) pairs for fit_rate.
std::vector<std::pair<double, double>> error_series(const std::vector<ErrorRow>& rows);

/// Runs fn(0..count-1) on up to `jobs` threads.
void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& fn);

}  // namespace nlwr
