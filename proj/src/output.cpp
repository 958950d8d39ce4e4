#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "nlwr/config.hpp"
#include "nlwr/experiments.hpp"

namespace nlwr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string config_hash(const RunConfig& config, bool local) {
  json j = to_json(config);
  j["scheme"] = local ? "local" : "nonlocal";
  const std::string text = j.dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
  return buf;
}

Index window_cell_count(const Grid& g) {
  Index count = 0;
  for (Index j = g.j_min; j <= g.j_max; ++j) {
    if (g.x(j) >= g.x_lo && g.x(j) <= g.x_hi) ++count;
  }
  return count;
}

void write_snapshot_csv(const fs::path& path, const SolutionField<double>& field) {
  auto out = open_out(path);
  out << "x,rho\n";
  const Grid& g = field.grid;
  for (Index j = g.j_min; j <= g.j_max; ++j) {
    const double x = g.x(j);
    if (x >= g.x_lo && x <= g.x_hi) out << full(x) << ',' << full(field.at(j)) << '\n';
  }
}

json meta_json(const DiagnosedRun& run) {
  const Trajectory& t = run.trajectory;
  const Grid& g = t.final.grid;
  json snapshots = json::array();
  for (const auto& s : t.snapshots) {
    snapshots.push_back({{"requested_time", s.requested_time},
                         {"actual_time", s.field.time()},
                         {"level", s.field.n},
                         {"file", "snapshot_t" + fixed(s.requested_time, 6) + ".csv"}});
  }
  return {{"config", to_json(t.config)},
          {"scheme", run.local ? "local" : "nonlocal"},
          {"tau", g.tau()},
          {"m", t.m},
          {"steps", t.steps},
          {"final_time", t.final_time},
          {"j_min", g.j_min},
          {"j_max", g.j_max},
          {"window_cells", window_cell_count(g)},
          {"snapshots", snapshots},
          {"warnings", t.warnings}};
}

json diagnostics_json(const DiagnosedRun& run) {
  const auto& mp = run.max_principle;
  const auto& tvd = run.tvd;
  const auto& lip = run.lipschitz;
  json j = {
      {"assumption5_margin", run.trajectory.assumption5_margin},
      {"delta0", finite_or_null(run.trajectory.delta0)},
      {"max_principle",
       {{"ok", mp.ok},
        {"lower", mp.lower},
        {"upper", mp.upper},
        {"observed_min", mp.observed_min},
        {"observed_max", mp.observed_max},
        {"violations", mp.violating_levels.size()}}},
      {"tvd",
       {{"ok", tvd.ok},
        {"tv_initial", tvd.tv_initial},
        {"tv_final", tvd.tv_final},
        {"max_increase", finite_or_null(tvd.max_increase)},
        {"violations", tvd.violating_steps.size()},
        {"increment_ok", tvd.increment_ok},
        {"space_time_tv", tvd.space_time_tv},
        {"space_time_bound", tvd.space_time_bound},
        {"space_time_ok", tvd.space_time_ok}}},
  };
  if (!run.local) {
    const double final_Ln = lip.Ln.empty() ? 0.0 : lip.Ln.back();
    const double final_bound = lip.bound.empty() ? 0.0 : lip.bound.back();
    j["lipschitz"] = {{"L_initial", finite_or_null(lip.L_initial)},
                      {"L0", lip.L0},
                      {"final_Ln", final_Ln},
                      {"final_bound", final_bound},
                      {"delta0", finite_or_null(lip.delta0)},
                      {"preconditions", lip.preconditions},
                      {"bound_enforced", lip.bound_enforced},
                      {"difference_violations", lip.difference_violations.size()},
                      {"decay_violations", lip.decay_violations.size()},
                      {"warnings", lip.warnings}};
  }
  return j;
}

fs::path write_run(const fs::path& root, const DiagnosedRun& run) {
  const fs::path dir = root / config_hash(run.trajectory.config, run.local);
  fs::create_directories(dir);
  for (const auto& s : run.trajectory.snapshots) {
    write_snapshot_csv(dir / ("snapshot_t" + fixed(s.requested_time, 6) + ".csv"),
                       s.field);
  }
  open_out(dir / "meta.json") << meta_json(run).dump(2) << '\n';
  open_out(dir / "diagnostics.json") << diagnostics_json(run).dump(2) << '\n';
  return dir;
}

void write_errors_csv(const fs::path& path, const std::vector<ErrorRow>& rows) {
  auto out = open_out(path);
  out << "h,delta,m,rule,flux,kernel,initial,error\n";
  for (const auto& r : rows) {
    out << full(r.h) << ',' << full(r.delta) << ',' << r.m << ',' << to_string(r.rule)
        << ',' << to_string(r.flux) << ',' << to_string(r.kernel) << ',' << r.initial
        << ',' << full(r.error) << '\n';
  }
}

}  // namespace nlwr
