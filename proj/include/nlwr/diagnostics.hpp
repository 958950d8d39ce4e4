#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "nlwr/solver.hpp"

namespace nlwr {

/// Slack applied to every discrete identity and inequality check.
inline constexpr double kPropertyTolerance = 1e-12;

double total_variation(const SolutionField<double>& field);

/// sup_j max(-(rho_{j+1} - rho_j)/h, 0).
double one_sided_lipschitz(const SolutionField<double>& field);

/// Inputs of the horizon threshold delta_0 = c rho_min / (2 L w(0)).
struct Delta0Inputs {
  double c = 0.0;
  double rho_min = 0.0;
  double L = 0.0;
  double w0 = 0.0;
};

/// Returns +inf when L = 0 (no decreasing variation in the data); any other
/// non-positive input throws std::domain_error.
double delta0(const Delta0Inputs& inputs);

/// One-sided Lipschitz constant of rho_0 over [a, b]: exact for Riemann and
/// table data, dense sampling at spacing `resolution` for the bell profile.
/// A downward Riemann jump gives +inf.
double initial_lipschitz_constant(const InitialData& data, double a, double b,
                                  double resolution);

/// Per-step min/max containment in [inf rho^0, sup rho^0].
struct MaxPrincipleReport {
  bool ok = true;
  double lower = 0.0;
  double upper = 0.0;
  double observed_min = std::numeric_limits<double>::infinity();
  double observed_max = -std::numeric_limits<double>::infinity();
  std::vector<Index> violating_levels;
};

struct TvdReport {
  bool ok = true;  ///< TV(n+1) <= TV(n) + tol at every step
  std::vector<Index> violating_steps;
  double max_increase = -std::numeric_limits<double>::infinity();
  double tv_initial = 0.0;
  double tv_final = 0.0;
  /// sum_j |rho^{n+1}_j - rho^n_j| <= TV(rho^0) at every step.
  bool increment_ok = true;
  double max_increment = 0.0;
  /// Space-time variation sum_n [tau TV(n) + h sum_j |rho^{n+1}_j - rho^n_j|]
  /// against T TV(rho^0) (1 + 1/lambda).
  double space_time_tv = 0.0;
  double space_time_bound = 0.0;
  bool space_time_ok = true;
};

struct LipschitzTrace {
  double L_initial = 0.0;  ///< one-sided Lipschitz constant of rho_0
  double L0 = 0.0;         ///< discrete L^n at n = 0
  std::vector<double> Ln;
  std::vector<double> bound;  ///< 1 / (1/L0 + 2 n tau)
  double delta = 0.0;
  double delta0 = 0.0;
  bool preconditions = false;  ///< delta <= delta0
  /// False when h >= h0 := margin (delta0 - delta)/4; violations are then
  /// informational.
  bool bound_enforced = false;
  double min_scaled_difference = 0.0;  ///< min_{j,n} r_j^n / h
  std::vector<Index> difference_violations;  ///< levels with r < -L h
  std::vector<Index> decay_violations;       ///< levels with L^n > bound
  std::vector<std::string> warnings;

  bool ok() const {
    return difference_violations.empty() && decay_violations.empty();
  }
};

/// Streaming checks over a trajectory: feed level 0, then each step.
class MaxPrincipleMonitor {
 public:
  explicit MaxPrincipleMonitor(const SolutionField<double>& initial);
  void observe(const SolutionField<double>& before,
               const SolutionField<double>& after);
  const MaxPrincipleReport& report() const { return report_; }

 private:
  MaxPrincipleReport report_;
};

class TvdMonitor {
 public:
  TvdMonitor(const SolutionField<double>& initial, double final_time);
  void observe(const SolutionField<double>& before,
               const SolutionField<double>& after);
  const TvdReport& report() const { return report_; }

 private:
  TvdReport report_;
  double tv_prev_ = 0.0;
};

class LipschitzMonitor {
 public:
  LipschitzMonitor(const SolutionField<double>& initial,
                   const Delta0Inputs& inputs, double delta,
                   double assumption5_margin);
  void observe(const SolutionField<double>& before,
               const SolutionField<double>& after);
  const LipschitzTrace& trace() const { return trace_; }

 private:
  void check_level(const SolutionField<double>& field);
  LipschitzTrace trace_;
};

TvdReport check_tvd(const std::vector<SolutionField<double>>& levels);
LipschitzTrace check_lipschitz(const std::vector<SolutionField<double>>& levels,
                               const Delta0Inputs& inputs, double delta,
                               double assumption5_margin);

/// L1 distance over [x_lo, x_hi] between a coarse field and a finer one at the
/// same time, integrating the exact overlap of the two piecewise-constant
/// functions. h_coarse / h_fine must be an integer.
double l1_error(const SolutionField<double>& coarse,
                const SolutionField<double>& fine, double x_lo, double x_hi);

/// Least-squares fit of log(error) = slope log(h) + intercept.
std::pair<double, double> fit_rate(
    const std::vector<std::pair<double, double>>& pairs);

}  // namespace nlwr
