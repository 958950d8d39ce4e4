#pragma once

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlwr/flux.hpp"
#include "nlwr/kernel.hpp"
#include "nlwr/quadrature.hpp"

namespace nlwr {

using Eigen::Index;

/// Uniform grid with cell centres x_j = origin + j h, j in [j_min, j_max].
struct Grid {
  double h = 0.01;
  double lambda = 0.25;
  Index j_min = 0;
  Index j_max = 0;
  double x_lo = 0.0;  ///< report window
  double x_hi = 1.0;
  double origin = 0.0;

  double tau() const { return lambda * h; }
  Index size() const { return j_max - j_min + 1; }
  double x(Index j) const { return origin + static_cast<double>(j) * h; }
  double left_edge(Index j) const { return x(j) - 0.5 * h; }
  double right_edge(Index j) const { return x(j) + 0.5 * h; }
};

/// Grid whose stored cells cover [x_lo - pad, x_hi + pad].
Grid make_grid(double h, double lambda, double x_lo, double x_hi, double pad,
               double origin = 0.0);

/// Piecewise-constant cell values at one time level.
template <typename Scalar = double>
struct SolutionField {
  Grid grid;
  Index n = 0;
  VectorX<Scalar> values;

  double time() const { return static_cast<double>(n) * grid.tau(); }
  /// Value at global index j, constant extension outside the stored range.
  Scalar at(Index j) const {
    if (j < grid.j_min) return values[0];
    if (j > grid.j_max) return values[values.size() - 1];
    return values[j - grid.j_min];
  }
};

/// rho_0: the bell profile, a Riemann jump at x = 0.5, or a user table
/// (piecewise linear between points, constant beyond the ends).
struct InitialData {
  enum class Kind { BellShape, Riemann, UserTable };
  Kind kind = Kind::BellShape;
  double rho_left = 0.1;
  double rho_right = 0.6;
  std::vector<double> table_x;
  std::vector<double> table_rho;

  static InitialData bell() { return {}; }
  static InitialData riemann(double left, double right) {
    InitialData d;
    d.kind = Kind::Riemann;
    d.rho_left = left;
    d.rho_right = right;
    return d;
  }
  static InitialData table(std::vector<double> x, std::vector<double> rho);

  double operator()(double x) const;
  /// (1/(b-a)) \int_a^b rho_0.
  double cell_average(double a, double b) const;
  double inf() const;
  double sup() const;
  std::string name() const;
};

/// Jump location of Riemann data.
inline constexpr double kRiemannJump = 0.5;

SolutionField<double> discretize_initial(const InitialData& data,
                                         const Grid& grid);

/// Raised when an update produces a non-finite value.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(Index cell, Index level, const std::string& what)
      : std::runtime_error(what), cell_(cell), level_(level) {}
  Index cell() const { return cell_; }
  Index level() const { return level_; }

 private:
  Index cell_;
  Index level_;
};

template <typename Scalar>
Scalar nonlocal_density(const SolutionField<Scalar>& field,
                        const QuadratureWeights<Scalar>& w, Index j) {
  Scalar q = Scalar(0);
  for (Index k = 0; k < w.m; ++k) q += w.weights[k] * field.at(j + k);
  return q;
}

namespace detail {

// Stored values with one ghost on the left and `right` ghosts on the right.
template <typename Scalar>
VectorX<Scalar> ghost_extend(const VectorX<Scalar>& v, Index right) {
  const Index n = v.size();
  VectorX<Scalar> p(n + 1 + right);
  p[0] = v[0];
  p.segment(1, n) = v;
  p.tail(right).setConstant(v[n - 1]);
  return p;
}

template <typename Scalar>
SolutionField<Scalar> conservative_update(const SolutionField<Scalar>& field,
                                          const VectorX<Scalar>& interface_flux) {
  const Index n = field.values.size();
  const Scalar lambda = Scalar(field.grid.lambda);
  SolutionField<Scalar> next{field.grid, field.n + 1, VectorX<Scalar>()};
  next.values = field.values +
                lambda * (interface_flux.head(n) - interface_flux.tail(n));
  if (!next.values.allFinite()) {
    for (Index i = 0; i < n; ++i) {
      using std::isfinite;
      if (!isfinite(next.values[i])) {
        const Index j = field.grid.j_min + i;
        throw NumericalError(j, next.n,
                             "non-finite density at cell " + std::to_string(j) +
                                 ", level " + std::to_string(next.n));
      }
    }
  }
  return next;
}

}  // namespace detail

/// All look-ahead densities q_{j_min-1} .. q_{j_max+1}.
template <typename Scalar>
VectorX<Scalar> nonlocal_densities(const SolutionField<Scalar>& field,
                                   const QuadratureWeights<Scalar>& w) {
  const Index n = field.values.size();
  const VectorX<Scalar> padded = detail::ghost_extend(field.values, w.m + 1);
  VectorX<Scalar> q = VectorX<Scalar>::Zero(n + 2);
  for (Index k = 0; k < w.m; ++k) q += w.weights[k] * padded.segment(k, n + 2);
  return q;
}

/// Interface fluxes F_{j-1/2} for j = j_min .. j_max + 1.
template <typename Scalar>
VectorX<Scalar> interface_fluxes(const SolutionField<Scalar>& field,
                                 const FluxFunction<Scalar>& flux,
                                 const QuadratureWeights<Scalar>& w) {
  const Index n = field.values.size();
  const VectorX<Scalar> rho = detail::ghost_extend(field.values, 1);
  const VectorX<Scalar> q = nonlocal_densities(field, w);
  VectorX<Scalar> f(n + 1);
  for (Index i = 0; i <= n; ++i) {
    f[i] = eval(flux, rho[i], rho[i + 1], q[i], q[i + 1]);
  }
  return f;
}

/// One step of rho_j += lambda [g(j-1/2) - g(j+1/2)], each interface flux
/// computed once.
template <typename Scalar>
SolutionField<Scalar> step(const SolutionField<Scalar>& field,
                           const FluxFunction<Scalar>& flux,
                           const QuadratureWeights<Scalar>& w) {
  const VectorX<Scalar> f = interface_fluxes(field, flux, w);
  return detail::conservative_update(field, f);
}

/// Interface fluxes of the local scheme, g(rho_L, rho_R, rho_L, rho_R).
template <typename Scalar>
VectorX<Scalar> local_interface_fluxes(const SolutionField<Scalar>& field,
                                       const FluxFunction<Scalar>& flux) {
  const Index n = field.values.size();
  const VectorX<Scalar> rho = detail::ghost_extend(field.values, 1);
  VectorX<Scalar> f(n + 1);
  for (Index i = 0; i <= n; ++i) f[i] = local_flux(flux, rho[i], rho[i + 1]);
  return f;
}

template <typename Scalar>
SolutionField<Scalar> step_local(const SolutionField<Scalar>& field,
                                 const FluxFunction<Scalar>& flux) {
  const VectorX<Scalar> f = local_interface_fluxes(field, flux);
  return detail::conservative_update(field, f);
}

/// Full experiment parameterization.
struct RunConfig {
  KernelProfile kernel = KernelProfile::LinearDecreasing;
  WeightRule rule = WeightRule::ExactQuadrature;
  FluxKind flux = FluxKind::LaxFriedrichs;
  double delta = 0.005;
  double h = 0.001;
  double lambda = 0.25;
  double alpha = 2.0;
  double T = 1.0;
  InitialData initial = InitialData::bell();
  double x_lo = 0.0;
  double x_hi = 1.0;
  /// Requested snapshot times; empty means {0, T/2, T}.
  std::vector<double> snapshot_times;
};

/// Stored domain half-padding around the report window.
double domain_padding(const RunConfig& config);
Grid grid_for(const RunConfig& config);
Index step_count(const RunConfig& config);

struct Snapshot {
  double requested_time = 0.0;
  SolutionField<double> field;
};

/// Called after each step with the previous and the new level.
using StepObserver = std::function<void(const SolutionField<double>& before,
                                        const SolutionField<double>& after)>;

struct RunOptions {
  std::vector<StepObserver> observers;
  bool keep_all_levels = false;
};

struct Trajectory {
  RunConfig config;
  Index m = 1;
  Index steps = 0;
  double final_time = 0.0;
  std::vector<Snapshot> snapshots;
  SolutionField<double> initial;
  SolutionField<double> final;
  std::vector<SolutionField<double>> levels;  ///< only with keep_all_levels
  std::vector<std::string> warnings;
  double assumption5_margin = 0.0;
  double delta0 = 0.0;
};

/// Time level nearest to t (ties toward the earlier level), clamped to [0, steps].
Index nearest_level(double t, double tau, Index steps);

Trajectory run(const RunConfig& config, const RunOptions& options = {});

/// Local scheme with the configured flux on the configured grid; the kernel,
/// rule and horizon are ignored.
Trajectory run_local(const RunConfig& config, const RunOptions& options = {});

/// Final field of the local scheme.
SolutionField<double> run_local_reference(const RunConfig& config);

}  // namespace nlwr
