#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nlwr/kernel.hpp"

namespace nlwr {

enum class WeightRule { LeftEndpoint, NormalizedLeftEndpoint, ExactQuadrature };

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Discrete weights w_0..w_{m-1} for the look-ahead density
/// q_j = sum_k w_k rho_{j+k}.
template <typename Scalar = double>
struct QuadratureWeights {
  WeightRule rule = WeightRule::ExactQuadrature;
  Eigen::Index m = 1;
  VectorX<Scalar> weights;
  Scalar weight_sum = Scalar(0);
};

template <typename Scalar = double>
struct Assumption3Report {
  bool sandwich_ok = false;
  /// min_k (w_k - w_{k+1}) m^2 over consecutive stored weights (k <= m-2);
  /// for m = 1 this falls back to tail_gap.
  Scalar gap_constant = Scalar(0);
  /// w_{m-1} m^2, i.e. the gap against the phantom entry w_m = 0.
  Scalar tail_gap = Scalar(0);
  bool normalized = false;
  Scalar c_theoretical = Scalar(0);
  /// First index where the sandwich bound fails, or -1.
  Eigen::Index sandwich_witness = -1;
};

/// m = ceil(delta/h). Ratios within a few ulps of an integer round to that
/// integer so that delta = m*h computed in floating point gives m.
template <typename Scalar>
Eigen::Index stencil_size(Scalar delta, Scalar h) {
  using std::ceil;
  using std::round;
  using std::abs;
  const Scalar ratio = delta / h;
  const Scalar nearest = round(ratio);
  const Scalar tol = Scalar(64) * std::numeric_limits<Scalar>::epsilon() *
                     std::max(Scalar(1), ratio);
  const Scalar m = abs(ratio - nearest) <= tol ? nearest : ceil(ratio);
  return std::max<Eigen::Index>(1, static_cast<Eigen::Index>(m));
}

template <typename Scalar>
QuadratureWeights<Scalar> build_weights(const Kernel<Scalar>& kernel,
                                        Scalar delta, Scalar h,
                                        WeightRule rule) {
  if (!(delta > Scalar(0)) || !(h > Scalar(0))) {
    throw std::domain_error("build_weights: delta and h must be positive");
  }
  const Eigen::Index m = stencil_size(delta, h);
  const Scalar step = h / delta;  // cell width in profile coordinates

  QuadratureWeights<Scalar> out;
  out.rule = rule;
  out.m = m;
  out.weights.resize(m);

  switch (rule) {
    case WeightRule::LeftEndpoint:
    case WeightRule::NormalizedLeftEndpoint:
      for (Eigen::Index k = 0; k < m; ++k) {
        const Scalar u = std::min(Scalar(1), Scalar(k) * step);
        out.weights[k] = profile_value(kernel.profile, u) * step;
      }
      break;
    case WeightRule::ExactQuadrature: {
      Scalar lower = profile_antiderivative(kernel.profile, Scalar(0));
      for (Eigen::Index k = 0; k < m; ++k) {
        // The last cell always closes at s = delta.
        const Scalar u = (k + 1 == m) ? Scalar(1)
                                      : std::min(Scalar(1), Scalar(k + 1) * step);
        const Scalar upper = profile_antiderivative(kernel.profile, u);
        out.weights[k] = upper - lower;
        lower = upper;
      }
      break;
    }
  }

  if (rule == WeightRule::NormalizedLeftEndpoint) {
    out.weights /= out.weights.sum();
  }
  out.weight_sum = out.weights.sum();
  return out;
}

template <typename Scalar>
Assumption3Report<Scalar> check_assumption3(
    const QuadratureWeights<Scalar>& w, const Kernel<Scalar>& kernel,
    Scalar delta, Scalar h) {
  using std::abs;
  Assumption3Report<Scalar> report;
  const Eigen::Index m = w.m;
  const Scalar m2 = Scalar(m) * Scalar(m);
  const Scalar slack = Scalar(1e-14);

  auto sample = [&](Scalar s) {
    // The kernel vanishes past the horizon.
    if (s > delta) return Scalar(0);
    return eval_scaled(kernel, delta, s) * h;
  };

  report.sandwich_ok = true;
  for (Eigen::Index k = 0; k < m; ++k) {
    const Scalar upper = sample(Scalar(k) * h);
    const Scalar lower = sample(Scalar(k + 1) * h);
    const Scalar wk = w.weights[k];
    const Scalar tol = slack * std::max(Scalar(1), abs(upper));
    if (wk > upper + tol || wk < lower - tol) {
      report.sandwich_ok = false;
      report.sandwich_witness = k;
      break;
    }
  }

  report.tail_gap = w.weights[m - 1] * m2;
  if (m == 1) {
    report.gap_constant = report.tail_gap;
  } else {
    const auto diffs = (w.weights.head(m - 1) - w.weights.tail(m - 1)).eval();
    report.gap_constant = diffs.minCoeff() * m2;
  }

  report.normalized = abs(w.weight_sum - Scalar(1)) <= Scalar(1e-12);
  report.c_theoretical =
      w.rule == WeightRule::NormalizedLeftEndpoint
          ? kernel.min_neg_slope / (Scalar(1) + kernel.value_at_zero)
          : kernel.min_neg_slope;
  return report;
}

inline std::string_view to_string(WeightRule rule) {
  switch (rule) {
    case WeightRule::LeftEndpoint:
      return "left";
    case WeightRule::NormalizedLeftEndpoint:
      return "normalized-left";
    case WeightRule::ExactQuadrature:
      return "exact";
  }
  return "?";
}

inline WeightRule rule_from_name(std::string_view name) {
  if (name == "left") return WeightRule::LeftEndpoint;
  if (name == "normalized-left") return WeightRule::NormalizedLeftEndpoint;
  if (name == "exact") return WeightRule::ExactQuadrature;
  throw std::invalid_argument("unknown rule '" + std::string(name) +
                              "' (expected left|normalized-left|exact)");
}

}  // namespace nlwr
