#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nlwr {

enum class FluxKind { LaxFriedrichs, Godunov, ModifiedLaxFriedrichs };

template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

/// First partials (theta_1..theta_4) of g with respect to
/// (rho_L, rho_R, q_L, q_R).
template <typename Scalar>
using ThetaBundle = Vector4<Scalar>;

/// Quadratic two-point numerical flux g(rho_L, rho_R, q_L, q_R) with
/// velocity v(q) = 1 - q.
template <typename Scalar = double>
struct FluxFunction {
  FluxKind kind = FluxKind::LaxFriedrichs;
  Scalar alpha = Scalar(2);

  /// Constant Hessian gamma_ij of g.
  Matrix4<Scalar> gamma() const {
    Matrix4<Scalar> g = Matrix4<Scalar>::Zero();
    const Scalar half = Scalar(0.5);
    switch (kind) {
      case FluxKind::LaxFriedrichs:
        g(0, 2) = g(2, 0) = -half;
        g(1, 3) = g(3, 1) = -half;
        break;
      case FluxKind::Godunov:
        g(0, 3) = g(3, 0) = Scalar(-1);
        break;
      case FluxKind::ModifiedLaxFriedrichs:
        g(0, 3) = g(3, 0) = -half;
        g(1, 3) = g(3, 1) = -half;
        break;
    }
    return g;
  }
};

template <typename Scalar>
Scalar velocity(Scalar q) {
  return Scalar(1) - q;
}

template <typename Scalar>
Scalar eval(const FluxFunction<Scalar>& f, Scalar rho_l, Scalar rho_r,
            Scalar q_l, Scalar q_r) {
  const Scalar half = Scalar(0.5);
  switch (f.kind) {
    case FluxKind::LaxFriedrichs:
      return half * (rho_l * velocity(q_l) + rho_r * velocity(q_r)) +
             half * f.alpha * (rho_l - rho_r);
    case FluxKind::Godunov:
      return rho_l * velocity(q_r);
    case FluxKind::ModifiedLaxFriedrichs:
      return half * (rho_l + rho_r) * velocity(q_r) +
             half * f.alpha * (rho_l - rho_r);
  }
  return Scalar(0);
}

template <typename Scalar>
Scalar eval(const FluxFunction<Scalar>& f, const Vector4<Scalar>& x) {
  return eval(f, x[0], x[1], x[2], x[3]);
}

template <typename Scalar>
ThetaBundle<Scalar> partials(const FluxFunction<Scalar>& f, Scalar rho_l,
                             Scalar rho_r, Scalar q_l, Scalar q_r) {
  const Scalar half = Scalar(0.5);
  ThetaBundle<Scalar> t;
  switch (f.kind) {
    case FluxKind::LaxFriedrichs:
      t << half * velocity(q_l) + half * f.alpha,
          half * velocity(q_r) - half * f.alpha, -half * rho_l, -half * rho_r;
      break;
    case FluxKind::Godunov:
      t << velocity(q_r), Scalar(0), Scalar(0), -rho_l;
      break;
    case FluxKind::ModifiedLaxFriedrichs:
      t << half * velocity(q_r) + half * f.alpha,
          half * velocity(q_r) - half * f.alpha, Scalar(0),
          -half * (rho_l + rho_r);
      break;
  }
  return t;
}

template <typename Scalar>
ThetaBundle<Scalar> partials(const FluxFunction<Scalar>& f,
                             const Vector4<Scalar>& x) {
  return partials(f, x[0], x[1], x[2], x[3]);
}

/// g(rho_L, rho_R, rho_L, rho_R) written out per kind. For Lax-Friedrichs
/// this is the classical local flux used for fine-grid references.
template <typename Scalar>
Scalar local_flux(const FluxFunction<Scalar>& f, Scalar rho_l, Scalar rho_r) {
  const Scalar half = Scalar(0.5);
  switch (f.kind) {
    case FluxKind::LaxFriedrichs:
      return half * (rho_l * (Scalar(1) - rho_l) + rho_r * (Scalar(1) - rho_r)) +
             half * f.alpha * (rho_l - rho_r);
    case FluxKind::Godunov:
      return rho_l * (Scalar(1) - rho_r);
    case FluxKind::ModifiedLaxFriedrichs:
      return half * (rho_l + rho_r) * (Scalar(1) - rho_r) +
             half * f.alpha * (rho_l - rho_r);
  }
  return Scalar(0);
}

/// The sixteen vertices of [0,1]^4, vertex i having bit b set in coordinate b.
template <typename Scalar>
std::vector<Vector4<Scalar>> unit_box_corners() {
  std::vector<Vector4<Scalar>> out;
  out.reserve(16);
  for (int i = 0; i < 16; ++i) {
    Vector4<Scalar> v;
    for (int b = 0; b < 4; ++b) v[b] = (i >> b) & 1 ? Scalar(1) : Scalar(0);
    out.push_back(v);
  }
  return out;
}

template <typename Scalar = double>
struct ClauseResult {
  ClauseResult(std::string clause_name = {}) : name(std::move(clause_name)) {}

  std::string name;
  bool ok = true;
  /// Most adverse value of the clause expression seen (for inequalities,
  /// oriented so that ok <=> worst >= 0).
  Scalar worst = std::numeric_limits<Scalar>::infinity();
  std::optional<Vector4<Scalar>> witness;
};

template <typename Scalar = double>
struct Assumption4Report {
  std::vector<ClauseResult<Scalar>> clauses;

  bool all_ok() const {
    return std::all_of(clauses.begin(), clauses.end(),
                       [](const auto& c) { return c.ok; });
  }
  const ClauseResult<Scalar>* find(std::string_view name) const {
    for (const auto& c : clauses)
      if (c.name == name) return &c;
    return nullptr;
  }
};

template <typename Scalar = double>
struct Assumption5Report {
  bool ok = false;
  Scalar margin = Scalar(0);
  Vector4<Scalar> sup_norms = Vector4<Scalar>::Zero();
};

namespace detail {

// Folds one sample of an inequality "value >= 0" into a clause result.
template <typename Scalar>
void record(ClauseResult<Scalar>& clause, Scalar value,
            const Vector4<Scalar>& at, Scalar tol) {
  if (value < clause.worst) {
    clause.worst = value;
    if (value < -tol) {
      clause.ok = false;
      clause.witness = at;
    }
  }
}

}  // namespace detail

/// Checks the quadratic-flux structure: (i) exact quadratic, (ii) consistency,
/// (iii) Hessian sign/sum pattern, and the seven inequalities of (iv) over the
/// whole box [0,1]^4. Every clause-(iv) expression is affine in each argument,
/// so the corners decide it; a seeded interior sample backs that up.
template <typename Scalar>
Assumption4Report<Scalar> check_assumption4(const FluxFunction<Scalar>& f,
                                            int interior_samples = 1000) {
  using std::abs;
  using std::min;
  Assumption4Report<Scalar> report;
  const Matrix4<Scalar> G = f.gamma();
  const Scalar tol = Scalar(1e-12);

  std::vector<Vector4<Scalar>> points = unit_box_corners<Scalar>();
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < interior_samples; ++i) {
    Vector4<Scalar> p;
    for (int b = 0; b < 4; ++b) p[b] = Scalar(unit(rng));
    points.push_back(p);
  }

  // (i) g equals its second-order expansion about any base point.
  ClauseResult<Scalar> quadratic{"i:quadratic"};
  const Vector4<Scalar> base = Vector4<Scalar>::Constant(Scalar(0.5));
  const Scalar g0 = eval(f, base);
  const ThetaBundle<Scalar> t0 = partials(f, base);
  for (const auto& p : points) {
    const Vector4<Scalar> d = p - base;
    const Scalar taylor = g0 + t0.dot(d) + Scalar(0.5) * d.dot(G * d);
    detail::record(quadratic, -abs(eval(f, p) - taylor), p, tol);
  }
  report.clauses.push_back(quadratic);

  // (ii) g(r, r, q, q) = r (1 - q).
  ClauseResult<Scalar> consistency{"ii:consistency"};
  for (int a = 0; a <= 20; ++a) {
    for (int b = 0; b <= 20; ++b) {
      const Scalar r = Scalar(a) / Scalar(20);
      const Scalar q = Scalar(b) / Scalar(20);
      const Vector4<Scalar> p(r, r, q, q);
      detail::record(consistency, -abs(eval(f, p) - r * (Scalar(1) - q)), p,
                     tol);
    }
  }
  report.clauses.push_back(consistency);

  // (iii) gamma_11 = gamma_12 = gamma_22 = gamma_33 = gamma_34 = gamma_44 = 0,
  // the four mixed entries are non-positive and sum to -1.
  ClauseResult<Scalar> structure{"iii:gamma"};
  const Scalar zero_block = G(0, 0) * G(0, 0) + G(0, 1) * G(0, 1) +
                            G(1, 1) * G(1, 1) + G(2, 2) * G(2, 2) +
                            G(2, 3) * G(2, 3) + G(3, 3) * G(3, 3);
  const Scalar mixed_max =
      std::max({G(0, 2), G(1, 2), G(0, 3), G(1, 3)});
  const Scalar mixed_sum = G(0, 2) + G(1, 2) + G(0, 3) + G(1, 3);
  structure.worst = min({-zero_block, -mixed_max, -abs(mixed_sum + Scalar(1))});
  structure.ok = structure.worst >= -tol;
  report.clauses.push_back(structure);

  const Scalar g13 = G(0, 2), g23 = G(1, 2), g24 = G(1, 3);
  ClauseResult<Scalar> c1{"iv:theta1>=0"}, c2{"iv:theta2<=0"},
      c3{"iv:theta3<=0"}, c4{"iv:theta4<=0"},
      c13{"iv:theta1+theta3+2(g13+g23)>=0"},
      c2g{"iv:theta2-2(g23+g24)<=0"},
      c34{"iv:theta3+theta4<=-min(rhoL,rhoR)"};
  for (const auto& p : points) {
    const ThetaBundle<Scalar> t = partials(f, p);
    detail::record(c1, t[0], p, tol);
    detail::record(c2, -t[1], p, tol);
    detail::record(c3, -t[2], p, tol);
    detail::record(c4, -t[3], p, tol);
    detail::record(c13, t[0] + t[2] + Scalar(2) * (g13 + g23), p, tol);
    detail::record(c2g, -(t[1] - Scalar(2) * (g23 + g24)), p, tol);
    detail::record(c34, -(t[2] + t[3] + min(p[0], p[1])), p, tol);
  }
  for (auto* c : {&c1, &c2, &c3, &c4, &c13, &c2g, &c34}) {
    report.clauses.push_back(*c);
  }
  return report;
}

/// lambda * sum_i ||theta_i||_inf < 1, sup norms over [0,1]^4 from the corners.
/// Margins within a few ulps of zero are reported as exactly zero: the
/// inequality is strict, so a boundary value is a failure.
template <typename Scalar>
Assumption5Report<Scalar> check_assumption5(const FluxFunction<Scalar>& f,
                                            Scalar lambda) {
  if (!(lambda > Scalar(0))) {
    throw std::domain_error("check_assumption5: lambda must be positive");
  }
  Assumption5Report<Scalar> report;
  for (const auto& p : unit_box_corners<Scalar>()) {
    report.sup_norms = report.sup_norms.cwiseMax(partials(f, p).cwiseAbs());
  }
  report.margin = Scalar(1) - lambda * report.sup_norms.sum();
  using std::abs;
  if (abs(report.margin) <= Scalar(8) * std::numeric_limits<Scalar>::epsilon()) {
    report.margin = Scalar(0);
  }
  report.ok = report.margin > Scalar(0);
  return report;
}

inline std::string_view to_string(FluxKind kind) {
  switch (kind) {
    case FluxKind::LaxFriedrichs:
      return "lf";
    case FluxKind::Godunov:
      return "godunov";
    case FluxKind::ModifiedLaxFriedrichs:
      return "mlf";
  }
  return "?";
}

inline FluxKind flux_from_name(std::string_view name) {
  if (name == "lf") return FluxKind::LaxFriedrichs;
  if (name == "godunov") return FluxKind::Godunov;
  if (name == "mlf") return FluxKind::ModifiedLaxFriedrichs;
  throw std::invalid_argument("unknown flux '" + std::string(name) +
                              "' (expected lf|godunov|mlf)");
}

}  // namespace nlwr
