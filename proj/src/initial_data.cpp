#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "nlwr/solver.hpp"

namespace nlwr {

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {
    -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
    0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
    0.4786286704993665, 0.2369268850561891};

double bell_profile(double x) {
  const double d = x - 0.5;
  return 0.4 + 0.4 * std::exp(-100.0 * d * d);
}

double table_value(const InitialData& d, double x) {
  const auto& xs = d.table_x;
  const auto& ys = d.table_rho;
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto i = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

// Exact integral of the piecewise-linear table over [a, b].
double table_integral(const InitialData& d, double a, double b) {
  std::vector<double> cuts{a};
  for (double x : d.table_x)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  double sum = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    sum += 0.5 * (cuts[i] - cuts[i - 1]) *
           (table_value(d, cuts[i - 1]) + table_value(d, cuts[i]));
  }
  return sum;
}

}  // namespace

Grid make_grid(double h, double lambda, double x_lo, double x_hi, double pad,
               double origin) {
  if (!(h > 0.0) || !(lambda > 0.0)) {
    throw std::domain_error("make_grid: h and lambda must be positive");
  }
  if (!(x_hi > x_lo)) throw std::domain_error("make_grid: empty window");
  Grid g;
  g.h = h;
  g.lambda = lambda;
  g.x_lo = x_lo;
  g.x_hi = x_hi;
  g.origin = origin;
  g.j_min = static_cast<Index>(std::floor((x_lo - pad - origin) / h));
  g.j_max = static_cast<Index>(std::ceil((x_hi + pad - origin) / h));
  return g;
}

InitialData InitialData::table(std::vector<double> x, std::vector<double> rho) {
  if (x.size() != rho.size() || x.size() < 2) {
    throw std::invalid_argument("table initial data needs >= 2 (x, rho) pairs");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      throw std::invalid_argument("table x must be strictly increasing");
    }
  }
  for (double r : rho) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw std::invalid_argument("table densities must lie in [0, 1]");
    }
  }
  InitialData d;
  d.kind = Kind::UserTable;
  d.table_x = std::move(x);
  d.table_rho = std::move(rho);
  return d;
}

double InitialData::operator()(double x) const {
  switch (kind) {
    case Kind::BellShape:
      return bell_profile(x);
    case Kind::Riemann:
      return x < kRiemannJump ? rho_left : rho_right;
    case Kind::UserTable:
      return table_value(*this, x);
  }
  return 0.0;
}

double InitialData::cell_average(double a, double b) const {
  const double width = b - a;
  switch (kind) {
    case Kind::BellShape: {
      const double mid = 0.5 * (a + b);
      double sum = 0.0;
      for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
        sum += kGaussWeights[i] * bell_profile(mid + 0.5 * width * kGaussNodes[i]);
      }
      return 0.5 * sum;
    }
    case Kind::Riemann: {
      const double left = std::clamp(kRiemannJump - a, 0.0, width);
      return (left * rho_left + (width - left) * rho_right) / width;
    }
    case Kind::UserTable:
      return table_integral(*this, a, b) / width;
  }
  return 0.0;
}

double InitialData::inf() const {
  switch (kind) {
    case Kind::BellShape:
      return 0.4;
    case Kind::Riemann:
      return std::min(rho_left, rho_right);
    case Kind::UserTable:
      return *std::min_element(table_rho.begin(), table_rho.end());
  }
  return 0.0;
}

double InitialData::sup() const {
  switch (kind) {
    case Kind::BellShape:
      return 0.8;
    case Kind::Riemann:
      return std::max(rho_left, rho_right);
    case Kind::UserTable:
      return *std::max_element(table_rho.begin(), table_rho.end());
  }
  return 0.0;
}

std::string InitialData::name() const {
  switch (kind) {
    case Kind::BellShape:
      return "bell";
    case Kind::Riemann:
      return "riemann";
    case Kind::UserTable:
      return "table";
  }
  return "?";
}

SolutionField<double> discretize_initial(const InitialData& data,
                                         const Grid& grid) {
  SolutionField<double> field{grid, 0, VectorX<double>(grid.size())};
  for (Index j = grid.j_min; j <= grid.j_max; ++j) {
    field.values[j - grid.j_min] =
        data.cell_average(grid.left_edge(j), grid.right_edge(j));
  }
  return field;
}

}  // namespace nlwr
