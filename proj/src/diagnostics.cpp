#include "nlwr/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nlwr {

namespace {

VectorX<double> differences(const VectorX<double>& v) {
  const Index n = v.size();
  if (n < 2) return VectorX<double>();
  return v.tail(n - 1) - v.head(n - 1);
}

}  // namespace

double total_variation(const SolutionField<double>& field) {
  return differences(field.values).cwiseAbs().sum();
}

double one_sided_lipschitz(const SolutionField<double>& field) {
  const VectorX<double> r = differences(field.values);
  if (r.size() == 0) return 0.0;
  return std::max(0.0, -r.minCoeff() / field.grid.h);
}

double delta0(const Delta0Inputs& in) {
  if (!(in.c > 0.0) || !(in.rho_min > 0.0) || !(in.w0 > 0.0) || !(in.L >= 0.0)) {
    throw std::domain_error(
        "delta0: needs c, rho_min, w(0) > 0 and L >= 0");
  }
  if (in.L == 0.0) return std::numeric_limits<double>::infinity();
  return in.c * in.rho_min / (2.0 * in.L * in.w0);
}

double initial_lipschitz_constant(const InitialData& data, double a, double b,
                                  double resolution) {
  switch (data.kind) {
    case InitialData::Kind::Riemann:
      return data.rho_right >= data.rho_left
                 ? 0.0
                 : std::numeric_limits<double>::infinity();
    case InitialData::Kind::UserTable: {
      double L = 0.0;
      for (std::size_t i = 1; i < data.table_x.size(); ++i) {
        const double slope = (data.table_rho[i] - data.table_rho[i - 1]) /
                             (data.table_x[i] - data.table_x[i - 1]);
        L = std::max(L, -slope);
      }
      return L;
    }
    case InitialData::Kind::BellShape: {
      if (!(resolution > 0.0) || !(b > a)) {
        throw std::domain_error("initial_lipschitz_constant: bad sampling range");
      }
      const auto count = static_cast<Index>(std::ceil((b - a) / resolution));
      double L = 0.0;
      double prev = data(a);
      for (Index i = 1; i <= count; ++i) {
        const double x = a + static_cast<double>(i) * resolution;
        const double cur = data(x);
        L = std::max(L, -(cur - prev) / resolution);
        prev = cur;
      }
      return L;
    }
  }
  return 0.0;
}

// --- maximum principle -----------------------------------------------------

MaxPrincipleMonitor::MaxPrincipleMonitor(const SolutionField<double>& initial) {
  report_.lower = initial.values.minCoeff();
  report_.upper = initial.values.maxCoeff();
  report_.observed_min = report_.lower;
  report_.observed_max = report_.upper;
}

void MaxPrincipleMonitor::observe(const SolutionField<double>& before,
                                  const SolutionField<double>& after) {
  const double lo = after.values.minCoeff();
  const double hi = after.values.maxCoeff();
  report_.observed_min = std::min(report_.observed_min, lo);
  report_.observed_max = std::max(report_.observed_max, hi);
  const bool contained = lo >= report_.lower - kPropertyTolerance &&
                         hi <= report_.upper + kPropertyTolerance;
  const bool shrinking =
      lo >= before.values.minCoeff() - kPropertyTolerance &&
      hi <= before.values.maxCoeff() + kPropertyTolerance;
  if (!contained || !shrinking) {
    report_.ok = false;
    report_.violating_levels.push_back(after.n);
  }
}

// --- total variation -------------------------------------------------------

TvdMonitor::TvdMonitor(const SolutionField<double>& initial, double final_time) {
  tv_prev_ = total_variation(initial);
  report_.tv_initial = tv_prev_;
  report_.tv_final = tv_prev_;
  report_.space_time_bound =
      final_time * report_.tv_initial * (1.0 + 1.0 / initial.grid.lambda);
}

void TvdMonitor::observe(const SolutionField<double>& before,
                         const SolutionField<double>& after) {
  const double tv = total_variation(after);
  const double increase = tv - tv_prev_;
  report_.max_increase = std::max(report_.max_increase, increase);
  if (increase > kPropertyTolerance) {
    report_.ok = false;
    report_.violating_steps.push_back(after.n);
  }
  const double increment = (after.values - before.values).cwiseAbs().sum();
  report_.max_increment = std::max(report_.max_increment, increment);
  if (increment > report_.tv_initial + kPropertyTolerance) {
    report_.increment_ok = false;
  }
  report_.space_time_tv +=
      before.grid.tau() * tv_prev_ + before.grid.h * increment;
  report_.space_time_ok =
      report_.space_time_tv <= report_.space_time_bound + kPropertyTolerance;
  tv_prev_ = tv;
  report_.tv_final = tv;
}

TvdReport check_tvd(const std::vector<SolutionField<double>>& levels) {
  if (levels.empty()) return {};
  TvdMonitor monitor(levels.front(), levels.back().time());
  for (std::size_t i = 1; i < levels.size(); ++i) {
    monitor.observe(levels[i - 1], levels[i]);
  }
  return monitor.report();
}

// --- one-sided Lipschitz ---------------------------------------------------

LipschitzMonitor::LipschitzMonitor(const SolutionField<double>& initial,
                                   const Delta0Inputs& inputs, double delta,
                                   double assumption5_margin) {
  trace_.L_initial = inputs.L;
  trace_.delta = delta;
  try {
    trace_.delta0 = nlwr::delta0(inputs);
    trace_.preconditions = delta <= trace_.delta0;
  } catch (const std::domain_error& e) {
    trace_.delta0 = 0.0;
    trace_.preconditions = false;
    trace_.warnings.push_back(e.what());
  }
  if (trace_.preconditions) {
    const double h0 = std::isinf(trace_.delta0)
                          ? std::numeric_limits<double>::infinity()
                          : assumption5_margin * (trace_.delta0 - delta) / 4.0;
    trace_.bound_enforced = initial.grid.h < h0;
    if (!trace_.bound_enforced) {
      std::ostringstream msg;
      msg << "h = " << initial.grid.h << " >= h0 = " << h0
          << "; decay-bound violations are informational";
      trace_.warnings.push_back(msg.str());
    }
  } else {
    trace_.warnings.push_back("delta exceeds the horizon threshold; trace is informational");
  }
  trace_.L0 = one_sided_lipschitz(initial);
  trace_.min_scaled_difference = std::numeric_limits<double>::infinity();
  check_level(initial);
}

void LipschitzMonitor::check_level(const SolutionField<double>& field) {
  const double h = field.grid.h;
  const double n = static_cast<double>(field.n);
  const double Ln = one_sided_lipschitz(field);
  const double bound =
      trace_.L0 == 0.0 ? 0.0 : 1.0 / (1.0 / trace_.L0 + 2.0 * n * field.grid.tau());
  trace_.Ln.push_back(Ln);
  trace_.bound.push_back(bound);

  const VectorX<double> r = differences(field.values);
  const double r_min = r.size() ? r.minCoeff() : 0.0;
  trace_.min_scaled_difference = std::min(trace_.min_scaled_difference, r_min / h);
  if (!trace_.preconditions) return;
  if (r_min < -trace_.L_initial * h - kPropertyTolerance) {
    trace_.difference_violations.push_back(field.n);
  }
  if (field.n >= 1 && Ln > bound + kPropertyTolerance) {
    trace_.decay_violations.push_back(field.n);
  }
}

void LipschitzMonitor::observe(const SolutionField<double>&,
                               const SolutionField<double>& after) {
  check_level(after);
}

LipschitzTrace check_lipschitz(const std::vector<SolutionField<double>>& levels,
                               const Delta0Inputs& inputs, double delta,
                               double assumption5_margin) {
  if (levels.empty()) return {};
  LipschitzMonitor monitor(levels.front(), inputs, delta, assumption5_margin);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    monitor.observe(levels[i - 1], levels[i]);
  }
  return monitor.trace();
}

// --- errors and rates ------------------------------------------------------

double l1_error(const SolutionField<double>& coarse,
                const SolutionField<double>& fine, double x_lo, double x_hi) {
  const Grid& gc = coarse.grid;
  const Grid& gf = fine.grid;
  const double ratio = gc.h / gf.h;
  if (!(ratio >= 1.0 - 1e-9) ||
      std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw std::domain_error("l1_error: h_coarse / h_fine must be an integer");
  }
  if (std::abs(coarse.time() - fine.time()) > 1e-9 * std::max(1.0, fine.time())) {
    throw std::domain_error("l1_error: fields are at different times");
  }
  if (!(x_hi > x_lo)) throw std::domain_error("l1_error: empty window");

  auto cell_of = [](const Grid& g, double x) {
    return static_cast<Index>(std::floor((x - g.origin) / g.h + 0.5));
  };

  double sum = 0.0;
  for (Index jf = cell_of(gf, x_lo); jf <= cell_of(gf, x_hi); ++jf) {
    double a = std::max(x_lo, gf.left_edge(jf));
    const double b = std::min(x_hi, gf.right_edge(jf));
    if (!(b > a)) continue;
    const double value = fine.at(jf);
    for (Index jc = cell_of(gc, a); a < b; ++jc) {
      const double e = std::min(b, gc.right_edge(jc));
      if (e > a) {
        sum += std::abs(value - coarse.at(jc)) * (e - a);
        a = e;
      }
    }
  }
  return sum;
}

std::pair<double, double> fit_rate(
    const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) throw std::domain_error("fit_rate: needs >= 2 pairs");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [h, e] : pairs) {
    if (!(h > 0.0) || !(e > 0.0)) {
      throw std::domain_error("fit_rate: h and error must be positive");
    }
    const double x = std::log(h), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pairs.size());
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) {
    throw std::domain_error("fit_rate: all h values coincide");
  }
  const double slope = (n * sxy - sx * sy) / denom;
  return {slope, (sy - slope * sx) / n};
}

}  // namespace nlwr
