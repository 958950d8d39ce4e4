#include <gtest/gtest.h>

#include <cmath>

#include "nlwr/diagnostics.hpp"

using namespace nlwr;

namespace {

SolutionField<double> field_from(std::vector<double> v, double h = 0.1, Index n = 0) {
  Grid g = make_grid(h, 0.25, 0.0, 1.0, 0.0);
  g.j_max = g.j_min + static_cast<Index>(v.size()) - 1;
  SolutionField<double> f{g, n, VectorX<double>(static_cast<Index>(v.size()))};
  for (std::size_t i = 0; i < v.size(); ++i) f.values[static_cast<Index>(i)] = v[i];
  return f;
}

}  // namespace

TEST(Diagnostics, TotalVariationAndLipschitz) {
  const auto f = field_from({0.1, 0.5, 0.2, 0.2, 0.7});
  EXPECT_NEAR(total_variation(f), 0.4 + 0.3 + 0.5, 1e-15);
  EXPECT_NEAR(one_sided_lipschitz(f), 0.3 / 0.1, 1e-14);
  EXPECT_EQ(one_sided_lipschitz(field_from({0.1, 0.2, 0.3})), 0.0);
}

TEST(Diagnostics, Delta0) {
  EXPECT_NEAR(delta0({2.0, 0.4, 3.431, 2.0}), 2.0 * 0.4 / (2 * 3.431 * 2.0), 1e-15);
  EXPECT_TRUE(std::isinf(delta0({2.0, 0.4, 0.0, 2.0})));
  EXPECT_THROW(delta0({0.0, 0.4, 1.0, 2.0}), std::domain_error);
  EXPECT_THROW(delta0({2.0, 0.0, 1.0, 2.0}), std::domain_error);
  EXPECT_THROW(delta0({2.0, 0.4, -1.0, 2.0}), std::domain_error);
}

TEST(Diagnostics, InitialLipschitzConstants) {
  // max of 80 d exp(-100 d^2) at d = 1/sqrt(200).
  const double bell_L = 80.0 / std::sqrt(200.0) * std::exp(-0.5);
  const double sampled = initial_lipschitz_constant(InitialData::bell(), -1, 2, 1e-4);
  EXPECT_LE(sampled, bell_L);
  EXPECT_NEAR(sampled, bell_L, 1e-5);
  EXPECT_NEAR(bell_L, 3.431, 1e-3);
  EXPECT_EQ(initial_lipschitz_constant(InitialData::riemann(0.1, 0.6), 0, 1, 0.01), 0.0);
  EXPECT_TRUE(std::isinf(initial_lipschitz_constant(InitialData::riemann(0.6, 0.1), 0, 1, 0.01)));
  const auto t = InitialData::table({0, 0.5, 1}, {0.2, 0.8, 0.3});
  EXPECT_NEAR(initial_lipschitz_constant(t, 0, 1, 0.01), 1.0, 1e-14);
}

TEST(Diagnostics, MaxPrincipleMonitorFlagsOvershoot) {
  const auto a = field_from({0.2, 0.4, 0.6});
  MaxPrincipleMonitor ok(a);
  ok.observe(a, field_from({0.3, 0.4, 0.5}, 0.1, 1));
  EXPECT_TRUE(ok.report().ok);
  MaxPrincipleMonitor bad(a);
  bad.observe(a, field_from({0.2, 0.61, 0.6}, 0.1, 1));
  EXPECT_FALSE(bad.report().ok);
  ASSERT_EQ(bad.report().violating_levels.size(), 1u);
  EXPECT_EQ(bad.report().violating_levels[0], 1);
  EXPECT_NEAR(bad.report().observed_max, 0.61, 1e-15);
}

TEST(Diagnostics, TvdMonitor) {
  const auto a = field_from({0.2, 0.4, 0.6});
  const auto b = field_from({0.3, 0.4, 0.5}, 0.1, 1);
  const auto c = field_from({0.3, 0.6, 0.5}, 0.1, 2);
  const auto r = check_tvd({a, b, c});
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.violating_steps, std::vector<Index>{2});
  EXPECT_NEAR(r.tv_initial, 0.4, 1e-15);
  EXPECT_NEAR(r.tv_final, 0.4, 1e-15);
  EXPECT_NEAR(r.max_increase, 0.2, 1e-15);
  EXPECT_TRUE(check_tvd({a, b}).ok);
}

TEST(Diagnostics, LipschitzDecayDetectsSteepening) {
  const auto a = field_from({0.6, 0.5, 0.4});
  const auto b = field_from({0.6, 0.55, 0.35}, 0.1, 1);
  const Delta0Inputs in{2.0, 0.3, 1.0, 2.0};
  const auto trace = check_lipschitz({a, b}, in, 0.01, 0.125);
  EXPECT_TRUE(trace.preconditions);
  EXPECT_NEAR(trace.L0, 1.0, 1e-14);
  ASSERT_EQ(trace.Ln.size(), 2u);
  EXPECT_NEAR(trace.Ln[1], 2.0, 1e-14);
  EXPECT_NEAR(trace.bound[1], 1.0 / (1.0 + 2 * 0.025), 1e-14);
  EXPECT_EQ(trace.decay_violations, std::vector<Index>{1});
  EXPECT_FALSE(trace.ok());

  const auto relaxed = check_lipschitz({a, field_from({0.55, 0.5, 0.45}, 0.1, 1)}, in,
                                       0.01, 0.125);
  EXPECT_TRUE(relaxed.ok());
}

TEST(Diagnostics, LipschitzInformationalBeyondThreshold) {
  const auto a = field_from({0.6, 0.5, 0.4});
  const auto b = field_from({0.6, 0.55, 0.35}, 0.1, 1);
  const auto trace = check_lipschitz({a, b}, {2.0, 0.3, 1.0, 2.0}, 1.0, 0.125);
  EXPECT_FALSE(trace.preconditions);
  EXPECT_TRUE(trace.ok());
  EXPECT_FALSE(trace.warnings.empty());
}

TEST(Diagnostics, L1ErrorAgainstBruteForce) {
  Grid coarse_g = make_grid(0.01, 0.25, 0.0, 1.0, 0.05);
  Grid fine_g = make_grid(0.0025, 0.25, 0.0, 1.0, 0.05);
  auto coarse = discretize_initial(InitialData::bell(), coarse_g);
  auto fine = discretize_initial(InitialData::riemann(0.3, 0.7), fine_g);
  // Midpoint sum on a grid that resolves every cell boundary.
  const int samples = 400000;
  double brute = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = (i + 0.5) / samples;
    auto cell = [](const Grid& g, double y) {
      return static_cast<Index>(std::floor((y - g.origin) / g.h + 0.5));
    };
    brute += std::abs(coarse.at(cell(coarse_g, x)) - fine.at(cell(fine_g, x))) / samples;
  }
  EXPECT_NEAR(l1_error(coarse, fine, 0.0, 1.0), brute, 1e-9);
  EXPECT_NEAR(l1_error(fine, fine, 0.0, 1.0), 0.0, 0.0);
}

TEST(Diagnostics, L1ErrorRejectsIncompatibleGrids) {
  auto a = discretize_initial(InitialData::bell(), make_grid(0.01, 0.25, 0, 1, 0));
  auto b = discretize_initial(InitialData::bell(), make_grid(0.003, 0.25, 0, 1, 0));
  EXPECT_THROW(l1_error(a, b, 0, 1), std::domain_error);
  auto c = discretize_initial(InitialData::bell(), make_grid(0.005, 0.25, 0, 1, 0));
  c.n = 3;
  EXPECT_THROW(l1_error(a, c, 0, 1), std::domain_error);
}

TEST(Diagnostics, FitRate) {
  std::vector<std::pair<double, double>> pairs;
  for (double h : {0.01, 0.005, 0.0025}) pairs.emplace_back(h, 3.0 * std::pow(h, 1.5));
  const auto [slope, intercept] = fit_rate(pairs);
  EXPECT_NEAR(slope, 1.5, 1e-12);
  EXPECT_NEAR(intercept, std::log(3.0), 1e-12);
  EXPECT_THROW(fit_rate({{0.1, 1.0}}), std::domain_error);
  EXPECT_THROW(fit_rate({{0.1, 1.0}, {0.1, 2.0}}), std::domain_error);
  EXPECT_THROW(fit_rate({{0.1, 0.0}, {0.2, 2.0}}), std::domain_error);
}

TEST(Diagnostics, SchemeKeepsPropertiesOnShortRun) {
  RunConfig c;
  c.h = 0.01;
  c.delta = 0.03;
  c.T = 0.3;
  RunOptions opt;
  opt.keep_all_levels = true;
  const auto t = run(c, opt);
  const auto tvd = check_tvd(t.levels);
  EXPECT_TRUE(tvd.ok);
  EXPECT_TRUE(tvd.space_time_ok);
  EXPECT_GE(t.final.values.minCoeff(), 0.4 - 1e-12);
  EXPECT_LE(t.final.values.maxCoeff(), t.initial.values.maxCoeff() + 1e-12);
}
