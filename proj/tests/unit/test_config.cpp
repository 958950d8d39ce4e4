#include <gtest/gtest.h>

#include "nlwr/config.hpp"

using namespace nlwr;
using nlohmann::json;

namespace {

json minimal() {
  return {{"rule", "exact"}, {"flux", "lf"}, {"delta", 0.005},
          {"h", 0.001},      {"T", 1.0},     {"initial", "riemann"}};
}

}  // namespace

TEST(Config, ParsesMinimalWithDefaults) {
  const auto c = parse_run_config(minimal());
  EXPECT_EQ(c.rule, WeightRule::ExactQuadrature);
  EXPECT_EQ(c.flux, FluxKind::LaxFriedrichs);
  EXPECT_EQ(c.kernel, KernelProfile::LinearDecreasing);
  EXPECT_EQ(c.lambda, 0.25);
  EXPECT_EQ(c.alpha, 2.0);
  EXPECT_EQ(c.initial.kind, InitialData::Kind::Riemann);
  EXPECT_EQ(c.initial.rho_left, 0.1);
  EXPECT_EQ(c.initial.rho_right, 0.6);
  EXPECT_TRUE(c.snapshot_times.empty());
}

TEST(Config, RoundTripsThroughJson) {
  json j = minimal();
  j["kernel"] = "exponential";
  j["rule"] = "normalized-left";
  j["flux"] = "mlf";
  j["alpha"] = 3.0;
  j["initial"] = {{"type", "table"}, {"x", {0.0, 1.0}}, {"rho", {0.2, 0.4}}};
  j["snapshot_times"] = {0.0, 0.25};
  j["report_window"] = {-0.5, 1.5};
  const auto c = parse_run_config(j);
  const auto again = parse_run_config(to_json(c));
  EXPECT_EQ(to_json(again), to_json(c));
  EXPECT_EQ(again.kernel, KernelProfile::Exponential);
  EXPECT_EQ(again.x_lo, -0.5);
  EXPECT_EQ(again.initial.table_rho, (std::vector<double>{0.2, 0.4}));
}

TEST(Config, RejectsBadInput) {
  auto bad = [](auto edit) {
    json j = minimal();
    edit(j);
    return j;
  };
  EXPECT_THROW(parse_run_config(bad([](json& j) { j.erase("h"); })), ConfigError);
  EXPECT_THROW(parse_run_config(bad([](json& j) { j["h"] = "small"; })), ConfigError);
  EXPECT_THROW(parse_run_config(bad([](json& j) { j["h"] = -0.1; })), ConfigError);
  EXPECT_THROW(parse_run_config(bad([](json& j) { j["flux"] = "roe"; })), ConfigError);
  EXPECT_THROW(parse_run_config(bad([](json& j) { j["colour"] = "red"; })), ConfigError);
  EXPECT_THROW(parse_run_config(bad([](json& j) { j["initial"] = "gauss"; })), ConfigError);
  EXPECT_THROW(parse_run_config(bad([](json& j) {
                 j["initial"] = {{"type", "riemann"}, {"rho_left", 1.5}};
               })),
               ConfigError);
  EXPECT_THROW(parse_run_config(bad([](json& j) { j["report_window"] = {1.0, 0.0}; })),
               ConfigError);
  EXPECT_THROW(parse_run_config(json::array()), ConfigError);
  EXPECT_THROW(load_run_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, TimeLists) {
  EXPECT_EQ(parse_time_list("0,0.5,1"), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(parse_time_list("0.25"), (std::vector<double>{0.25}));
  EXPECT_THROW(parse_time_list("0,,1"), ConfigError);
  EXPECT_THROW(parse_time_list("0,abc"), ConfigError);
  EXPECT_THROW(parse_time_list("-1"), ConfigError);
}

TEST(Config, ExperimentOverrides) {
  const auto base = default_experiment(ExperimentId::Exp2LocalLimit);
  const auto s = apply_experiment_overrides(
      base, {{"rules", {"exact"}}, {"h_ladder", {0.01, 0.005}}, {"T", 0.2},
             {"initial", {"bell", {{"type", "riemann"}, {"rho_left", 0.2}}}}});
  EXPECT_EQ(s.rules, std::vector<WeightRule>{WeightRule::ExactQuadrature});
  EXPECT_EQ(s.h_ladder.size(), 2u);
  EXPECT_EQ(s.T, 0.2);
  ASSERT_EQ(s.initial.size(), 2u);
  EXPECT_EQ(s.initial[1].rho_left, 0.2);
  EXPECT_EQ(s.m_values, base.m_values);

  EXPECT_THROW(apply_experiment_overrides(base, {{"rules", {"simpson"}}}), ConfigError);
  EXPECT_THROW(apply_experiment_overrides(base, {{"m_values", {1.5}}}), ConfigError);
  EXPECT_THROW(apply_experiment_overrides(base, {{"h_ladder", {0.007}}}), ConfigError);
  EXPECT_THROW(apply_experiment_overrides(base, {{"jobs", 4}}), ConfigError);
}

TEST(Config, DefaultExperiments) {
  const auto e1 = default_experiment(ExperimentId::Exp1Snapshots);
  EXPECT_EQ(e1.deltas, std::vector<double>{0.005});
  EXPECT_EQ(e1.h_ladder, std::vector<double>{0.001});
  EXPECT_EQ(e1.reference_h, 0.0002);
  const auto e2 = default_experiment(ExperimentId::Exp2LocalLimit);
  EXPECT_EQ(e2.m_values, (std::vector<int>{1, 2, 5}));
  EXPECT_EQ(e2.h_ladder, (std::vector<double>{0.01, 0.005, 0.0025, 0.00125}));
  EXPECT_EQ(e2.reference_h, 0.01 / 32);
  const auto e3 = default_experiment(ExperimentId::Exp3UniformInDelta);
  EXPECT_EQ(e3.deltas, (std::vector<double>{0.01, 0.005, 0.0025}));
  EXPECT_TRUE(e3.m_values.empty());
  const auto e4 = default_experiment(ExperimentId::Exp4Kernels);
  EXPECT_EQ(e4.kernels.size(), 3u);
  EXPECT_EQ(e4.rules, std::vector<WeightRule>{WeightRule::ExactQuadrature});
}
