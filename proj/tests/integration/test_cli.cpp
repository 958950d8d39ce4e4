#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(NLWR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const std::string& name, const nlohmann::json& j) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << j.dump();
  return p;
}

}  // namespace

TEST(Cli, SingleRunWritesOutputs) {
  const fs::path out = fs::temp_directory_path() / "nlwr_cli_single";
  fs::remove_all(out);
  const auto cfg = write_config("nlwr_cli_ok.json", {{"rule", "exact"}, {"flux", "lf"},
                                                     {"delta", 0.02}, {"h", 0.01},
                                                     {"T", 0.1}, {"initial", "bell"}});
  EXPECT_EQ(run_cli("single --config " + cfg.string() + " --out " + out.string() +
                    " --snapshot-times 0,0.05"),
            0);
  ASSERT_TRUE(fs::exists(out / "single"));
  const auto dir = fs::directory_iterator(out / "single")->path();
  EXPECT_TRUE(fs::exists(dir / "snapshot_t0.050000.csv"));
  EXPECT_TRUE(fs::exists(dir / "diagnostics.json"));
}

TEST(Cli, ConfigErrorsExitWithTwo) {
  const auto bad = write_config("nlwr_cli_bad.json", {{"rule", "exact"}, {"flux", "roe"}});
  EXPECT_EQ(run_cli("single --config " + bad.string()), 2);
  EXPECT_EQ(run_cli("single --config /nonexistent.json"), 2);
  EXPECT_EQ(run_cli("experiment 7"), 2);
  EXPECT_EQ(run_cli("bogus"), 2);
  EXPECT_EQ(run_cli("check --flux roe"), 2);
}

TEST(Cli, NumericalFailureExitsWithThree) {
  const fs::path out = fs::temp_directory_path() / "nlwr_cli_blowup";
  const auto cfg = write_config("nlwr_cli_blowup.json",
                                {{"rule", "exact"}, {"flux", "lf"}, {"delta", 0.02},
                                 {"h", 0.01}, {"T", 100.0}, {"lambda", 40.0},
                                 {"initial", {{"type", "riemann"}, {"rho_left", 0.0},
                                              {"rho_right", 1.0}}}});
  EXPECT_EQ(run_cli("single --config " + cfg.string() + " --out " + out.string()), 3);
}

TEST(Cli, CheckReportsCflFailure) {
  const fs::path out = fs::temp_directory_path() / "nlwr_cli_check";
  fs::remove_all(out);
  EXPECT_EQ(run_cli("check --flux lf --lambda 0.3 --out " + out.string()), 0);
  std::ifstream in(out / "check" / "check.json");
  const auto report = nlohmann::json::parse(in);
  EXPECT_FALSE(report["assumption5"]["ok"].get<bool>());
  EXPECT_NEAR(report["assumption5"]["margin"].get<double>(), -0.05, 1e-12);
  EXPECT_FALSE(report["warnings"].empty());
}
