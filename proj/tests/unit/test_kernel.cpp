#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>

#include "nlwr/kernel.hpp"

using namespace nlwr;
using HighPrecision = boost::multiprecision::cpp_dec_float_50;

namespace {

const KernelProfile kAll[] = {KernelProfile::LinearDecreasing, KernelProfile::Exponential,
                              KernelProfile::Constant};

// Smallest value of -w' on [0, 1] by central differences on a fine grid.
double min_negative_slope(KernelProfile p) {
  const double eps = 1e-6;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 2000; ++i) {
    const double u = std::clamp(i / 2000.0, eps, 1.0 - eps);
    const double d = (profile_value(p, u + eps) - profile_value(p, u - eps)) / (2 * eps);
    best = std::min(best, -d);
  }
  return best;
}

}  // namespace

TEST(Kernel, LinearClosedForm) {
  const auto k = make_kernel<double>(KernelProfile::LinearDecreasing);
  EXPECT_DOUBLE_EQ(eval_scaled(k, 0.01, 0.0), 200.0);
  EXPECT_DOUBLE_EQ(eval_scaled(k, 0.01, 0.005), 100.0);
  EXPECT_DOUBLE_EQ(eval_scaled(k, 0.01, 0.01), 0.0);
  for (double s : {0.0, 0.001, 0.0042, 0.0099}) {
    EXPECT_NEAR(eval_scaled(k, 0.01, s), 2.0 * (0.01 - s) / (0.01 * 0.01), 1e-10);
  }
}

TEST(Kernel, ExponentialAgainstHighPrecision) {
  const auto k = make_kernel<double>(KernelProfile::Exponential);
  for (double s : {0.0, 0.0025, 0.005, 0.01}) {
    const HighPrecision delta("0.01");
    const HighPrecision hs(s);
    const HighPrecision expected =
        exp(-hs / delta) / (delta * (HighPrecision(1) - exp(HighPrecision(-1))));
    EXPECT_NEAR(eval_scaled(k, 0.01, s), expected.convert_to<double>(), 1e-11)
        << "s = " << s;
  }
  EXPECT_NEAR(eval_scaled(k, 0.01, 0.01), 58.1977, 1e-4);
}

TEST(Kernel, ConstantProfile) {
  const auto k = make_kernel<double>(KernelProfile::Constant);
  EXPECT_DOUBLE_EQ(eval_scaled(k, 0.02, 0.0), 50.0);
  EXPECT_DOUBLE_EQ(eval_scaled(k, 0.02, 0.02), 50.0);
  EXPECT_FALSE(is_strictly_decreasing(KernelProfile::Constant));
}

TEST(Kernel, ProfilesIntegrateToOne) {
  for (auto p : kAll) {
    EXPECT_NEAR(profile_antiderivative(p, 1.0), 1.0, 1e-15);
    EXPECT_EQ(profile_antiderivative(p, 0.0), 0.0);
    // Composite Simpson as an independent check of the antiderivative.
    const int n = 2000;
    double sum = profile_value(p, 0.0) + profile_value(p, 0.3);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4 : 2) * profile_value(p, 0.3 * i / n);
    EXPECT_NEAR(profile_antiderivative(p, 0.3), sum * 0.3 / (3 * n), 1e-12);
  }
}

TEST(Kernel, ConstantsMatchGridSearch) {
  for (auto p : kAll) {
    const auto [w0, c] = profile_constants<double>(p);
    EXPECT_NEAR(w0, profile_value(p, 0.0), 1e-15);
    EXPECT_NEAR(c, min_negative_slope(p), 1e-6) << to_string(p);
  }
  const auto [w0, c] = profile_constants<double>(KernelProfile::Exponential);
  const double mass = 1.0 - std::exp(-1.0);
  EXPECT_NEAR(w0, 1.0 / mass, 1e-15);
  EXPECT_NEAR(c, std::exp(-1.0) / mass, 1e-15);
}

TEST(Kernel, StrictlyDecreasingOnGrid) {
  for (auto p : {KernelProfile::LinearDecreasing, KernelProfile::Exponential}) {
    const auto k = make_kernel<double>(p);
    EXPECT_TRUE(is_strictly_decreasing(p));
    double prev = eval_scaled(k, 0.005, 0.0);
    for (int i = 1; i <= 1000; ++i) {
      const double cur = eval_scaled(k, 0.005, 0.005 * i / 1000.0);
      EXPECT_LT(cur, prev);
      prev = cur;
    }
  }
}

TEST(Kernel, RejectsBadArguments) {
  const auto k = make_kernel<double>(KernelProfile::LinearDecreasing);
  EXPECT_THROW(eval_scaled(k, 0.0, 0.0), std::domain_error);
  EXPECT_THROW(eval_scaled(k, -1.0, 0.0), std::domain_error);
  EXPECT_THROW(eval_scaled(k, 0.01, 0.02), std::domain_error);
  EXPECT_THROW(eval_scaled(k, 0.01, -1e-9), std::domain_error);
}

TEST(Kernel, Names) {
  for (auto p : kAll) EXPECT_EQ(kernel_from_name(to_string(p)), p);
  EXPECT_EQ(kernel_from_name("linear"), KernelProfile::LinearDecreasing);
  EXPECT_THROW(kernel_from_name("gaussian"), std::invalid_argument);
}
