#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace nlwr {

/// Base profiles w on [0,1]. Each integrates to one on [0,1].
enum class KernelProfile { LinearDecreasing, Exponential, Constant };

/// A look-ahead kernel profile together with the two constants the
/// weight-gap and horizon-threshold estimates need: w(0) and min_{[0,1]} -w'.
template <typename Scalar = double>
struct Kernel {
  KernelProfile profile = KernelProfile::LinearDecreasing;
  Scalar value_at_zero = Scalar(2);
  Scalar min_neg_slope = Scalar(2);
};

namespace detail {

// 1 - e^{-1}, the truncation mass of the exponential profile on [0,1].
template <typename Scalar>
Scalar exp_mass() {
  using std::expm1;
  return -expm1(Scalar(-1));
}

}  // namespace detail

/// w(u) for u in [0,1]; no range check.
template <typename Scalar>
Scalar profile_value(KernelProfile profile, Scalar u) {
  using std::exp;
  switch (profile) {
    case KernelProfile::LinearDecreasing:
      return Scalar(2) * (Scalar(1) - u);
    case KernelProfile::Exponential:
      return exp(-u) / detail::exp_mass<Scalar>();
    case KernelProfile::Constant:
      return Scalar(1);
  }
  return Scalar(0);
}

/// W(u) = \int_0^u w(s) ds, so that W(1) = 1.
template <typename Scalar>
Scalar profile_antiderivative(KernelProfile profile, Scalar u) {
  using std::expm1;
  switch (profile) {
    case KernelProfile::LinearDecreasing:
      return u * (Scalar(2) - u);
    case KernelProfile::Exponential:
      return -expm1(-u) / detail::exp_mass<Scalar>();
    case KernelProfile::Constant:
      return u;
  }
  return Scalar(0);
}

/// Returns (w(0), min_{s in [0,1]} -w'(s)).
template <typename Scalar>
std::pair<Scalar, Scalar> profile_constants(KernelProfile profile) {
  using std::exp;
  switch (profile) {
    case KernelProfile::LinearDecreasing:
      return {Scalar(2), Scalar(2)};
    case KernelProfile::Exponential: {
      // -w'(s) = e^{-s}/(1-e^{-1}) is smallest at s = 1.
      const Scalar mass = detail::exp_mass<Scalar>();
      return {Scalar(1) / mass, exp(Scalar(-1)) / mass};
    }
    case KernelProfile::Constant:
      return {Scalar(1), Scalar(0)};
  }
  return {Scalar(0), Scalar(0)};
}

template <typename Scalar = double>
Kernel<Scalar> make_kernel(KernelProfile profile) {
  const auto [w0, slope] = profile_constants<Scalar>(profile);
  return Kernel<Scalar>{profile, w0, slope};
}

template <typename Scalar>
std::pair<Scalar, Scalar> profile_constants(const Kernel<Scalar>& kernel) {
  return {kernel.value_at_zero, kernel.min_neg_slope};
}

/// False for the constant profile, which is admitted but flat.
inline bool is_strictly_decreasing(KernelProfile profile) {
  return profile != KernelProfile::Constant;
}

/// Rescaled kernel w_delta(s) = w(s/delta)/delta on [0, delta].
template <typename Scalar>
Scalar eval_scaled(const Kernel<Scalar>& kernel, Scalar delta, Scalar s) {
  if (!(delta > Scalar(0))) {
    throw std::domain_error("eval_scaled: horizon must be positive");
  }
  if (!(s >= Scalar(0) && s <= delta)) {
    throw std::domain_error("eval_scaled: s outside [0, delta]");
  }
  return profile_value(kernel.profile, s / delta) / delta;
}

inline std::string_view to_string(KernelProfile profile) {
  switch (profile) {
    case KernelProfile::LinearDecreasing:
      return "linear";
    case KernelProfile::Exponential:
      return "exponential";
    case KernelProfile::Constant:
      return "constant";
  }
  return "?";
}

inline KernelProfile kernel_from_name(std::string_view name) {
  if (name == "linear") return KernelProfile::LinearDecreasing;
  if (name == "exponential") return KernelProfile::Exponential;
  if (name == "constant") return KernelProfile::Constant;
  throw std::invalid_argument("unknown kernel '" + std::string(name) +
                              "' (expected linear|exponential|constant)");
}

}  // namespace nlwr
