#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lanegeo {

using ScalarFn = std::function<double(std::span<const double>)>;
using GradientFn = std::function<std::vector<double>(std::span<const double>)>;

/// Largest per-coordinate relative error between `gradient` and a central
/// finite difference of `fn` at `point`. The denominator of each ratio is
/// max(|analytic|, |numeric|, 1e-8). `fn` is evaluated serially.
double grad_check(const ScalarFn& fn, const GradientFn& gradient, std::span<const double> point,
                  double eps = 1e-6);

/// Central-difference gradient, exposed for diagnostics.
std::vector<double> numeric_gradient(const ScalarFn& fn, std::span<const double> point,
                                     double eps);

}  // namespace lanegeo
