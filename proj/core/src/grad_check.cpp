#include "lanegeo/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "lanegeo/errors.hpp"

namespace lanegeo {

std::vector<double> numeric_gradient(const ScalarFn& fn, std::span<const double> point,
                                     double eps) {
  if (!(eps > 0.0)) throw InvalidInput("finite-difference step must be > 0");
  std::vector<double> x(point.begin(), point.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + eps;
    const double fp = fn(x);
    x[i] = saved - eps;
    const double fm = fn(x);
    x[i] = saved;
    g[i] = (fp - fm) / (2.0 * eps);
  }
  return g;
}

double grad_check(const ScalarFn& fn, const GradientFn& gradient, std::span<const double> point,
                  double eps) {
  const auto numeric = numeric_gradient(fn, point, eps);
  const auto analytic = gradient(point);
  if (analytic.size() != numeric.size()) throw InvalidInput("gradient has the wrong length");
  double worst = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const double denom = std::max({std::abs(analytic[i]), std::abs(numeric[i]), 1e-8});
    worst = std::max(worst, std::abs(analytic[i] - numeric[i]) / denom);
  }
  return worst;
}

}  // namespace lanegeo
