#pragma once

#include <cmath>
#include <functional>

#include "mspinn/core/numeric.hpp"

namespace mspinn {

/// Relative deviation between an analytic derivative and the central
/// difference of f at x. The denominator is floored at 1 so that exact-zero
/// derivatives compare on an absolute scale.
inline double finite_diff_check(const std::function<double(double)>& f, double x, double h,
                                double analytic) {
  if (!(h > 0.0)) throw config_error("finite_diff_check: h must be positive");
  const double fd = (f(x + h) - f(x - h)) / (2.0 * h);
  return std::abs(analytic - fd) / std::max(1.0, std::abs(analytic));
}

/// Central-difference gradient of a multivariate scalar function.
inline Vector fd_gradient(const std::function<double(std::span<const double>)>& f,
                          std::span<const double> x, double h = 1e-5) {
  Vector g(x.size(), 0.0), p(x.begin(), x.end());
  for (size_t i = 0; i < x.size(); ++i) {
    const double xi = p[i];
    p[i] = xi + h;
    const double fp = f(p);
    p[i] = xi - h;
    const double fm = f(p);
    p[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

/// max_i |a_i - b_i| / max(1, ||a||_inf): worst-case relative gradient error.
inline double max_rel_deviation(std::span<const double> a, std::span<const double> b) {
  double scale = 1.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  return worst;
}

/// Second-order central difference d2f/dx2.
inline double fd_second(const std::function<double(double)>& f, double x, double h = 1e-4) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace mspinn
