#include "eccert/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eccert/kernels.hpp"

namespace eccert {

double QuadratureRule::integrate(const double* f) const {
  return kernels::dot(weights.data(), f, weights.size());
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));

  // Roots come in +/- pairs; solve for the first half and mirror.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess for the i-th root (descending order).
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Evaluate P_n(x) and P_{n-1}(x) by the three-term recurrence.
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1).
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // One clean-up evaluation at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);

    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("gauss_legendre: need a < b");
  QuadratureRule rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double halfwidth = 0.5 * (b - a);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = mid + halfwidth * rule.nodes[i];
    rule.weights[i] *= halfwidth;
  }
  return rule;
}

QuadratureRule periodic_trapezoid(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("periodic_trapezoid: need n >= 1");
  if (!(a < b)) throw std::invalid_argument("periodic_trapezoid: need a < b");
  QuadratureRule rule;
  const double h = (b - a) / n;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.assign(static_cast<std::size_t>(n), h);
  for (int k = 0; k < n; ++k) rule.nodes[static_cast<std::size_t>(k)] = a + k * h;
  return rule;
}

}  // namespace eccert
