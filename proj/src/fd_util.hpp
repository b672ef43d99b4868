#pragma once

#include <algorithm>
#include <cmath>

/// Internal finite-difference helpers: 4th-order first derivatives on a
/// uniform 5-point stencil, with the stencil shifted (one-sided weights)
/// where the evaluation window [lo, hi] would otherwise be violated.

namespace eccert::detail {

/// d/dx f at x, 4th order, all evaluations inside [lo, hi].
template <typename F>
double fd4_bounded(F&& f, double x, double h, double lo, double hi) {
  // Shift s moves the stencil nodes to x + (k + s) h, k = -2..2; weights are
  // the 4th-order first-derivative coefficients at the query point.
  static const double kWeights[5][5] = {
      // s = -2: nodes x-4h..x
      {3.0, -16.0, 36.0, -48.0, 25.0},
      // s = -1: nodes x-3h..x+h
      {-1.0, 6.0, -18.0, 10.0, 3.0},
      // s = 0: centered
      {1.0, -8.0, 0.0, 8.0, -1.0},
      // s = +1: nodes x-h..x+3h
      {-3.0, -10.0, 18.0, -6.0, 1.0},
      // s = +2: nodes x..x+4h
      {-25.0, 48.0, -36.0, 16.0, -3.0},
  };
  int s = 0;
  if (x - 2 * h < lo) s = (x - h < lo) ? 2 : 1;
  if (x + 2 * h > hi) s = (x + h > hi) ? -2 : -1;
  const double* w = kWeights[s + 2];
  double acc = 0.0;
  for (int k = 0; k < 5; ++k) {
    const double c = w[k];
    if (c == 0.0) continue;
    acc += c * f(x + (k - 2 + s) * h);
  }
  return acc / (12.0 * h);
}

/// Centered 4th-order derivative (no window constraint).
template <typename F>
double fd4(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
         (12 * h);
}

}  // namespace eccert::detail
