#pragma once

#include <cstddef>
#include <vector>

/// \file quadrature.hpp
/// One-dimensional quadrature rules the integration layer is built from:
/// Gauss-Legendre on finite intervals (spectrally accurate for smooth
/// integrands) and the uniform trapezoid rule on full periods (spectrally
/// accurate for periodic integrands).

namespace eccert {

/// Nodes and weights of a 1-D quadrature rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  /// Apply the rule to sampled values f[i] = f(nodes[i]).
  double integrate(const double* f) const;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Nodes are the Legendre roots found
/// by Newton iteration from the Chebyshev initial guess; exact (to roundoff)
/// for polynomials of degree <= 2n-1. Requires n >= 1.
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Legendre rule mapped to [a, b]. Requires a < b.
QuadratureRule gauss_legendre(int n, double a, double b);

/// n-point uniform trapezoid rule for one full period of a periodic function:
/// nodes a + k*(b-a)/n for k = 0..n-1, equal weights (b-a)/n. For integrands
/// that are periodic with period b-a this converges spectrally and is exact
/// (to roundoff) for trigonometric polynomials of degree < n/2. Requires n >= 1.
QuadratureRule periodic_trapezoid(int n, double a, double b);

}  // namespace eccert
