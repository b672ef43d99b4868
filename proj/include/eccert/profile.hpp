#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

/// \file profile.hpp
/// Scalar radial profiles r -> f(r) with first- and second-derivative access.
/// Profiles carry the swirl v(r), secondary-flow profiles f(r), and the radial
/// factors of the oscillatory witness fields.

namespace eccert {

/// Immutable scalar profile on an interval, with derivatives. Analytic
/// derivatives for polynomial and spline-table profiles; 4th-order central
/// differences for opaque callables.
class ScalarProfile {
 public:
  /// The zero profile.
  static ScalarProfile zero();

  /// Polynomial sum_k c[k] * r^k (c may be empty = zero polynomial).
  static ScalarProfile polynomial(std::vector<double> coefficients);

  /// Natural cubic spline through (r[i], f[i]); r strictly increasing,
  /// at least two points. Throws std::invalid_argument otherwise.
  static ScalarProfile table(std::vector<double> r, std::vector<double> f);

  /// Opaque callable; derivatives via 4th-order central differences with
  /// step h = 1e-3 * scale (scale > 0, typically the interval length).
  static ScalarProfile callable(std::function<double(double)> f, double scale);

  double operator()(double r) const;
  double derivative(double r) const;
  double second_derivative(double r) const;

  /// True when constructed by zero() or from an all-zero coefficient list.
  bool is_zero() const;

  /// Compact description for reports: "zero", "poly:c0,c1,...", "table[n]",
  /// "callable".
  std::string describe() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit ScalarProfile(std::shared_ptr<const Impl> impl);
};

/// Parse "poly:c0,c1,..." (as accepted by the command line) into a polynomial
/// profile. Throws std::invalid_argument on malformed input.
ScalarProfile parse_profile(const std::string& text);

}  // namespace eccert
