#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "eccert/quadrature.hpp"

namespace {
using namespace eccert;
constexpr double kPi = std::numbers::pi;

double apply(const QuadratureRule& rule, double (*f)(double)) {
  std::vector<double> values(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) values[i] = f(rule.nodes[i]);
  return rule.integrate(values.data());
}
}  // namespace

TEST_CASE("gauss-legendre is exact for polynomials of degree 2n-1") {
  for (int n = 1; n <= 8; ++n) {
    const QuadratureRule rule = gauss_legendre(n);
    REQUIRE(rule.size() == static_cast<std::size_t>(n));
    for (int degree = 0; degree <= 2 * n - 1; ++degree) {
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        acc += rule.weights[i] * std::pow(rule.nodes[i], degree);
      }
      const double exact =
          degree % 2 == 1 ? 0.0 : 2.0 / static_cast<double>(degree + 1);
      INFO("n ", n, " degree ", degree);
      CHECK(std::abs(acc - exact) <= 1e-14);
    }
  }
}

TEST_CASE("gauss-legendre nodes are symmetric with positive weights") {
  const QuadratureRule rule = gauss_legendre(33);
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    CHECK(rule.weights[i] > 0.0);
    CHECK(rule.nodes[i] > -1.0);
    CHECK(rule.nodes[i] < 1.0);
    CHECK(std::abs(rule.nodes[i] + rule.nodes[rule.size() - 1 - i]) <= 1e-15);
    weight_sum += rule.weights[i];
  }
  CHECK(weight_sum == doctest::Approx(2.0).epsilon(1e-15));
  // Nodes strictly increasing.
  for (std::size_t i = 1; i < rule.size(); ++i) {
    CHECK(rule.nodes[i] > rule.nodes[i - 1]);
  }
}

TEST_CASE("mapped gauss-legendre integrates smooth functions spectrally") {
  const QuadratureRule rule = gauss_legendre(64, 1.0, 2.0);
  CHECK(apply(rule, [](double r) { return 1.0 / r; }) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(apply(rule, [](double r) { return std::exp(r); }) ==
        doctest::Approx(std::exp(2.0) - std::exp(1.0)).epsilon(1e-15));
  double len = 0.0;
  for (double w : rule.weights) len += w;
  CHECK(len == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("periodic trapezoid integrates trigonometric polynomials exactly") {
  const QuadratureRule rule = periodic_trapezoid(16, 0.0, 2.0 * kPi);
  REQUIRE(rule.size() == 16);
  CHECK(rule.nodes.front() == 0.0);
  // No duplicated endpoint: the last node is strictly before 2*pi.
  CHECK(rule.nodes.back() < 2.0 * kPi);
  CHECK(apply(rule, [](double t) { return std::sin(t) * std::sin(t); }) ==
        doctest::Approx(kPi).epsilon(1e-14));
  CHECK(apply(rule, [](double t) { return std::cos(3.0 * t); }) ==
        doctest::Approx(0.0).epsilon(1e-14));
  // Spectral accuracy on a smooth periodic integrand:
  // integral of exp(cos t) over a period is 2*pi*I0(1).
  const double bessel = 2.0 * kPi * std::cyl_bessel_i(0.0, 1.0);
  CHECK(apply(rule, [](double t) { return std::exp(std::cos(t)); }) ==
        doctest::Approx(bessel).epsilon(1e-13));
}

TEST_CASE("quadrature constructors validate their inputs") {
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(8, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(periodic_trapezoid(0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(periodic_trapezoid(8, 1.0, 1.0), std::invalid_argument);
}
