#include "eccert/special_integrals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eccert/quadrature.hpp"

namespace eccert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct RawIntegrals {
  double f1, f2, g1, g2;
};

RawIntegrals evaluate(double rho, std::size_t nodes) {
  const QuadratureRule rule = gauss_legendre(nodes, 0.0, 1.0);
  const double d = rho - 1.0;
  double i_f1 = 0.0, i_f2 = 0.0, i_g1 = 0.0, i_g2 = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double z = rule.nodes[k];
    const double w = rule.weights[k];
    const double den = d * z + 1.0;
    const double osc = std::cos(kTwoPi * z) - 1.0;
    const double s = std::sin(kTwoPi * z);
    const double den2 = den * den;
    const double den3 = den2 * den;
    i_f1 += w * osc * osc / den3;
    i_f2 += w * s * s / den;
    i_g1 += w * osc * osc / (den3 * den2);
    i_g2 += w * s * s / den3;
  }
  const double d3 = d * d * d;
  RawIntegrals out;
  out.f1 = d3 / (4.0 * kPi) * i_f1;
  out.f2 = kPi * d * i_f2;
  out.g1 = 2.0 * d3 / (3.0 * kPi) * i_g1;
  out.g2 = 16.0 * kPi * d / 15.0 * i_g2;
  return out;
}

int minimal_mode_impl(double rho, bool spatial) {
  const SpecialIntegrals si = compute_special_integrals(rho);
  const double a = spatial ? si.g1 : si.f1;
  const double b = spatial ? si.g2 : si.f2;
  const int cap = static_cast<int>(std::ceil(std::sqrt(b / a))) + 1;
  for (int m = 1; m < cap; ++m) {
    if (static_cast<double>(m) * m * a - b > 0.0) return m;
  }
  return cap;  // cap^2 a - b > 0 because cap > sqrt(b/a)
}

}  // namespace

SpecialIntegrals compute_special_integrals(double rho, std::size_t nodes) {
  if (!(rho > 1.0) || !std::isfinite(rho)) {
    throw std::invalid_argument(
        "special integrals: aspect ratio rho must be finite and > 1");
  }
  if (nodes < 16) {
    throw std::invalid_argument("special integrals: need at least 16 nodes");
  }
  const RawIntegrals fine = evaluate(rho, nodes);
  const RawIntegrals coarse = evaluate(rho, nodes / 2);
  SpecialIntegrals out;
  out.rho = rho;
  out.f1 = fine.f1;
  out.f2 = fine.f2;
  out.g1 = fine.g1;
  out.g2 = fine.g2;
  out.nodes = nodes;
  out.est_error = std::max(
      std::max(std::abs(fine.f1 - coarse.f1), std::abs(fine.f2 - coarse.f2)),
      std::max(std::abs(fine.g1 - coarse.g1), std::abs(fine.g2 - coarse.g2)));
  return out;
}

double F1(double rho) { return compute_special_integrals(rho).f1; }
double F2(double rho) { return compute_special_integrals(rho).f2; }
double G1(double rho) { return compute_special_integrals(rho).g1; }
double G2(double rho) { return compute_special_integrals(rho).g2; }

double kappa(double rho, int m) {
  if (m < 1) throw std::invalid_argument("kappa: mode m must be >= 1");
  const SpecialIntegrals si = compute_special_integrals(rho);
  return static_cast<double>(m) * m * si.f1 - si.f2;
}

double kappa3(double rho, int m) {
  if (m < 1) throw std::invalid_argument("kappa3: mode m must be >= 1");
  const SpecialIntegrals si = compute_special_integrals(rho);
  return static_cast<double>(m) * m * si.g1 - si.g2;
}

int minimal_m(double rho) { return minimal_mode_impl(rho, false); }

int minimal_m3(double rho) { return minimal_mode_impl(rho, true); }

}  // namespace eccert
