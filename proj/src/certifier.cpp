#include "eccert/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "eccert/averaging.hpp"
#include "eccert/fields2d.hpp"
#include "eccert/fields3d.hpp"
#include "eccert/kernels.hpp"
#include "eccert/quadrature.hpp"
#include "eccert/special_integrals.hpp"
#include "eccert/version.hpp"

namespace eccert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCrossCheckTol = 1e-8;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Deterministic 64-bit LCG; identical streams on every platform.
class ProbeRng {
 public:
  explicit ProbeRng(std::uint64_t seed) : state_(seed) {}

  double uniform(double lo, double hi) {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    const double u = static_cast<double>(state_ >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::uint64_t state_;
};

QuadratureSpec scaled_spec(const QuadratureSpec& q, double factor) {
  const auto scale = [factor](std::size_t n) {
    const auto m = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * factor));
    return std::max<std::size_t>(8, m);
  };
  QuadratureSpec s = q;
  s.nodes_r = scale(q.nodes_r);
  s.nodes_theta = scale(q.nodes_theta);
  s.nodes_chi = scale(q.nodes_chi);
  return s;
}

ScalarProfile default_bump(double r1, double r2) {
  const double half = (r2 - r1) / 2.0;
  const double s = 1.0 / (half * half);
  return ScalarProfile::polynomial({-r1 * r2 * s, (r1 + r2) * s, -s});
}

void require_nonzero_profile(const ScalarProfile& f, double r1, double r2) {
  double peak = 0.0;
  for (int i = 0; i <= 256; ++i) {
    const double r = r1 + (r2 - r1) * i / 256.0;
    peak = std::max(peak, std::abs(f(r)));
  }
  if (peak == 0.0) {
    throw std::invalid_argument(
        "inflow certificate: witness profile is identically zero");
  }
}

/// 1-D reduced integral int_{R1}^{R2} f(r)^2 / r dr.
double profile_square_over_r(const ScalarProfile& f, double r1, double r2,
                             std::size_t nodes) {
  const QuadratureRule rule = gauss_legendre(nodes, r1, r2);
  std::vector<double> integrand(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double r = rule.nodes[k];
    integrand[k] = f(r) * f(r) / r;
  }
  return kernels::dot(rule.weights.data(), integrand.data(), integrand.size());
}

struct VerdictInputs {
  double lhs, grad, eps, eps_coarse;
  double raw_residual;  // consistency of lhs with the direct quadratic form
};

void finish_certificate(Certificate& c, const VerdictInputs& in, double pref,
                        const QuadratureSpec& q,
                        const std::function<bool(double)>& ec_direct) {
  c.lhs = in.lhs;
  c.grad_norm_sq = in.grad;
  c.epsilon_star = in.eps;
  c.abs_floor = q.abs_tol;
  c.epsilon_star_error = std::abs(in.eps - in.eps_coarse);
  c.verdict_margin = 10.0 * (c.epsilon_star_error + q.abs_tol);
  const double reduction_residual =
      std::abs(c.lhs - pref * c.kappa) / (1.0 + std::abs(c.lhs));
  c.cross_check_residual = std::max(reduction_residual, in.raw_residual);
  c.quad = q;
  const bool candidate = c.lhs > 0.0 && c.epsilon_star > c.verdict_margin &&
                         c.cross_check_residual <= kCrossCheckTol;
  if (candidate) {
    const bool held = ec_direct(c.epsilon_star);
    c.ec_direct_check = held ? "passed" : "failed";
    c.verdict = held ? "VIOLATED" : "INCONCLUSIVE";
  } else {
    c.ec_direct_check = "skipped";
    c.verdict = "INCONCLUSIVE";
  }
}

int minimal_mode_from(double a, double b) {
  const int cap = static_cast<int>(std::ceil(std::sqrt(b / a))) + 1;
  for (int m = 1; m < cap; ++m) {
    if (static_cast<double>(m) * m * a - b > 0.0) return m;
  }
  return cap;
}

Certificate certify_2d_with_witness(const AnnulusGeometry& geom, double phi,
                                    const ScalarProfile& v,
                                    const PolarFieldPtr& u,
                                    std::string direction,
                                    std::string witness, double kappa_value,
                                    std::size_t kappa_nodes, double kappa_err,
                                    const QuadratureSpec& q) {
  Certificate c;
  c.domain = "annulus";
  c.r1 = geom.r1;
  c.r2 = geom.r2;
  c.rho = geom.rho();
  c.phi = phi;
  c.direction = std::move(direction);
  c.mode_or_profile = std::move(witness);
  c.kappa = kappa_value;
  c.kappa_nodes = kappa_nodes;
  c.kappa_error_est = kappa_err;

  VerdictInputs in;
  in.lhs = obstruction_2d(phi, v, *u, q);
  in.grad = dirichlet_norm_sq(*u, geom, q);
  in.eps = in.lhs / in.grad;
  const QuadratureSpec coarse = scaled_spec(q, 0.5);
  in.eps_coarse = obstruction_2d(phi, v, *u, coarse) /
                  dirichlet_norm_sq(*u, geom, coarse);

  const PolarFieldPtr extension = averaged_extension_2d(geom, phi, v);
  c.raw_form = quadratic_form(*extension, *u, geom, q);
  // The planar obstruction functional is twice the raw quadratic form (its
  // strain factor is the unhalved gradient-plus-transpose convention).
  in.raw_residual =
      std::abs(in.lhs - 2.0 * c.raw_form) / (1.0 + std::abs(in.lhs));

  const QuadratureSpec refined = scaled_spec(q, 1.25);
  finish_certificate(c, in, phi / kPi, q, [&](double eps_star) {
    const double lhs_r = obstruction_2d(phi, v, *u, refined);
    const double grad_r = dirichlet_norm_sq(*u, geom, refined);
    return lhs_r > 0.5 * eps_star * grad_r;
  });
  return c;
}

Certificate certify_3d_with_witness(const ShellGeometry& geom, double phi,
                                    const SphericalFieldPtr& u,
                                    std::string direction,
                                    std::string witness, double kappa_value,
                                    std::size_t kappa_nodes, double kappa_err,
                                    const QuadratureSpec& q) {
  Certificate c;
  c.domain = "shell";
  c.r1 = geom.r1;
  c.r2 = geom.r2;
  c.rho = geom.rho();
  c.phi = phi;
  c.direction = std::move(direction);
  c.mode_or_profile = std::move(witness);
  c.kappa = kappa_value;
  c.kappa_nodes = kappa_nodes;
  c.kappa_error_est = kappa_err;

  VerdictInputs in;
  in.lhs = obstruction_3d(phi, *u, q);
  in.grad = dirichlet_norm_sq(*u, geom, q);
  in.eps = in.lhs / in.grad;
  const QuadratureSpec coarse = scaled_spec(q, 0.5);
  in.eps_coarse = obstruction_3d(phi, *u, coarse) /
                  dirichlet_norm_sq(*u, geom, coarse);

  const SphericalFieldPtr extension = averaged_extension_3d(geom, phi);
  c.raw_form = quadratic_form(*extension, *u, geom, q);
  // In the shell the obstruction functional equals the raw quadratic form.
  in.raw_residual = std::abs(in.lhs - c.raw_form) / (1.0 + std::abs(in.lhs));

  const QuadratureSpec refined = scaled_spec(q, 1.25);
  finish_certificate(c, in, phi / (4.0 * kPi), q, [&](double eps_star) {
    const double lhs_r = obstruction_3d(phi, *u, refined);
    const double grad_r = dirichlet_norm_sq(*u, geom, refined);
    return lhs_r > 0.5 * eps_star * grad_r;
  });
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Certificate rendering

nlohmann::ordered_json Certificate::to_json() const {
  nlohmann::ordered_json j;
  j["domain"] = domain;
  j["r1"] = r1;
  j["r2"] = r2;
  j["rho"] = rho;
  j["phi"] = phi;
  j["mode_or_profile"] = mode_or_profile;
  j["kappa"] = kappa;
  j["lhs"] = lhs;
  j["grad_norm_sq"] = grad_norm_sq;
  j["epsilon_star"] = epsilon_star;
  j["verdict"] = verdict;
  nlohmann::ordered_json tol;
  tol["abs_floor"] = abs_floor;
  tol["epsilon_star_error"] = epsilon_star_error;
  tol["verdict_margin"] = verdict_margin;
  tol["cross_check_residual"] = cross_check_residual;
  j["tolerances"] = tol;
  nlohmann::ordered_json quadj;
  quadj["nodes_r"] = quad.nodes_r;
  quadj["nodes_theta"] = quad.nodes_theta;
  if (domain == "shell") quadj["nodes_chi"] = quad.nodes_chi;
  quadj["kappa_nodes"] = kappa_nodes;
  quadj["kappa_error_est"] = kappa_error_est;
  quadj["raw_form"] = raw_form;
  quadj["ec_direct_check"] = ec_direct_check;
  j["quadrature"] = quadj;
  j["version"] = kToolVersion;
  return j;
}

std::string Certificate::to_text() const {
  std::string out;
  out += "certificate: " + domain + " R1=" + format_double(r1) +
         " R2=" + format_double(r2) + " rho=" + format_double(rho) + "\n";
  out += "flux phi = " + format_double(phi) + " (" + direction +
         "), witness " + mode_or_profile + "\n";
  out += "kappa = " + format_double(kappa) + ", lhs = " + format_double(lhs) +
         ", grad_norm_sq = " + format_double(grad_norm_sq) + "\n";
  out += "epsilon_star = " + format_double(epsilon_star) +
         " (margin " + format_double(verdict_margin) + ")\n";
  out += "verdict: " + verdict + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Certifiers

Certificate certify_outflow_2d(const AnnulusGeometry& geom, double phi,
                               const ScalarProfile& v, std::optional<int> m,
                               const QuadratureSpec& q) {
  if (!(phi > 0.0) || !std::isfinite(phi)) {
    throw std::invalid_argument(
        "certify_outflow_2d: flux must be positive and finite");
  }
  q.validate();
  const SpecialIntegrals si = compute_special_integrals(geom.rho());
  const int mode = m.value_or(minimal_mode_from(si.f1, si.f2));
  if (mode < 1) {
    throw std::invalid_argument("certify_outflow_2d: mode must be >= 1");
  }
  const double md = static_cast<double>(mode);
  const double kappa_value = md * md * si.f1 - si.f2;
  const double kappa_err = (md * md + 1.0) * si.est_error;
  const PolarFieldPtr u = test_field_2d(geom, mode);
  return certify_2d_with_witness(geom, phi, v, u, "outflow",
                                 "mode:" + std::to_string(mode), kappa_value,
                                 si.nodes, kappa_err, q);
}

Certificate certify_outflow_3d(const ShellGeometry& geom, double phi,
                               std::optional<int> m, const QuadratureSpec& q) {
  if (!(phi > 0.0) || !std::isfinite(phi)) {
    throw std::invalid_argument(
        "certify_outflow_3d: flux must be positive and finite");
  }
  q.validate();
  const SpecialIntegrals si = compute_special_integrals(geom.rho());
  const int mode = m.value_or(minimal_mode_from(si.g1, si.g2));
  if (mode < 1) {
    throw std::invalid_argument("certify_outflow_3d: mode must be >= 1");
  }
  // The shell witness scales like 1/R1, so the reduced integral carries a
  // uniform 1/R1^2 relative to its value on the unit-inner-radius shell;
  // the sign criterion is radius-independent.
  const double r1sq = geom.r1 * geom.r1;
  const double md = static_cast<double>(mode);
  const double kappa_value = (md * md * si.g1 - si.g2) / r1sq;
  const double kappa_err = (md * md + 1.0) * si.est_error / r1sq;
  const SphericalFieldPtr u = test_field_3d(geom, mode);
  return certify_3d_with_witness(geom, phi, u, "outflow",
                                 "mode:" + std::to_string(mode), kappa_value,
                                 si.nodes, kappa_err, q);
}

Certificate certify_inflow_2d(const AnnulusGeometry& geom, double phi,
                              std::optional<ScalarProfile> f,
                              const QuadratureSpec& q) {
  if (phi == 0.0 || !std::isfinite(phi)) {
    throw std::invalid_argument(
        "certify_inflow_2d: flux must be nonzero and finite");
  }
  q.validate();
  const bool defaulted = !f.has_value();
  const ScalarProfile profile =
      defaulted ? default_bump(geom.r1, geom.r2) : *f;
  require_nonzero_profile(profile, geom.r1, geom.r2);
  const std::size_t kappa_nodes = 128;
  // Reduced integral: int (u_r^2 - u_theta^2)/r^2 dA = -2 pi int f^2/r dr.
  const double fine = profile_square_over_r(profile, geom.r1, geom.r2,
                                            kappa_nodes);
  const double coarse = profile_square_over_r(profile, geom.r1, geom.r2,
                                              kappa_nodes / 2);
  const double kappa_value = -kTwoPi * fine;
  const double kappa_err = kTwoPi * std::abs(fine - coarse);
  const PolarFieldPtr u = inflow_field_2d(geom, profile);
  const std::string witness =
      defaulted ? "profile:default-bump" : "profile:" + profile.describe();
  return certify_2d_with_witness(geom, phi, ScalarProfile::zero(), u, "inflow",
                                 witness, kappa_value, kappa_nodes, kappa_err,
                                 q);
}

Certificate certify_inflow_3d(const ShellGeometry& geom, double phi,
                              std::optional<ScalarProfile> f,
                              const QuadratureSpec& q) {
  if (phi == 0.0 || !std::isfinite(phi)) {
    throw std::invalid_argument(
        "certify_inflow_3d: flux must be nonzero and finite");
  }
  q.validate();
  const bool defaulted = !f.has_value();
  const ScalarProfile profile =
      defaulted ? default_bump(geom.r1, geom.r2) : *f;
  require_nonzero_profile(profile, geom.r1, geom.r2);
  const std::size_t kappa_nodes = 128;
  // Reduced integral: int (2u_r^2 - u_chi^2 - u_theta^2)/r^3 dV
  //                   = -(8 pi / 3) int f^2/r dr.
  const double fine = profile_square_over_r(profile, geom.r1, geom.r2,
                                            kappa_nodes);
  const double coarse = profile_square_over_r(profile, geom.r1, geom.r2,
                                              kappa_nodes / 2);
  const double factor = 8.0 * kPi / 3.0;
  const double kappa_value = -factor * fine;
  const double kappa_err = factor * std::abs(fine - coarse);
  const SphericalFieldPtr u = inflow_field_3d(geom, profile);
  const std::string witness =
      defaulted ? "profile:default-bump" : "profile:" + profile.describe();
  return certify_3d_with_witness(geom, phi, u, "inflow", witness, kappa_value,
                                 kappa_nodes, kappa_err, q);
}

// ---------------------------------------------------------------------------
// Mode search

ModeSearchResult best_mode_2d(const AnnulusGeometry& geom, double phi,
                              int m_min, int m_max, const ScalarProfile& v,
                              const QuadratureSpec& q) {
  if (m_min < 1 || m_min > m_max) {
    throw std::invalid_argument("best_mode_2d: need 1 <= m_min <= m_max");
  }
  q.validate();
  const SpecialIntegrals si = compute_special_integrals(geom.rho());
  int best = -1;
  double best_eps = 0.0;
  for (int m = m_min; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    if (md * md * si.f1 - si.f2 <= 0.0) continue;
    const PolarFieldPtr u = test_field_2d(geom, m);
    const double eps = obstruction_2d(phi, v, *u, q) /
                       dirichlet_norm_sq(*u, geom, q);
    if (best < 0 || eps > best_eps) {
      best = m;
      best_eps = eps;
    }
  }
  const int chosen = best < 0 ? m_min : best;
  return {chosen, certify_outflow_2d(geom, phi, v, chosen, q)};
}

ModeSearchResult best_mode_3d(const ShellGeometry& geom, double phi, int m_min,
                              int m_max, const QuadratureSpec& q) {
  if (m_min < 1 || m_min > m_max) {
    throw std::invalid_argument("best_mode_3d: need 1 <= m_min <= m_max");
  }
  q.validate();
  const SpecialIntegrals si = compute_special_integrals(geom.rho());
  int best = -1;
  double best_eps = 0.0;
  for (int m = m_min; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    if (md * md * si.g1 - si.g2 <= 0.0) continue;
    const SphericalFieldPtr u = test_field_3d(geom, m);
    const double eps = obstruction_3d(phi, *u, q) /
                       dirichlet_norm_sq(*u, geom, q);
    if (best < 0 || eps > best_eps) {
      best = m;
      best_eps = eps;
    }
  }
  const int chosen = best < 0 ? m_min : best;
  return {chosen, certify_outflow_3d(geom, phi, chosen, q)};
}

// ---------------------------------------------------------------------------
// Identity report

bool IdentityReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string IdentityReport::to_text() const {
  std::string out;
  for (const auto& c : checks) {
    out += c.name + " residual=" + format_double(c.residual) +
           " tolerance=" + format_double(c.tolerance) +
           (c.pass ? " PASS" : " FAIL") + "\n";
  }
  out += std::string("overall: ") + (all_pass() ? "PASS" : "FAIL") + "\n";
  return out;
}

nlohmann::ordered_json IdentityReport::to_json() const {
  nlohmann::ordered_json j;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["residual"] = c.residual;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    j["checks"].push_back(e);
  }
  j["all_pass"] = all_pass();
  return j;
}

namespace {

double interior_scale_2d(const Field2D& u, const AnnulusGeometry& g) {
  double scale = 0.0;
  for (int ri = 1; ri <= 3; ++ri) {
    const double r = g.r1 + (g.r2 - g.r1) * ri / 4.0;
    for (int j = 0; j < 64; ++j) {
      const double theta = kTwoPi * j / 64.0;
      const Vec2 v = u.value({r * std::cos(theta), r * std::sin(theta)});
      scale = std::max(scale, std::hypot(v.x, v.y));
    }
  }
  return scale;
}

double boundary_worst_2d(const Field2D& u, const AnnulusGeometry& g) {
  double worst = 0.0;
  for (const double r : {g.r1, g.r2}) {
    for (int j = 0; j < 64; ++j) {
      const double theta = kTwoPi * j / 64.0;
      const Vec2 v = u.value({r * std::cos(theta), r * std::sin(theta)});
      worst = std::max(worst, std::hypot(v.x, v.y));
    }
  }
  return worst;
}

double interior_scale_3d(const Field3D& u, const ShellGeometry& g) {
  double scale = 0.0;
  for (int ri = 1; ri <= 3; ++ri) {
    const double r = g.r1 + (g.r2 - g.r1) * ri / 4.0;
    for (int a = 0; a < 8; ++a) {
      const double chi = kPi * (a + 0.5) / 8.0;
      for (int j = 0; j < 8; ++j) {
        const double theta = kTwoPi * j / 8.0;
        const Vec3 v = u.value({r * std::sin(chi) * std::cos(theta),
                                r * std::sin(chi) * std::sin(theta),
                                r * std::cos(chi)});
        scale = std::max(scale, v.norm());
      }
    }
  }
  return scale;
}

double boundary_worst_3d(const Field3D& u, const ShellGeometry& g) {
  double worst = 0.0;
  for (const double r : {g.r1, g.r2}) {
    for (int a = 0; a < 8; ++a) {
      const double chi = kPi * (a + 0.5) / 8.0;
      for (int j = 0; j < 8; ++j) {
        const double theta = kTwoPi * j / 8.0;
        const Vec3 v = u.value({r * std::sin(chi) * std::cos(theta),
                                r * std::sin(chi) * std::sin(theta),
                                r * std::cos(chi)});
        worst = std::max(worst, v.norm());
      }
    }
  }
  return worst;
}

Vec2 random_point_2d(ProbeRng& rng, const AnnulusGeometry& g) {
  const double len = g.r2 - g.r1;
  const double r = rng.uniform(g.r1 + 0.01 * len, g.r2 - 0.01 * len);
  const double theta = rng.uniform(0.0, kTwoPi);
  return {r * std::cos(theta), r * std::sin(theta)};
}

Vec3 random_point_3d(ProbeRng& rng, const ShellGeometry& g) {
  const double len = g.r2 - g.r1;
  const double r = rng.uniform(g.r1 + 0.01 * len, g.r2 - 0.01 * len);
  const double chi = rng.uniform(0.05, kPi - 0.05);
  const double theta = rng.uniform(0.0, kTwoPi);
  return {r * std::sin(chi) * std::cos(theta),
          r * std::sin(chi) * std::sin(theta), r * std::cos(chi)};
}

/// int |v' - v/r| |u_r u_theta| dA, for normalizing the cross term.
double cross_term_magnitude(const ScalarProfile& v, const PolarField& u,
                            const QuadratureSpec& q) {
  const AnnulusGeometry& g = u.geometry();
  const QuadratureRule rr = gauss_legendre(q.nodes_r, g.r1, g.r2);
  double acc = 0.0;
  const double wt = kTwoPi / static_cast<double>(q.nodes_theta);
  for (std::size_t i = 0; i < rr.size(); ++i) {
    const double r = rr.nodes[i];
    const double coeff = std::abs(v.derivative(r) - v(r) / r);
    for (std::size_t j = 0; j < q.nodes_theta; ++j) {
      const double theta = kTwoPi * static_cast<double>(j) /
                           static_cast<double>(q.nodes_theta);
      const PolarComponents c = u.polar(r, theta);
      acc += rr.weights[i] * wt * r * coeff * std::abs(c.ur * c.utheta);
    }
  }
  return acc;
}

}  // namespace

IdentityReport identity_report(double r1, double r2,
                               const std::vector<int>& m_list,
                               const QuadratureSpec& q) {
  if (m_list.empty()) {
    throw std::invalid_argument("identity_report: m_list must be nonempty");
  }
  q.validate();
  const AnnulusGeometry annulus(r1, r2);
  const ShellGeometry shell(r1, r2);
  const ScalarProfile bump = default_bump(r1, r2);
  IdentityReport report;

  // 1. divergence_free: analytic-derivative witnesses and extensions.
  {
    ProbeRng rng(0x9e3779b97f4a7c15ULL);
    double worst = 0.0;
    std::vector<Field2DPtr> fields2;
    for (int m : m_list) fields2.push_back(test_field_2d(annulus, m));
    fields2.push_back(averaged_extension_2d(annulus, 1.0, ScalarProfile::zero()));
    fields2.push_back(perturbed_extension_2d(
        annulus, 1.0, ScalarProfile::polynomial({0.3, -0.2, 0.05}),
        ScalarProfile::polynomial({-0.1, 0.15}), 3));
    for (const auto& f : fields2) {
      for (int k = 0; k < 64; ++k) {
        worst = std::max(
            worst, std::abs(divergence(*f, random_point_2d(rng, annulus),
                                       annulus)));
      }
    }
    std::vector<Field3DPtr> fields3;
    for (int m : m_list) fields3.push_back(test_field_3d(shell, m));
    fields3.push_back(averaged_extension_3d(shell, 1.0));
    fields3.push_back(inflow_field_3d(shell, bump));
    for (const auto& f : fields3) {
      for (int k = 0; k < 64; ++k) {
        worst = std::max(
            worst,
            std::abs(divergence(*f, random_point_3d(rng, shell), shell)));
      }
    }
    report.checks.push_back({"divergence_free", worst, 1e-10, worst <= 1e-10});
  }

  // 2. boundary_vanishing: witnesses vanish on both boundary components.
  {
    double worst = 0.0;
    for (int m : m_list) {
      const PolarFieldPtr u2 = test_field_2d(annulus, m);
      worst = std::max(worst, boundary_worst_2d(*u2, annulus) /
                                  std::max(interior_scale_2d(*u2, annulus),
                                           1e-300));
      const SphericalFieldPtr u3 = test_field_3d(shell, m);
      worst = std::max(worst, boundary_worst_3d(*u3, shell) /
                                  std::max(interior_scale_3d(*u3, shell),
                                           1e-300));
    }
    const PolarFieldPtr w2 = inflow_field_2d(annulus, bump);
    worst = std::max(worst, boundary_worst_2d(*w2, annulus) /
                                std::max(interior_scale_2d(*w2, annulus),
                                         1e-300));
    const SphericalFieldPtr w3 = inflow_field_3d(shell, bump);
    worst = std::max(worst, boundary_worst_3d(*w3, shell) /
                                std::max(interior_scale_3d(*w3, shell),
                                         1e-300));
    report.checks.push_back(
        {"boundary_vanishing", worst, 1e-8, worst <= 1e-8});
  }

  // 3/4. Reduction identities: domain quadrature vs 1-D special integrals.
  {
    const SpecialIntegrals si = compute_special_integrals(annulus.rho());
    double worst2 = 0.0, worst3 = 0.0;
    for (int m : m_list) {
      const double md = static_cast<double>(m);
      const PolarFieldPtr u2 = test_field_2d(annulus, m);
      const double lhs2 =
          obstruction_2d(kPi, ScalarProfile::zero(), *u2, q);
      const double target2 = md * md * si.f1 - si.f2;
      worst2 = std::max(worst2,
                        std::abs(lhs2 - target2) / (1.0 + std::abs(target2)));
      const SphericalFieldPtr u3 = test_field_3d(shell, m);
      const double lhs3 = obstruction_3d(4.0 * kPi, *u3, q);
      const double target3 = (md * md * si.g1 - si.g2) / (r1 * r1);
      worst3 = std::max(worst3,
                        std::abs(lhs3 - target3) / (1.0 + std::abs(target3)));
    }
    report.checks.push_back({"ring_integral_reduction", worst2, q.rel_tol,
                             worst2 <= q.rel_tol});
    report.checks.push_back(
        {"shell_integral_reduction", worst3, 1e-6, worst3 <= 1e-6});
  }

  // 5. cross_term_vanishing: the swirl term of the planar obstruction
  // functional vanishes for oscillatory witnesses.
  {
    ProbeRng rng(0x7f4a7c159e3779b9ULL);
    const PolarFieldPtr u = test_field_2d(annulus, m_list.front());
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> coeffs(5);
      for (auto& c : coeffs) c = rng.uniform(-1.0, 1.0);
      const ScalarProfile v = ScalarProfile::polynomial(coeffs);
      const double cross = obstruction_2d(0.0, v, *u, q);
      const double scale = cross_term_magnitude(v, *u, q);
      worst = std::max(worst, std::abs(cross) / (1.0 + scale));
    }
    report.checks.push_back(
        {"cross_term_vanishing", worst, 1e-10, worst <= 1e-10});
  }

  // 6. averaging_fixed_point: rotationally invariant extensions are fixed
  // points of the discrete group average.
  {
    ProbeRng rng(0x2545f4914f6cdd1dULL);
    double worst = 0.0;
    const PolarFieldPtr v2 = averaged_extension_2d(annulus, 1.0,
                                                   ScalarProfile::zero());
    const Field2DPtr a2 = averaged_field_2d(v2, RotationSpec2D{64});
    for (int k = 0; k < 16; ++k) {
      const Vec2 p = random_point_2d(rng, annulus);
      const Vec2 d = a2->value(p) - v2->value(p);
      worst = std::max(worst, std::hypot(d.x, d.y));
    }
    const SphericalFieldPtr v3 = averaged_extension_3d(shell, 1.0);
    const Field3DPtr a3 = averaged_field_3d(v3, RotationSpec3D{8, 8, 8});
    for (int k = 0; k < 8; ++k) {
      const Vec3 p = random_point_3d(rng, shell);
      const Vec3 d = a3->value(p) - v3->value(p);
      worst = std::max(worst, d.norm());
    }
    report.checks.push_back(
        {"averaging_fixed_point", worst, 1e-12, worst <= 1e-12});
  }

  // 7. flux_preservation: group averaging keeps the flux of solenoidal
  // extensions through every concentric circle/sphere.
  {
    double worst = 0.0;
    const Field2DPtr p2 = perturbed_extension_2d(
        annulus, 1.0, ScalarProfile::polynomial({0.2, -0.1, 0.04}),
        ScalarProfile::polynomial({-0.3, 0.12}), 2);
    const Field2DPtr a2 = averaged_field_2d(p2, RotationSpec2D{64});
    const Field3DPtr p3 = perturbed_extension_3d(
        shell, 1.0, ScalarProfile::polynomial({0.15, -0.07}),
        ScalarProfile::polynomial({0.1, 0.05}));
    const Field3DPtr a3 = averaged_field_3d(p3, RotationSpec3D{8, 8, 8});
    for (int ri = 1; ri <= 3; ++ri) {
      const double r0 = r1 + (r2 - r1) * ri / 4.0;
      worst = std::max(worst, std::abs(flux(*a2, annulus, r0) - 1.0));
      worst = std::max(worst, std::abs(flux(*a3, shell, r0) - 1.0));
    }
    report.checks.push_back(
        {"flux_preservation", worst, 1e-8, worst <= 1e-8});
  }

  // 8. strain_formula_match: rate of strain of the flux carriers matches the
  // closed forms c (I - 2 e_r e_r^T) in the plane (c = phi/(2 pi r^2)) and
  // phi/(4 pi r^3) (I - 3 e_r e_r^T) in space.
  {
    ProbeRng rng(0xda942042e4dd58b5ULL);
    const double phi = 1.3;
    double worst = 0.0;
    const PolarFieldPtr v2 = averaged_extension_2d(annulus, phi,
                                                   ScalarProfile::zero());
    for (int k = 0; k < 100; ++k) {
      const Vec2 p = random_point_2d(rng, annulus);
      const double r = p.norm();
      const Mat2 d = symmetric_gradient(*v2, p, annulus);
      const double c = phi / (kTwoPi * r * r);
      Mat2 expected;
      const double ex = p.x / r, ey = p.y / r;
      expected(0, 0) = c * (1.0 - 2.0 * ex * ex);
      expected(0, 1) = c * (-2.0 * ex * ey);
      expected(1, 0) = expected(0, 1);
      expected(1, 1) = c * (1.0 - 2.0 * ey * ey);
      worst = std::max(worst, (d - expected).max_abs());
    }
    const SphericalFieldPtr v3 = averaged_extension_3d(shell, phi);
    for (int k = 0; k < 100; ++k) {
      const Vec3 p = random_point_3d(rng, shell);
      const double r = p.norm();
      const Mat3 d = symmetric_gradient(*v3, p, shell);
      const double c = phi / (4.0 * kPi * r * r * r);
      Mat3 expected;
      const double e[3] = {p.x / r, p.y / r, p.z / r};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          expected(i, j) = c * ((i == j ? 1.0 : 0.0) - 3.0 * e[i] * e[j]);
        }
      }
      worst = std::max(worst, (d - expected).max_abs());
    }
    report.checks.push_back(
        {"strain_formula_match", worst, 1e-10, worst <= 1e-10});
  }

  return report;
}

}  // namespace eccert
