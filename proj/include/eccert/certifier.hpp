#pragma once

/// Violation certificates for the solenoidal-extension smallness condition on
/// annuli and spherical shells: for a given geometry and nonzero flux, builds a
/// witness field, evaluates the obstruction functional and the Dirichlet
/// seminorm, and certifies that the extension inequality fails for every
/// tolerance below epsilon_star = lhs / grad_norm_sq.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eccert/calculus.hpp"
#include "eccert/geometry.hpp"
#include "eccert/profile.hpp"

namespace eccert {

struct Certificate {
  std::string domain;            // "annulus" or "shell"
  double r1 = 0.0, r2 = 0.0, rho = 0.0, phi = 0.0;
  std::string direction;         // "outflow" (phi > 0) or "inflow" (phi < 0)
  std::string mode_or_profile;   // "mode:<m>" or "profile:<description>"
  double kappa = 0.0;            // reduced flux-independent obstruction integral
  double lhs = 0.0;              // obstruction functional value
  double grad_norm_sq = 0.0;     // Dirichlet seminorm squared of the witness
  double epsilon_star = 0.0;     // lhs / grad_norm_sq
  std::string verdict;           // "VIOLATED" or "INCONCLUSIVE"

  // Tolerance bookkeeping.
  double abs_floor = 0.0;            // absolute error floor
  double epsilon_star_error = 0.0;   // coarse-vs-fine quadrature difference
  double verdict_margin = 0.0;       // VIOLATED requires epsilon_star > margin
  // max of the reduction-identity residual |lhs - prefactor*kappa| and the
  // direct-form residual |lhs - 2*raw_form| (annulus) / |lhs - raw_form|
  // (shell), each normalized by 1 + |lhs|
  double cross_check_residual = 0.0;

  // Quadrature metadata.
  QuadratureSpec quad;
  std::size_t kappa_nodes = 0;
  double kappa_error_est = 0.0;
  double raw_form = 0.0;             // direct -(u . grad V, u) evaluation
  std::string ec_direct_check;       // "passed", "failed", or "skipped"

  bool violated() const { return verdict == "VIOLATED"; }

  /// Serialization with the fixed key set: domain, r1, r2, rho, phi,
  /// mode_or_profile, kappa, lhs, grad_norm_sq, epsilon_star, verdict,
  /// tolerances{...}, quadrature{...}, version.
  nlohmann::ordered_json to_json() const;

  /// Human-readable summary (deterministic).
  std::string to_text() const;
};

/// Outflow certificate on the annulus with witness mode m (defaults to the
/// minimal certifying mode) and optional residual swirl profile v (the
/// certificate does not depend on it). Throws std::invalid_argument for
/// phi <= 0 or m < 1; a mode with nonpositive criterion yields verdict
/// INCONCLUSIVE, not an error.
Certificate certify_outflow_2d(const AnnulusGeometry& geom, double phi,
                               const ScalarProfile& v = ScalarProfile::zero(),
                               std::optional<int> m = std::nullopt,
                               const QuadratureSpec& q = {});

/// Outflow certificate on the spherical shell (the averaged extension is
/// purely radial: no swirl freedom).
Certificate certify_outflow_3d(const ShellGeometry& geom, double phi,
                               std::optional<int> m = std::nullopt,
                               const QuadratureSpec& q = {});

/// Inflow certificate with azimuthal witness profile f (default: the
/// normalized bump (r-R1)(R2-r)/((R2-R1)/2)^2). Nominal use has phi < 0;
/// positive phi is accepted and simply fails to certify. Throws
/// std::invalid_argument for phi == 0, f identically zero, or f not
/// vanishing at both boundary radii.
Certificate certify_inflow_2d(const AnnulusGeometry& geom, double phi,
                              std::optional<ScalarProfile> f = std::nullopt,
                              const QuadratureSpec& q = {});
Certificate certify_inflow_3d(const ShellGeometry& geom, double phi,
                              std::optional<ScalarProfile> f = std::nullopt,
                              const QuadratureSpec& q = {});

struct ModeSearchResult {
  int m = 0;
  Certificate certificate;
};

/// Searches [m_min, m_max] for the mode maximizing epsilon_star among modes
/// with positive criterion (ties break to the smaller mode). When no mode in
/// range certifies, returns an INCONCLUSIVE certificate at m_min. Throws
/// std::invalid_argument for an empty range or m_min < 1.
ModeSearchResult best_mode_2d(const AnnulusGeometry& geom, double phi,
                              int m_min, int m_max,
                              const ScalarProfile& v = ScalarProfile::zero(),
                              const QuadratureSpec& q = {});
ModeSearchResult best_mode_3d(const ShellGeometry& geom, double phi, int m_min,
                              int m_max, const QuadratureSpec& q = {});

struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  bool all_pass() const;
  /// Deterministic line-per-check rendering.
  std::string to_text() const;
  nlohmann::ordered_json to_json() const;
};

/// Runs the named self-consistency checks (divergence_free,
/// boundary_vanishing, ring_integral_reduction, shell_integral_reduction,
/// cross_term_vanishing, averaging_fixed_point, flux_preservation,
/// strain_formula_match) on the annulus/shell with radii (r1, r2) for the
/// witness modes in m_list. Failures are recorded, never thrown. Throws
/// std::invalid_argument only for invalid radii or an empty m_list.
IdentityReport identity_report(double r1, double r2,
                               const std::vector<int>& m_list,
                               const QuadratureSpec& q = {});

}  // namespace eccert
