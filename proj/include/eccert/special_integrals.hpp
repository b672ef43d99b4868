#pragma once

/// Reduced one-dimensional integrals controlling the obstruction
/// functionals on annuli and spherical shells. With rho = R2/R1 > 1 and the
/// normalized radial coordinate z in [0, 1]:
///
///   F1(rho) = ((rho-1)^3 / (4 pi))   int (cos 2 pi z - 1)^2 / ((rho-1) z + 1)^3 dz
///   F2(rho) = pi (rho-1)             int sin^2(2 pi z)      / ((rho-1) z + 1)   dz
///   G1(rho) = (2 (rho-1)^3 / (3 pi)) int (cos 2 pi z - 1)^2 / ((rho-1) z + 1)^5 dz
///   G2(rho) = (16 pi (rho-1) / 15)   int sin^2(2 pi z)      / ((rho-1) z + 1)^3 dz
///
/// so that for the oscillatory witness fields of mode m,
///   int over the annulus of (u_r^2 - u_theta^2)/r^2   = m^2 F1 - F2,
///   int over the shell  of (2u_r^2 - u_chi^2 - u_theta^2)/r^3 = m^2 G1 - G2.
/// All four are positive for every rho > 1, and depend on rho only.

#include <cstddef>

namespace eccert {

struct SpecialIntegrals {
  double rho = 0.0;
  double f1 = 0.0, f2 = 0.0, g1 = 0.0, g2 = 0.0;
  std::size_t nodes = 0;     // Gauss-Legendre node count used
  double est_error = 0.0;    // max abs difference vs the half-node evaluation
};

/// Evaluates all four integrals with `nodes` Gauss-Legendre points on [0,1]
/// (error estimated against nodes/2). Throws std::invalid_argument for
/// rho <= 1 or nodes < 16.
SpecialIntegrals compute_special_integrals(double rho, std::size_t nodes = 128);

/// Individual values at the default node count. rho <= 1 throws.
double F1(double rho);
double F2(double rho);
double G1(double rho);
double G2(double rho);

/// Mode criteria: kappa = m^2 F1 - F2 (annulus), kappa3 = m^2 G1 - G2
/// (shell). Positivity makes mode m a certifying witness. Throws for
/// rho <= 1 or m < 1.
double kappa(double rho, int m);
double kappa3(double rho, int m);

/// Smallest m >= 1 with kappa(rho, m) > 0 (resp. kappa3); always at most
/// ceil(sqrt(F2/F1)) + 1 (resp. the G analogue).
int minimal_m(double rho);
int minimal_m3(double rho);

}  // namespace eccert
