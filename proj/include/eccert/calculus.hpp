#pragma once

/// Coordinate vector calculus and the integral quantities the certifier
/// needs: divergence, symmetric gradient (rate of strain), flux through
/// concentric circles/spheres, the quadratic form -(u . grad V, u), the
/// Dirichlet seminorm, and the closed-form obstruction functionals whose
/// positivity defeats the extension inequality.
///
/// All domain integrals use tensor quadrature: Gauss-Legendre in r (and in
/// cos chi in 3-D) times trapezoid rules in the periodic angles, with
/// fixed-order reductions for bitwise reproducibility.

#include <cstddef>

#include "eccert/fields2d.hpp"
#include "eccert/fields3d.hpp"
#include "eccert/geometry.hpp"
#include "eccert/linalg.hpp"
#include "eccert/profile.hpp"

namespace eccert {

struct QuadratureSpec {
  std::size_t nodes_r = 64;      // radial Gauss nodes, >= 8
  std::size_t nodes_theta = 128; // angular trapezoid nodes, >= 8
  std::size_t nodes_chi = 64;    // 3-D polar-angle Gauss nodes (in cos chi), >= 8
  double abs_tol = 1e-12;        // absolute tolerance floor for verdicts
  double rel_tol = 1e-8;         // relative agreement target for checks

  /// Throws std::invalid_argument when node counts are below the minimum.
  void validate() const;
};

/// Divergence of the field at a strictly interior point. Uses the exact
/// coordinate formula for polar/spherical closures and the jacobian trace
/// otherwise. Throws std::domain_error for boundary or exterior points.
double divergence(const Field2D& field, Vec2 p, const AnnulusGeometry& geom);
double divergence(const Field3D& field, Vec3 p, const ShellGeometry& geom);

/// Rate-of-strain matrix (symmetric part of the jacobian) in Cartesian
/// components at a strictly interior point; symmetric by construction.
/// Throws std::domain_error for boundary or exterior points.
Mat2 symmetric_gradient(const Field2D& field, Vec2 p,
                        const AnnulusGeometry& geom);
Mat3 symmetric_gradient(const Field3D& field, Vec3 p,
                        const ShellGeometry& geom);

/// The extension-inequality left-hand side -(u . grad V, u) =
/// -int_Omega u . (u . grad) V. Requires u to vanish on the boundary
/// (checked by sampling; std::invalid_argument otherwise).
double quadratic_form(const Field2D& V, const Field2D& u,
                      const AnnulusGeometry& geom, const QuadratureSpec& q);
double quadratic_form(const Field3D& V, const Field3D& u,
                      const ShellGeometry& geom, const QuadratureSpec& q);

/// Same functional evaluated through the rate of strain,
/// -int_Omega u . D[V] . u; agrees with quadratic_form pointwise because
/// x . A . x = x . sym(A) . x.
double quadratic_form_strain(const Field2D& V, const Field2D& u,
                             const AnnulusGeometry& geom,
                             const QuadratureSpec& q);
double quadratic_form_strain(const Field3D& V, const Field3D& u,
                             const ShellGeometry& geom,
                             const QuadratureSpec& q);

/// Dirichlet seminorm squared: int_Omega |grad u|^2 (Frobenius).
double dirichlet_norm_sq(const Field2D& u, const AnnulusGeometry& geom,
                         const QuadratureSpec& q);
double dirichlet_norm_sq(const Field3D& u, const ShellGeometry& geom,
                         const QuadratureSpec& q);

/// Flux of the field through the concentric circle (2-D) or sphere (3-D) of
/// radius r0. Throws std::invalid_argument when r0 lies outside [R1, R2].
double flux(const Field2D& field, const AnnulusGeometry& geom, double r0);
double flux(const Field3D& field, const ShellGeometry& geom, double r0);

/// Planar obstruction functional
///   (Phi/pi) int_Omega (u_r^2 - u_theta^2)/r^2
///   + int_Omega (v'(r) - v(r)/r) u_r u_theta,
/// integrals over the annulus with area element. Requires boundary-vanishing
/// u (std::invalid_argument otherwise).
double obstruction_2d(double phi, const ScalarProfile& v, const PolarField& u,
                      const QuadratureSpec& q);

/// Spatial obstruction functional
///   (Phi/(4 pi)) int_Omega (2 u_r^2 - u_chi^2 - u_theta^2)/r^3
/// over the shell with volume element. Requires boundary-vanishing u.
double obstruction_3d(double phi, const SphericalField& u,
                      const QuadratureSpec& q);

}  // namespace eccert
