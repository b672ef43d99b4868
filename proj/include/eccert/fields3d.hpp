#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "eccert/geometry.hpp"
#include "eccert/linalg.hpp"
#include "eccert/profile.hpp"

/// \file fields3d.hpp
/// Vector fields on the spherical shell. Spherical coordinates are
/// (r, chi, theta): chi in (0, pi) is the polar angle from the +z axis and
/// theta in [0, 2pi) the azimuth, with orthonormal frame (e_r, e_chi,
/// e_theta). Jet-based operations assume points away from the polar axis
/// (sin chi > 0); all quadrature grids used here satisfy that.

namespace eccert {

/// A vector field in space, seen in Cartesian components.
class Field3D {
 public:
  virtual ~Field3D() = default;

  virtual Vec3 value(Vec3 p) const = 0;

  /// Jacobian J(i,j) = d value_i / d x_j. Default: 4th-order central
  /// differences of value() with step scaled to |p|.
  virtual Mat3 jacobian(Vec3 p) const;

  virtual bool has_analytic_derivatives() const { return false; }
};

using Field3DPtr = std::shared_ptr<const Field3D>;

/// Spherical components (u_r, u_chi, u_theta).
struct SphericalComponents {
  double ur = 0.0;
  double uchi = 0.0;
  double utheta = 0.0;
};

/// Spherical components and their partials in (r, chi, theta).
struct SphericalJet {
  double ur = 0.0, uchi = 0.0, utheta = 0.0;
  double dur_dr = 0.0, dur_dchi = 0.0, dur_dtheta = 0.0;
  double duchi_dr = 0.0, duchi_dchi = 0.0, duchi_dtheta = 0.0;
  double dutheta_dr = 0.0, dutheta_dchi = 0.0, dutheta_dtheta = 0.0;
};

/// Field on a spherical shell written in spherical components; Cartesian
/// value/jacobian and the coordinate divergence derive from them.
class SphericalField : public Field3D {
 public:
  explicit SphericalField(ShellGeometry geom) : geom_(geom) {}

  const ShellGeometry& geometry() const { return geom_; }

  virtual SphericalComponents spherical(double r, double chi,
                                        double theta) const = 0;

  /// Default: 4th-order central differences of spherical() (one-sided
  /// near the radial boundary).
  virtual SphericalJet spherical_jet(double r, double chi, double theta) const;

  Vec3 value(Vec3 p) const override;
  Mat3 jacobian(Vec3 p) const override;

  /// Divergence from the spherical coordinate formula
  /// du_r/dr + 2 u_r/r + (1/r)(du_chi/dchi + u_chi cot chi)
  /// + (1/(r sin chi)) du_theta/dtheta.
  double divergence_spherical(double r, double chi, double theta) const;

 private:
  ShellGeometry geom_;
};

using SphericalFieldPtr = std::shared_ptr<const SphericalField>;

/// Oscillatory divergence-free witness field on the shell, mode m >= 1:
/// u_r = m Utilde(r) cos(m theta) sin(chi), u_chi = 0,
/// u_theta = (1/r) W(r) sin(m theta) sin^2(chi),
/// with Utilde = U/r and U, W the annulus radial factors. Vanishes on both
/// boundary spheres and is exactly solenoidal.
class ModeField3D final : public SphericalField {
 public:
  ModeField3D(ShellGeometry geom, int m);

  int mode() const { return m_; }

  SphericalComponents spherical(double r, double chi, double theta) const override;
  SphericalJet spherical_jet(double r, double chi, double theta) const override;
  bool has_analytic_derivatives() const override { return true; }

 private:
  int m_;
};

/// Azimuthal secondary-flow field u = f(r) sin(chi) e_theta with f vanishing
/// on the boundary spheres; solenoidal for every f.
class SwirlField3D final : public SphericalField {
 public:
  /// Throws std::invalid_argument when |f(R1)| or |f(R2)| exceeds
  /// 1e-10 * max|f|.
  SwirlField3D(ShellGeometry geom, ScalarProfile f);

  const ScalarProfile& profile() const { return f_; }

  SphericalComponents spherical(double r, double chi, double theta) const override;
  SphericalJet spherical_jet(double r, double chi, double theta) const override;
  bool has_analytic_derivatives() const override { return true; }

 private:
  ScalarProfile f_;
};

/// Rotationally invariant extension carrying flux Phi through every
/// concentric sphere: u = Phi/(4 pi r^2) e_r.
class RadialExtension3D final : public SphericalField {
 public:
  RadialExtension3D(ShellGeometry geom, double phi);

  double flux_constant() const { return phi_; }

  SphericalComponents spherical(double r, double chi, double theta) const override;
  SphericalJet spherical_jet(double r, double chi, double theta) const override;
  bool has_analytic_derivatives() const override { return true; }

 private:
  double phi_;
};

/// Flux carrier plus a non-symmetric solenoidal perturbation
/// curl(g(r) y, 0, h(r) x); exactly solenoidal with flux Phi through every
/// concentric sphere. Value-only closure: derivatives go through the
/// finite-difference fallback.
class PerturbedExtension3D final : public Field3D {
 public:
  PerturbedExtension3D(ShellGeometry geom, double phi, ScalarProfile h,
                       ScalarProfile g);

  const ShellGeometry& geometry() const { return geom_; }

  Vec3 value(Vec3 p) const override;

 private:
  ShellGeometry geom_;
  double phi_;
  ScalarProfile h_, g_;
};

/// y -> R * base(R^T y) for a rotation matrix R (orthogonal, det +1).
class RotatedField3D final : public Field3D {
 public:
  /// Throws std::invalid_argument unless rot is orthogonal with det +1
  /// (checked to 1e-12).
  RotatedField3D(Field3DPtr base, const Mat3& rot);

  Vec3 value(Vec3 p) const override;
  Mat3 jacobian(Vec3 p) const override;
  bool has_analytic_derivatives() const override;

 private:
  Field3DPtr base_;
  Mat3 rot_;
};

/// Linear combination sum_i c_i F_i.
class FieldSum3D final : public Field3D {
 public:
  FieldSum3D(std::vector<std::pair<double, Field3DPtr>> terms);

  Vec3 value(Vec3 p) const override;
  Mat3 jacobian(Vec3 p) const override;
  bool has_analytic_derivatives() const override;

 private:
  std::vector<std::pair<double, Field3DPtr>> terms_;
};

/// Spherical components of an arbitrary Cartesian field at (r, chi, theta).
SphericalComponents spherical_components_of(const Field3D& field, double r,
                                            double chi, double theta);

// Factory helpers.
SphericalFieldPtr test_field_3d(const ShellGeometry& geom, int m);
SphericalFieldPtr inflow_field_3d(const ShellGeometry& geom,
                                  const ScalarProfile& f);
SphericalFieldPtr averaged_extension_3d(const ShellGeometry& geom, double phi);
Field3DPtr perturbed_extension_3d(const ShellGeometry& geom, double phi,
                                  const ScalarProfile& h,
                                  const ScalarProfile& g);

}  // namespace eccert
