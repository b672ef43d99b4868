#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "eccert/geometry.hpp"
#include "eccert/linalg.hpp"
#include "eccert/profile.hpp"

/// \file fields2d.hpp
/// Vector fields on the plane annulus. Fields are immutable after
/// construction and safe to evaluate concurrently. The Cartesian view
/// (value/jacobian) is what integration and averaging consume; fields that
/// are naturally written in polar components implement the polar interface
/// and inherit exact frame conversion.

namespace eccert {

/// A vector field on (a subset of) the plane, seen in Cartesian components.
class Field2D {
 public:
  virtual ~Field2D() = default;

  /// Field value at p, Cartesian components.
  virtual Vec2 value(Vec2 p) const = 0;

  /// Jacobian J(i,j) = d value_i / d x_j. Default: 4th-order central
  /// differences of value() with step scaled to |p|.
  virtual Mat2 jacobian(Vec2 p) const;

  /// True when jacobian() is exact (not finite-difference).
  virtual bool has_analytic_derivatives() const { return false; }
};

using Field2DPtr = std::shared_ptr<const Field2D>;

/// Polar components (u_r, u_theta) of a planar field.
struct PolarComponents {
  double ur = 0.0;
  double utheta = 0.0;
};

/// Polar components together with their partial derivatives in (r, theta).
struct PolarJet {
  double ur = 0.0, utheta = 0.0;
  double dur_dr = 0.0, dur_dtheta = 0.0;
  double dutheta_dr = 0.0, dutheta_dtheta = 0.0;
};

/// Field on an annulus written in polar components. Subclasses provide
/// polar() (and ideally polar_jet()); Cartesian value/jacobian and the
/// coordinate divergence formula are derived here.
class PolarField : public Field2D {
 public:
  explicit PolarField(AnnulusGeometry geom) : geom_(geom) {}

  const AnnulusGeometry& geometry() const { return geom_; }

  /// Components at (r, theta), with R1 <= r <= R2.
  virtual PolarComponents polar(double r, double theta) const = 0;

  /// Components and their (r, theta) partials. Default: 4th-order central
  /// differences of polar() (one-sided shifts near the radial boundary).
  virtual PolarJet polar_jet(double r, double theta) const;

  Vec2 value(Vec2 p) const override;
  Mat2 jacobian(Vec2 p) const override;

  /// Divergence from the polar coordinate formula
  /// du_r/dr + u_r/r + (1/r) du_theta/dtheta.
  double divergence_polar(double r, double theta) const;

 private:
  AnnulusGeometry geom_;
};

using PolarFieldPtr = std::shared_ptr<const PolarField>;

/// Oscillatory divergence-free witness field with angular mode m >= 1:
/// u_r = m U(r) cos(m theta), u_theta = W(r) sin(m theta), where
/// U(r) = (1/r) (L/2pi) (cos(2 pi s) - 1), W(r) = sin(2 pi s),
/// s = (r - R1)/L, L = R2 - R1. Vanishes on both boundary circles and
/// satisfies (r U)' = -W, which makes it exactly solenoidal.
class ModeField2D final : public PolarField {
 public:
  ModeField2D(AnnulusGeometry geom, int m);

  int mode() const { return m_; }
  /// Radial factors (exposed for the reduced 1-D integrand tests).
  double radial_u(double r) const;
  double radial_w(double r) const;

  PolarComponents polar(double r, double theta) const override;
  PolarJet polar_jet(double r, double theta) const override;
  bool has_analytic_derivatives() const override { return true; }

 private:
  int m_;
};

/// Purely azimuthal field u = f(r) e_theta with f vanishing on the boundary;
/// solenoidal for every f. The secondary-flow witness for inward flux.
class SwirlField2D final : public PolarField {
 public:
  /// Throws std::invalid_argument when |f(R1)| or |f(R2)| exceeds
  /// 1e-10 * max|f| (max over a radial sample grid).
  SwirlField2D(AnnulusGeometry geom, ScalarProfile f);

  const ScalarProfile& profile() const { return f_; }

  PolarComponents polar(double r, double theta) const override;
  PolarJet polar_jet(double r, double theta) const override;
  bool has_analytic_derivatives() const override { return true; }

 private:
  ScalarProfile f_;
};

/// Rotationally invariant extension carrying flux Phi through every
/// concentric circle: u = Phi/(2 pi r) e_r + v(r) e_theta.
class RadialExtension2D final : public PolarField {
 public:
  RadialExtension2D(AnnulusGeometry geom, double phi, ScalarProfile v);

  double flux_constant() const { return phi_; }
  const ScalarProfile& swirl() const { return v_; }

  PolarComponents polar(double r, double theta) const override;
  PolarJet polar_jet(double r, double theta) const override;
  bool has_analytic_derivatives() const override { return true; }

 private:
  double phi_;
  ScalarProfile v_;
};

/// Flux carrier plus a rotationally non-symmetric stream-function
/// perturbation: u = Phi/(2 pi r) e_r + curl(psi), with
/// psi = a(r) cos(k theta) + b(r) sin(k theta). Exactly solenoidal and
/// carries flux Phi through every concentric circle.
class PerturbedExtension2D final : public PolarField {
 public:
  PerturbedExtension2D(AnnulusGeometry geom, double phi, ScalarProfile a,
                       ScalarProfile b, int k);

  PolarComponents polar(double r, double theta) const override;
  PolarJet polar_jet(double r, double theta) const override;
  bool has_analytic_derivatives() const override { return true; }

 private:
  double phi_;
  ScalarProfile a_, b_;
  int k_;
};

/// y -> R * base(R^T y) for a plane rotation R by `angle`.
class RotatedField2D final : public Field2D {
 public:
  RotatedField2D(Field2DPtr base, double angle);

  Vec2 value(Vec2 p) const override;
  Mat2 jacobian(Vec2 p) const override;
  bool has_analytic_derivatives() const override;

 private:
  Field2DPtr base_;
  double c_, s_;
};

/// Linear combination sum_i c_i F_i.
class FieldSum2D final : public Field2D {
 public:
  FieldSum2D(std::vector<std::pair<double, Field2DPtr>> terms);

  Vec2 value(Vec2 p) const override;
  Mat2 jacobian(Vec2 p) const override;
  bool has_analytic_derivatives() const override;

 private:
  std::vector<std::pair<double, Field2DPtr>> terms_;
};

/// Polar components of an arbitrary Cartesian field at (r, theta).
PolarComponents polar_components_of(const Field2D& field, double r,
                                    double theta);

// Factory helpers (shared-pointer returning, for composition).
PolarFieldPtr test_field_2d(const AnnulusGeometry& geom, int m);
PolarFieldPtr inflow_field_2d(const AnnulusGeometry& geom,
                              const ScalarProfile& f);
PolarFieldPtr averaged_extension_2d(const AnnulusGeometry& geom, double phi,
                                    const ScalarProfile& v);
PolarFieldPtr perturbed_extension_2d(const AnnulusGeometry& geom, double phi,
                                     const ScalarProfile& a,
                                     const ScalarProfile& b, int k);

}  // namespace eccert
