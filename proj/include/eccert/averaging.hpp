#pragma once

/// Rotational averaging of vector fields: the group average
///   A(V)(y) = integral over rotations R of  R * V(R^T y)
/// with respect to the normalized invariant measure, discretized by
/// trapezoid rules in the periodic Euler angles and a Gauss rule in the
/// cosine of the middle angle. The average of a solenoidal field is
/// solenoidal, rotationally invariant, and carries the same flux through
/// concentric circles/spheres as the input.

#include <cstddef>
#include <memory>
#include <vector>

#include "eccert/fields2d.hpp"
#include "eccert/fields3d.hpp"
#include "eccert/kernels.hpp"
#include "eccert/linalg.hpp"
#include "eccert/sampled.hpp"

namespace eccert {

struct RotationSpec2D {
  std::size_t n_angles = 256;  // uniform angles on [0, 2pi); >= 4
};

enum class EulerConvention { zyz, zxz };

struct RotationSpec3D {
  std::size_t n1 = 64;  // trapezoid nodes in the first z-angle; >= 4
  std::size_t n2 = 64;  // trapezoid nodes in the last z-angle; >= 4
  std::size_t n3 = 32;  // Gauss nodes in cos(middle angle); >= 4
  EulerConvention convention = EulerConvention::zyz;
};

/// Plane rotation by `angle`.
Mat2 rotation_matrix_2d(double angle);

/// Euler-angle rotation: zyz gives R_z(a1) * R_y(a3) * R_z(a2), zxz gives
/// R_z(a1) * R_x(a3) * R_z(a2). The middle angle a3 ranges over [0, pi].
Mat3 euler_rotation(EulerConvention convention, double a1, double a2,
                    double a3);

/// Discrete rotation grid on SO(2): n uniform angles with equal weights 1/n.
class RotationGrid2D {
 public:
  explicit RotationGrid2D(const RotationSpec2D& spec);

  std::size_t size() const { return cos_.size(); }
  double angle(std::size_t k) const { return angles_[k]; }
  double weight(std::size_t k) const { return weights_[k]; }
  const double* cosines() const { return cos_.data(); }
  const double* sines() const { return sin_.data(); }
  const double* negated_sines() const { return sin_neg_.data(); }
  const double* weights() const { return weights_.data(); }

 private:
  std::vector<double> angles_, cos_, sin_, sin_neg_, weights_;
};

/// Discrete rotation grid on SO(3): trapezoid x trapezoid x Gauss-in-cosine
/// with weights normalized to sum to 1 (Haar measure).
class RotationGrid3D {
 public:
  explicit RotationGrid3D(const RotationSpec3D& spec);

  std::size_t size() const { return weights_.size(); }
  Mat3 rotation(std::size_t k) const;
  double weight(std::size_t k) const { return weights_[k]; }
  const double* weights() const { return weights_.data(); }
  kernels::Rot3View view() const;

 private:
  std::vector<double> entries_[9];  // entries_[3*i + j][k] = R_k(i, j)
  std::vector<double> weights_;
};

/// y -> R(angle) * base(R(angle)^T y).
Field2DPtr rotate_field(Field2DPtr base, double angle);
/// y -> R * base(R^T y); R must be a rotation matrix.
Field3DPtr rotate_field(Field3DPtr base, const Mat3& rot);

/// Value of the discrete group average at one point.
Vec2 average_at(const Field2D& field, Vec2 p, const RotationGrid2D& grid);
Vec3 average_at(const Field3D& field, Vec3 p, const RotationGrid3D& grid);

/// On-demand averaged field: evaluates the discrete average (and, for the
/// jacobian, the average of R * J(R^T y) * R^T) at every query point.
Field2DPtr averaged_field_2d(Field2DPtr field, const RotationSpec2D& spec);
Field3DPtr averaged_field_3d(Field3DPtr field, const RotationSpec3D& spec);

/// Materialized average: evaluates the discrete group average at every node
/// of the input's own grid and returns the resampled result.
SampledField2DPtr average_2d(const SampledField2D& field,
                             const RotationSpec2D& spec);
SampledField3DPtr average_3d(const SampledField3D& field,
                             const RotationSpec3D& spec);

}  // namespace eccert
