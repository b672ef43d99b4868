#include "eccert/averaging.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eccert/quadrature.hpp"

namespace eccert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m = Mat3::identity();
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = s;
  m(1, 1) = c;
  return m;
}

Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m = Mat3::identity();
  m(0, 0) = c;
  m(0, 2) = s;
  m(2, 0) = -s;
  m(2, 2) = c;
  return m;
}

Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m = Mat3::identity();
  m(1, 1) = c;
  m(1, 2) = -s;
  m(2, 1) = s;
  m(2, 2) = c;
  return m;
}

}  // namespace

Mat2 rotation_matrix_2d(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat2 m;
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = s;
  m(1, 1) = c;
  return m;
}

Mat3 euler_rotation(EulerConvention convention, double a1, double a2,
                    double a3) {
  const Mat3 middle =
      convention == EulerConvention::zyz ? rot_y(a3) : rot_x(a3);
  return rot_z(a1) * middle * rot_z(a2);
}

// ---------------------------------------------------------------------------
// RotationGrid2D

RotationGrid2D::RotationGrid2D(const RotationSpec2D& spec) {
  if (spec.n_angles < 4) {
    throw std::invalid_argument("RotationSpec2D: need at least 4 angles");
  }
  const std::size_t n = spec.n_angles;
  angles_.resize(n);
  cos_.resize(n);
  sin_.resize(n);
  sin_neg_.resize(n);
  weights_.assign(n, 1.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    angles_[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    cos_[k] = std::cos(angles_[k]);
    sin_[k] = std::sin(angles_[k]);
    sin_neg_[k] = -sin_[k];
  }
}

// ---------------------------------------------------------------------------
// RotationGrid3D

RotationGrid3D::RotationGrid3D(const RotationSpec3D& spec) {
  if (spec.n1 < 4 || spec.n2 < 4 || spec.n3 < 4) {
    throw std::invalid_argument(
        "RotationSpec3D: need at least 4 nodes per Euler angle");
  }
  const QuadratureRule gauss = gauss_legendre(spec.n3, -1.0, 1.0);
  const std::size_t total = spec.n1 * spec.n2 * spec.n3;
  for (auto& e : entries_) e.reserve(total);
  weights_.reserve(total);
  const double w12 = 1.0 / static_cast<double>(spec.n1) /
                     static_cast<double>(spec.n2);
  for (std::size_t i1 = 0; i1 < spec.n1; ++i1) {
    const double a1 = kTwoPi * static_cast<double>(i1) /
                      static_cast<double>(spec.n1);
    for (std::size_t i2 = 0; i2 < spec.n2; ++i2) {
      const double a2 = kTwoPi * static_cast<double>(i2) /
                        static_cast<double>(spec.n2);
      for (std::size_t i3 = 0; i3 < spec.n3; ++i3) {
        const double c = gauss.nodes[i3];
        const double a3 = std::acos(std::clamp(c, -1.0, 1.0));
        const Mat3 rot = euler_rotation(spec.convention, a1, a2, a3);
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) entries_[3 * i + j].push_back(rot(i, j));
        }
        // Haar measure in (a1, a2, cos a3): da1 da2 dc / (8 pi^2); the
        // trapezoid weights 2pi/n fold with 1/(8 pi^2) into w12 * w_c / 2.
        weights_.push_back(w12 * gauss.weights[i3] * 0.5);
      }
    }
  }
}

Mat3 RotationGrid3D::rotation(std::size_t k) const {
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = entries_[3 * i + j][k];
  }
  return m;
}

kernels::Rot3View RotationGrid3D::view() const {
  kernels::Rot3View v;
  for (int e = 0; e < 9; ++e) v.r[e] = entries_[e].data();
  return v;
}

// ---------------------------------------------------------------------------
// Rotated-field factories

Field2DPtr rotate_field(Field2DPtr base, double angle) {
  return std::make_shared<RotatedField2D>(std::move(base), angle);
}

Field3DPtr rotate_field(Field3DPtr base, const Mat3& rot) {
  return std::make_shared<RotatedField3D>(std::move(base), rot);
}

// ---------------------------------------------------------------------------
// Point averages

Vec2 average_at(const Field2D& field, Vec2 p, const RotationGrid2D& grid) {
  const std::size_t n = grid.size();
  std::vector<double> xr(n), yr(n), vx(n), vy(n);
  kernels::rotate_points_2d(grid.cosines(), grid.negated_sines(), n, p.x, p.y,
                            xr.data(), yr.data());
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 v = field.value({xr[k], yr[k]});
    vx[k] = v.x;
    vy[k] = v.y;
  }
  double out[2];
  kernels::weighted_rotate_sum_2d(grid.cosines(), grid.sines(), grid.weights(),
                                  vx.data(), vy.data(), n, out);
  return {out[0], out[1]};
}

Vec3 average_at(const Field3D& field, Vec3 p, const RotationGrid3D& grid) {
  const std::size_t n = grid.size();
  std::vector<double> xr(n), yr(n), zr(n), vx(n), vy(n), vz(n);
  kernels::rotate_points_3d(grid.view(), /*transpose=*/true, n, p.x, p.y, p.z,
                            xr.data(), yr.data(), zr.data());
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 v = field.value({xr[k], yr[k], zr[k]});
    vx[k] = v.x;
    vy[k] = v.y;
    vz[k] = v.z;
  }
  double out[3];
  kernels::weighted_rotate_sum_3d(grid.view(), grid.weights(), vx.data(),
                                  vy.data(), vz.data(), n, out);
  return {out[0], out[1], out[2]};
}

// ---------------------------------------------------------------------------
// On-demand averaged fields

namespace {

class AveragedField2D final : public Field2D {
 public:
  AveragedField2D(Field2DPtr base, const RotationSpec2D& spec)
      : base_(std::move(base)), grid_(spec) {
    if (!base_) throw std::invalid_argument("averaged_field_2d: null field");
  }

  Vec2 value(Vec2 p) const override { return average_at(*base_, p, grid_); }

  Mat2 jacobian(Vec2 p) const override {
    Mat2 acc;
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      const double c = grid_.cosines()[k], s = grid_.sines()[k];
      const Vec2 q = {c * p.x + s * p.y, -s * p.x + c * p.y};  // R^T p
      const Mat2 j = base_->jacobian(q);
      Mat2 rj;  // R * J * R^T
      rj(0, 0) = c * (c * j(0, 0) - s * j(1, 0)) - s * (c * j(0, 1) - s * j(1, 1));
      rj(0, 1) = s * (c * j(0, 0) - s * j(1, 0)) + c * (c * j(0, 1) - s * j(1, 1));
      rj(1, 0) = c * (s * j(0, 0) + c * j(1, 0)) - s * (s * j(0, 1) + c * j(1, 1));
      rj(1, 1) = s * (s * j(0, 0) + c * j(1, 0)) + c * (s * j(0, 1) + c * j(1, 1));
      acc = acc + rj * grid_.weight(k);
    }
    return acc;
  }

  bool has_analytic_derivatives() const override {
    return base_->has_analytic_derivatives();
  }

 private:
  Field2DPtr base_;
  RotationGrid2D grid_;
};

class AveragedField3D final : public Field3D {
 public:
  AveragedField3D(Field3DPtr base, const RotationSpec3D& spec)
      : base_(std::move(base)), grid_(spec) {
    if (!base_) throw std::invalid_argument("averaged_field_3d: null field");
  }

  Vec3 value(Vec3 p) const override { return average_at(*base_, p, grid_); }

  Mat3 jacobian(Vec3 p) const override {
    Mat3 acc;
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      const Mat3 rot = grid_.rotation(k);
      const Vec3 q = rot.transpose() * p;
      acc = acc + (rot * base_->jacobian(q) * rot.transpose()) * grid_.weight(k);
    }
    return acc;
  }

  bool has_analytic_derivatives() const override {
    return base_->has_analytic_derivatives();
  }

 private:
  Field3DPtr base_;
  RotationGrid3D grid_;
};

}  // namespace

Field2DPtr averaged_field_2d(Field2DPtr field, const RotationSpec2D& spec) {
  return std::make_shared<AveragedField2D>(std::move(field), spec);
}

Field3DPtr averaged_field_3d(Field3DPtr field, const RotationSpec3D& spec) {
  return std::make_shared<AveragedField3D>(std::move(field), spec);
}

// ---------------------------------------------------------------------------
// Materialized averages

SampledField2DPtr average_2d(const SampledField2D& field,
                             const RotationSpec2D& spec) {
  const RotationGrid2D grid(spec);
  const std::size_t n = grid.size();
  const std::size_t nr = field.nr(), ntheta = field.ntheta();
  std::vector<double> ux(nr * ntheta), uy(nr * ntheta);
  std::vector<double> vx(n), vy(n);
  for (std::size_t i = 0; i < nr; ++i) {
    const double r = field.node_r(i);
    for (std::size_t j = 0; j < ntheta; ++j) {
      const double theta = field.node_theta(j);
      // R(angle)^T maps the node to polar angle theta - angle on the same
      // radius, so the evaluation stays on one radial line.
      for (std::size_t k = 0; k < n; ++k) {
        const Vec2 v = field.value_polar(r, theta - grid.angle(k));
        vx[k] = v.x;
        vy[k] = v.y;
      }
      double out[2];
      kernels::weighted_rotate_sum_2d(grid.cosines(), grid.sines(),
                                      grid.weights(), vx.data(), vy.data(), n,
                                      out);
      ux[i * ntheta + j] = out[0];
      uy[i * ntheta + j] = out[1];
    }
  }
  return std::make_shared<SampledField2D>(field.geometry(), nr, ntheta,
                                          std::move(ux), std::move(uy));
}

SampledField3DPtr average_3d(const SampledField3D& field,
                             const RotationSpec3D& spec) {
  const RotationGrid3D grid(spec);
  const std::size_t n = grid.size();
  const std::size_t nr = field.nr(), nchi = field.nchi(),
                    ntheta = field.ntheta();
  const std::size_t total = nr * nchi * ntheta;
  std::vector<double> ux(total), uy(total), uz(total);
  std::vector<double> xr(n), yr(n), zr(n), vx(n), vy(n), vz(n);
  for (std::size_t i = 0; i < nr; ++i) {
    const double r = field.node_r(i);
    for (std::size_t a = 0; a < nchi; ++a) {
      const double chi = field.node_chi(a);
      const double sc = std::sin(chi), cc = std::cos(chi);
      for (std::size_t j = 0; j < ntheta; ++j) {
        const double theta = field.node_theta(j);
        const Vec3 p = {r * sc * std::cos(theta), r * sc * std::sin(theta),
                        r * cc};
        kernels::rotate_points_3d(grid.view(), /*transpose=*/true, n, p.x, p.y,
                                  p.z, xr.data(), yr.data(), zr.data());
        for (std::size_t k = 0; k < n; ++k) {
          const Vec3 v = field.value({xr[k], yr[k], zr[k]});
          vx[k] = v.x;
          vy[k] = v.y;
          vz[k] = v.z;
        }
        double out[3];
        kernels::weighted_rotate_sum_3d(grid.view(), grid.weights(), vx.data(),
                                        vy.data(), vz.data(), n, out);
        const std::size_t idx = (i * nchi + a) * ntheta + j;
        ux[idx] = out[0];
        uy[idx] = out[1];
        uz[idx] = out[2];
      }
    }
  }
  return std::make_shared<SampledField3D>(field.geometry(), nr, nchi, ntheta,
                                          std::move(ux), std::move(uy),
                                          std::move(uz));
}

}  // namespace eccert
