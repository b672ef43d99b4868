#include "eccert/calculus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "eccert/kernels.hpp"
#include "eccert/quadrature.hpp"

namespace eccert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_interior(double r, double r1, double r2) {
  if (!(r > r1 && r < r2)) {
    throw std::domain_error(
        "point with radius " + std::to_string(r) +
        " is not strictly inside the domain (" + std::to_string(r1) + ", " +
        std::to_string(r2) + ")");
  }
}

/// Tensor quadrature nodes for annulus integrals: Gauss in r, trapezoid in
/// theta, combined weights including the area element r dr dtheta.
struct Grid2D {
  std::vector<double> r, theta;  // per-node polar coordinates
  std::vector<Vec2> pts;
  std::vector<double> w;
};

Grid2D make_grid_2d(const AnnulusGeometry& g, const QuadratureSpec& q) {
  const QuadratureRule rr = gauss_legendre(q.nodes_r, g.r1, g.r2);
  const std::size_t nt = q.nodes_theta;
  const double wt = kTwoPi / static_cast<double>(nt);
  Grid2D grid;
  const std::size_t total = q.nodes_r * nt;
  grid.r.reserve(total);
  grid.theta.reserve(total);
  grid.pts.reserve(total);
  grid.w.reserve(total);
  for (std::size_t i = 0; i < q.nodes_r; ++i) {
    const double r = rr.nodes[i];
    for (std::size_t j = 0; j < nt; ++j) {
      const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(nt);
      grid.r.push_back(r);
      grid.theta.push_back(theta);
      grid.pts.push_back({r * std::cos(theta), r * std::sin(theta)});
      grid.w.push_back(rr.weights[i] * wt * r);
    }
  }
  return grid;
}

/// Shell integrals: Gauss in r, Gauss in cos(chi) (absorbing the sin(chi)
/// factor), trapezoid in theta; weights include r^2 dr dc dtheta.
struct Grid3D {
  std::vector<double> r, chi, theta;
  std::vector<Vec3> pts;
  std::vector<double> w;
};

Grid3D make_grid_3d(const ShellGeometry& g, const QuadratureSpec& q) {
  const QuadratureRule rr = gauss_legendre(q.nodes_r, g.r1, g.r2);
  const QuadratureRule rc = gauss_legendre(q.nodes_chi, -1.0, 1.0);
  const std::size_t nt = q.nodes_theta;
  const double wt = kTwoPi / static_cast<double>(nt);
  Grid3D grid;
  const std::size_t total = q.nodes_r * q.nodes_chi * nt;
  grid.r.reserve(total);
  grid.chi.reserve(total);
  grid.theta.reserve(total);
  grid.pts.reserve(total);
  grid.w.reserve(total);
  for (std::size_t i = 0; i < q.nodes_r; ++i) {
    const double r = rr.nodes[i];
    for (std::size_t a = 0; a < q.nodes_chi; ++a) {
      const double c = rc.nodes[a];
      const double chi = std::acos(std::clamp(c, -1.0, 1.0));
      const double sc = std::sin(chi);
      for (std::size_t j = 0; j < nt; ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(nt);
        grid.r.push_back(r);
        grid.chi.push_back(chi);
        grid.theta.push_back(theta);
        grid.pts.push_back(
            {r * sc * std::cos(theta), r * sc * std::sin(theta), r * c});
        grid.w.push_back(rr.weights[i] * rc.weights[a] * wt * r * r);
      }
    }
  }
  return grid;
}

double field_scale_2d(const Field2D& u, const AnnulusGeometry& g) {
  double scale = 0.0;
  for (int ri = 1; ri <= 3; ++ri) {
    const double r = g.r1 + (g.r2 - g.r1) * static_cast<double>(ri) / 4.0;
    for (int j = 0; j < 64; ++j) {
      const double theta = kTwoPi * j / 64.0;
      const Vec2 v = u.value({r * std::cos(theta), r * std::sin(theta)});
      scale = std::max(scale, std::hypot(v.x, v.y));
    }
  }
  return scale;
}

void require_boundary_vanishing(const Field2D& u, const AnnulusGeometry& g,
                                const char* op) {
  const double tol = 1e-8 * field_scale_2d(u, g);
  for (const double r : {g.r1, g.r2}) {
    for (int j = 0; j < 64; ++j) {
      const double theta = kTwoPi * j / 64.0;
      const Vec2 v = u.value({r * std::cos(theta), r * std::sin(theta)});
      if (std::hypot(v.x, v.y) > tol) {
        throw std::invalid_argument(
            std::string(op) +
            ": field does not vanish on the boundary circles");
      }
    }
  }
}

double field_scale_3d(const Field3D& u, const ShellGeometry& g) {
  double scale = 0.0;
  for (int ri = 1; ri <= 3; ++ri) {
    const double r = g.r1 + (g.r2 - g.r1) * static_cast<double>(ri) / 4.0;
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

void require_boundary_vanishing(const Field3D& u, const ShellGeometry& g,
                                const char* op) {
  const double tol = 1e-8 * field_scale_3d(u, g);
  for (const double r : {g.r1, g.r2}) {
    for (int a = 0; a < 8; ++a) {
      const double chi = kPi * (a + 0.5) / 8.0;
      for (int j = 0; j < 8; ++j) {
        const double theta = kTwoPi * j / 8.0;
        const Vec3 v = u.value({r * std::sin(chi) * std::cos(theta),
                                r * std::sin(chi) * std::sin(theta),
                                r * std::cos(chi)});
        if (v.norm() > tol) {
          throw std::invalid_argument(
              std::string(op) +
              ": field does not vanish on the boundary spheres");
        }
      }
    }
  }
}

}  // namespace

void QuadratureSpec::validate() const {
  if (nodes_r < 8 || nodes_theta < 8 || nodes_chi < 8) {
    throw std::invalid_argument(
        "QuadratureSpec: node counts must be at least 8");
  }
}

// ---------------------------------------------------------------------------
// Pointwise operators

double divergence(const Field2D& field, Vec2 p, const AnnulusGeometry& geom) {
  const double r = p.norm();
  require_interior(r, geom.r1, geom.r2);
  if (const auto* pf = dynamic_cast<const PolarField*>(&field)) {
    return pf->divergence_polar(r, std::atan2(p.y, p.x));
  }
  const Mat2 j = field.jacobian(p);
  return j.trace();
}

double divergence(const Field3D& field, Vec3 p, const ShellGeometry& geom) {
  const double r = p.norm();
  require_interior(r, geom.r1, geom.r2);
  if (const auto* sf = dynamic_cast<const SphericalField*>(&field)) {
    const double chi = std::acos(std::clamp(p.z / r, -1.0, 1.0));
    return sf->divergence_spherical(r, chi, std::atan2(p.y, p.x));
  }
  const Mat3 j = field.jacobian(p);
  return j.trace();
}

Mat2 symmetric_gradient(const Field2D& field, Vec2 p,
                        const AnnulusGeometry& geom) {
  require_interior(p.norm(), geom.r1, geom.r2);
  const Mat2 j = field.jacobian(p);
  Mat2 d;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) d(i, k) = 0.5 * (j(i, k) + j(k, i));
  }
  return d;
}

Mat3 symmetric_gradient(const Field3D& field, Vec3 p,
                        const ShellGeometry& geom) {
  require_interior(p.norm(), geom.r1, geom.r2);
  const Mat3 j = field.jacobian(p);
  Mat3 d;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) d(i, k) = 0.5 * (j(i, k) + j(k, i));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Quadratic forms

namespace {

double quadratic_form_impl_2d(const Field2D& V, const Field2D& u,
                              const AnnulusGeometry& geom,
                              const QuadratureSpec& q, bool symmetrize,
                              const char* op) {
  q.validate();
  require_boundary_vanishing(u, geom, op);
  const Grid2D grid = make_grid_2d(geom, q);
  std::vector<double> integrand(grid.w.size());
  for (std::size_t k = 0; k < grid.pts.size(); ++k) {
    const Vec2 p = grid.pts[k];
    const Vec2 uu = u.value(p);
    Mat2 a = V.jacobian(p);
    if (symmetrize) {
      const double off = 0.5 * (a(0, 1) + a(1, 0));
      a(0, 1) = off;
      a(1, 0) = off;
    }
    // (u . grad) V has components (A u)_i with A(i,k) = dV_i/dx_k.
    const Vec2 w = a * uu;
    integrand[k] = -uu.dot(w);
  }
  return kernels::dot(grid.w.data(), integrand.data(), integrand.size());
}

double quadratic_form_impl_3d(const Field3D& V, const Field3D& u,
                              const ShellGeometry& geom,
                              const QuadratureSpec& q, bool symmetrize,
                              const char* op) {
  q.validate();
  require_boundary_vanishing(u, geom, op);
  const Grid3D grid = make_grid_3d(geom, q);
  std::vector<double> integrand(grid.w.size());
  for (std::size_t k = 0; k < grid.pts.size(); ++k) {
    const Vec3 p = grid.pts[k];
    const Vec3 uu = u.value(p);
    Mat3 a = V.jacobian(p);
    if (symmetrize) {
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          const double off = 0.5 * (a(i, j) + a(j, i));
          a(i, j) = off;
          a(j, i) = off;
        }
      }
    }
    const Vec3 w = a * uu;
    integrand[k] = -uu.dot(w);
  }
  return kernels::dot(grid.w.data(), integrand.data(), integrand.size());
}

}  // namespace

double quadratic_form(const Field2D& V, const Field2D& u,
                      const AnnulusGeometry& geom, const QuadratureSpec& q) {
  return quadratic_form_impl_2d(V, u, geom, q, false, "quadratic_form");
}

double quadratic_form(const Field3D& V, const Field3D& u,
                      const ShellGeometry& geom, const QuadratureSpec& q) {
  return quadratic_form_impl_3d(V, u, geom, q, false, "quadratic_form");
}

double quadratic_form_strain(const Field2D& V, const Field2D& u,
                             const AnnulusGeometry& geom,
                             const QuadratureSpec& q) {
  return quadratic_form_impl_2d(V, u, geom, q, true, "quadratic_form_strain");
}

double quadratic_form_strain(const Field3D& V, const Field3D& u,
                             const ShellGeometry& geom,
                             const QuadratureSpec& q) {
  return quadratic_form_impl_3d(V, u, geom, q, true, "quadratic_form_strain");
}

// ---------------------------------------------------------------------------
// Dirichlet seminorm

double dirichlet_norm_sq(const Field2D& u, const AnnulusGeometry& geom,
                         const QuadratureSpec& q) {
  q.validate();
  const Grid2D grid = make_grid_2d(geom, q);
  std::vector<double> integrand(grid.w.size());
  for (std::size_t k = 0; k < grid.pts.size(); ++k) {
    const Mat2 j = u.jacobian(grid.pts[k]);
    integrand[k] = j.frobenius_dot(j);
  }
  return kernels::dot(grid.w.data(), integrand.data(), integrand.size());
}

double dirichlet_norm_sq(const Field3D& u, const ShellGeometry& geom,
                         const QuadratureSpec& q) {
  q.validate();
  const Grid3D grid = make_grid_3d(geom, q);
  std::vector<double> integrand(grid.w.size());
  for (std::size_t k = 0; k < grid.pts.size(); ++k) {
    const Mat3 j = u.jacobian(grid.pts[k]);
    integrand[k] = j.frobenius_dot(j);
  }
  return kernels::dot(grid.w.data(), integrand.data(), integrand.size());
}

// ---------------------------------------------------------------------------
// Flux

double flux(const Field2D& field, const AnnulusGeometry& geom, double r0) {
  if (!(r0 >= geom.r1 && r0 <= geom.r2)) {
    throw std::invalid_argument("flux: radius outside [R1, R2]");
  }
  constexpr std::size_t kN = 256;
  std::vector<double> integrand(kN);
  for (std::size_t j = 0; j < kN; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / kN;
    const double c = std::cos(theta), s = std::sin(theta);
    const Vec2 v = field.value({r0 * c, r0 * s});
    integrand[j] = (v.x * c + v.y * s) * r0 * (kTwoPi / kN);
  }
  return kernels::sum(integrand.data(), kN);
}

double flux(const Field3D& field, const ShellGeometry& geom, double r0) {
  if (!(r0 >= geom.r1 && r0 <= geom.r2)) {
    throw std::invalid_argument("flux: radius outside [R1, R2]");
  }
  constexpr std::size_t kNc = 64, kNt = 128;
  const QuadratureRule rc = gauss_legendre(kNc, -1.0, 1.0);
  std::vector<double> integrand(kNc * kNt);
  for (std::size_t a = 0; a < kNc; ++a) {
    const double c = rc.nodes[a];
    const double sc = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (std::size_t j = 0; j < kNt; ++j) {
      const double theta = kTwoPi * static_cast<double>(j) / kNt;
      const double ex = sc * std::cos(theta), ey = sc * std::sin(theta),
                   ez = c;
      const Vec3 v = field.value({r0 * ex, r0 * ey, r0 * ez});
      integrand[a * kNt + j] = (v.x * ex + v.y * ey + v.z * ez) * r0 * r0 *
                               rc.weights[a] * (kTwoPi / kNt);
    }
  }
  return kernels::sum(integrand.data(), integrand.size());
}

// ---------------------------------------------------------------------------
// Obstruction functionals

double obstruction_2d(double phi, const ScalarProfile& v, const PolarField& u,
                      const QuadratureSpec& q) {
  q.validate();
  const AnnulusGeometry& geom = u.geometry();
  require_boundary_vanishing(u, geom, "obstruction_2d");
  const Grid2D grid = make_grid_2d(geom, q);
  std::vector<double> anisotropy(grid.w.size());
  std::vector<double> cross(grid.w.size());
  for (std::size_t k = 0; k < grid.w.size(); ++k) {
    const double r = grid.r[k];
    const PolarComponents c = u.polar(r, grid.theta[k]);
    anisotropy[k] = (c.ur * c.ur - c.utheta * c.utheta) / (r * r);
    cross[k] = (v.derivative(r) - v(r) / r) * c.ur * c.utheta;
  }
  const double term1 =
      kernels::dot(grid.w.data(), anisotropy.data(), anisotropy.size());
  const double term2 = kernels::dot(grid.w.data(), cross.data(), cross.size());
  return (phi / kPi) * term1 + term2;
}

double obstruction_3d(double phi, const SphericalField& u,
                      const QuadratureSpec& q) {
  q.validate();
  const ShellGeometry& geom = u.geometry();
  require_boundary_vanishing(u, geom, "obstruction_3d");
  const Grid3D grid = make_grid_3d(geom, q);
  std::vector<double> anisotropy(grid.w.size());
  for (std::size_t k = 0; k < grid.w.size(); ++k) {
    const double r = grid.r[k];
    const SphericalComponents c = u.spherical(r, grid.chi[k], grid.theta[k]);
    anisotropy[k] =
        (2.0 * c.ur * c.ur - c.uchi * c.uchi - c.utheta * c.utheta) /
        (r * r * r);
  }
  const double term =
      kernels::dot(grid.w.data(), anisotropy.data(), anisotropy.size());
  return phi / (4.0 * kPi) * term;
}

}  // namespace eccert
