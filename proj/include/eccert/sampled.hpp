#pragma once

/// Velocity fields stored as Cartesian component samples on structured
/// polar / spherical grids, with smooth interpolation: degree-4 local
/// Lagrange polynomials in the bounded coordinates (r, and chi in 3-D) whose
/// node derivatives reduce to 4th-order central differences, and exact
/// trigonometric (spectral) interpolation in the periodic angle.
///
/// Text file format: header `polar-grid R1 R2 Nr Ntheta` or
/// `spherical-grid R1 R2 Nr Nchi Ntheta`, followed by one line per node:
/// coordinates then Cartesian components, whitespace-separated, 17
/// significant digits.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "eccert/fields2d.hpp"
#include "eccert/fields3d.hpp"
#include "eccert/geometry.hpp"
#include "eccert/profile.hpp"

namespace eccert {

namespace detail {
/// Real trigonometric interpolant through n uniform samples on [0, 2pi).
struct TrigSeries {
  std::vector<double> a;  // cosine coefficients, a[0..m]
  std::vector<double> b;  // sine coefficients, b[0..m] (b[0] unused = 0)

  static TrigSeries fit(const double* samples, std::size_t n);
  double eval(double theta) const;
  double eval_derivative(double theta) const;
};
}  // namespace detail

/// Planar field sampled on r_i = R1 + i (R2-R1)/(Nr-1), i = 0..Nr-1, and
/// theta_j = 2 pi j / Ntheta, j = 0..Ntheta-1 (periodic, no duplicate
/// endpoint). Sample arrays are row-major: index i*Ntheta + j.
class SampledField2D final : public Field2D {
 public:
  /// Requires nr >= 5, ntheta >= 4, and sample arrays of size nr*ntheta.
  SampledField2D(AnnulusGeometry geom, std::size_t nr, std::size_t ntheta,
                 std::vector<double> ux, std::vector<double> uy);

  /// Samples an arbitrary field onto the grid.
  static std::shared_ptr<const SampledField2D> sample(const Field2D& src,
                                                      const AnnulusGeometry& geom,
                                                      std::size_t nr,
                                                      std::size_t ntheta);

  const AnnulusGeometry& geometry() const { return geom_; }
  std::size_t nr() const { return nr_; }
  std::size_t ntheta() const { return ntheta_; }
  double node_r(std::size_t i) const;
  double node_theta(std::size_t j) const;
  const std::vector<double>& samples_x() const { return ux_; }
  const std::vector<double>& samples_y() const { return uy_; }

  /// Cartesian components of the interpolant at polar coordinates (r, theta);
  /// r slightly outside [R1, R2] extrapolates smoothly.
  Vec2 value_polar(double r, double theta) const;

  Vec2 value(Vec2 p) const override;
  Mat2 jacobian(Vec2 p) const override;
  bool has_analytic_derivatives() const override { return true; }

 private:
  struct Eval2;
  Eval2 evaluate(double r, double theta, bool derivatives) const;

  AnnulusGeometry geom_;
  std::size_t nr_, ntheta_;
  std::vector<double> ux_, uy_;
  // Trig series per component per radial line.
  std::vector<detail::TrigSeries> series_x_, series_y_;
};

using SampledField2DPtr = std::shared_ptr<const SampledField2D>;

/// Spatial field sampled on r_i as above, chi_a = pi a / (Nchi-1),
/// a = 0..Nchi-1 (poles included), theta_j = 2 pi j / Ntheta (periodic).
/// Sample arrays are row-major: index (i*Nchi + a)*Ntheta + j.
class SampledField3D final : public Field3D {
 public:
  /// Requires nr >= 5, nchi >= 5, ntheta >= 4, arrays of size nr*nchi*ntheta.
  SampledField3D(ShellGeometry geom, std::size_t nr, std::size_t nchi,
                 std::size_t ntheta, std::vector<double> ux,
                 std::vector<double> uy, std::vector<double> uz);

  static std::shared_ptr<const SampledField3D> sample(const Field3D& src,
                                                      const ShellGeometry& geom,
                                                      std::size_t nr,
                                                      std::size_t nchi,
                                                      std::size_t ntheta);

  const ShellGeometry& geometry() const { return geom_; }
  std::size_t nr() const { return nr_; }
  std::size_t nchi() const { return nchi_; }
  std::size_t ntheta() const { return ntheta_; }
  double node_r(std::size_t i) const;
  double node_chi(std::size_t a) const;
  double node_theta(std::size_t j) const;
  const std::vector<double>& samples_x() const { return ux_; }
  const std::vector<double>& samples_y() const { return uy_; }
  const std::vector<double>& samples_z() const { return uz_; }

  Vec3 value_spherical(double r, double chi, double theta) const;

  Vec3 value(Vec3 p) const override;
  Mat3 jacobian(Vec3 p) const override;
  bool has_analytic_derivatives() const override { return true; }

 private:
  struct Eval3;
  Eval3 evaluate(double r, double chi, double theta, bool derivatives) const;

  ShellGeometry geom_;
  std::size_t nr_, nchi_, ntheta_;
  std::vector<double> ux_, uy_, uz_;
  std::vector<detail::TrigSeries> series_x_, series_y_, series_z_;
};

using SampledField3DPtr = std::shared_ptr<const SampledField3D>;

/// Writes the field to a text file (atomically: temp file + rename).
void write_field_file(const std::string& path, const SampledField2D& field);
void write_field_file(const std::string& path, const SampledField3D& field);

/// Result of reading a field file: exactly one pointer is non-null.
struct LoadedField {
  SampledField2DPtr field2d;
  SampledField3DPtr field3d;
};

/// Parses a field file. Throws std::runtime_error on unreadable paths,
/// malformed headers, node-count mismatches, or off-grid coordinates.
LoadedField read_field_file(const std::string& path);

/// Flux carrier Phi/(2 pi r) e_r plus the solenoidal perturbation derived
/// from the stream function psi = a(r) cos(k theta) + b(r) sin(k theta),
/// sampled on an nr x ntheta grid. The perturbation adds no net flux, so the
/// result carries flux Phi through every concentric circle.
SampledField2DPtr synthetic_extension_2d(const AnnulusGeometry& geom, double phi,
                                         const ScalarProfile& a,
                                         const ScalarProfile& b, int k = 3,
                                         std::size_t nr = 257,
                                         std::size_t ntheta = 128);

}  // namespace eccert
