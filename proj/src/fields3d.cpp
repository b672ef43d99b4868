#include "eccert/fields3d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fd_util.hpp"

namespace eccert {

using detail::fd4;
using detail::fd4_bounded;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double fd_step_for(double scale) { return 1e-4 * std::max(1.0, scale); }

double max_abs_on_radius(const ScalarProfile& f, double r1, double r2) {
  double m = 0.0;
  constexpr int kSamples = 256;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = r1 + (r2 - r1) * i / kSamples;
    m = std::max(m, std::abs(f(r)));
  }
  return m;
}

double det3(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

struct Frame {
  Vec3 er, echi, etheta;
  double sin_chi, cos_chi;
};

Frame frame_at(double chi, double theta) {
  const double sc = std::sin(chi), cc = std::cos(chi);
  const double st = std::sin(theta), ct = std::cos(theta);
  Frame f;
  f.er = {sc * ct, sc * st, cc};
  f.echi = {cc * ct, cc * st, -sc};
  f.etheta = {-st, ct, 0.0};
  f.sin_chi = sc;
  f.cos_chi = cc;
  return f;
}

}  // namespace

Mat3 Field3D::jacobian(Vec3 p) const {
  const double h =
      fd_step_for(std::max({std::abs(p.x), std::abs(p.y), std::abs(p.z)}));
  Mat3 j;
  for (int axis = 0; axis < 3; ++axis) {
    const auto slice = [&](double t) {
      Vec3 q = p;
      (axis == 0 ? q.x : axis == 1 ? q.y : q.z) = t;
      return value(q);
    };
    const double t0 = axis == 0 ? p.x : axis == 1 ? p.y : p.z;
    const Vec3 d = {fd4([&](double t) { return slice(t).x; }, t0, h),
                    fd4([&](double t) { return slice(t).y; }, t0, h),
                    fd4([&](double t) { return slice(t).z; }, t0, h)};
    j(0, axis) = d.x;
    j(1, axis) = d.y;
    j(2, axis) = d.z;
  }
  return j;
}

SphericalJet SphericalField::spherical_jet(double r, double chi,
                                           double theta) const {
  const ShellGeometry& g = geometry();
  const double hr = 1e-3 * (g.r2 - g.r1);
  const double ha = 1e-3 * kPi;

  SphericalJet jet;
  const SphericalComponents c = spherical(r, chi, theta);
  jet.ur = c.ur;
  jet.uchi = c.uchi;
  jet.utheta = c.utheta;

  const auto dr = [&](auto member) {
    return fd4_bounded([&](double t) { return member(spherical(t, chi, theta)); },
                       r, hr, g.r1, g.r2);
  };
  const auto dchi = [&](auto member) {
    return fd4_bounded([&](double t) { return member(spherical(r, t, theta)); },
                       chi, ha, 0.0, kPi);
  };
  const auto dtheta = [&](auto member) {
    return fd4([&](double t) { return member(spherical(r, chi, t)); }, theta, ha);
  };
  const auto get_ur = [](const SphericalComponents& s) { return s.ur; };
  const auto get_uchi = [](const SphericalComponents& s) { return s.uchi; };
  const auto get_utheta = [](const SphericalComponents& s) { return s.utheta; };

  jet.dur_dr = dr(get_ur);
  jet.duchi_dr = dr(get_uchi);
  jet.dutheta_dr = dr(get_utheta);
  jet.dur_dchi = dchi(get_ur);
  jet.duchi_dchi = dchi(get_uchi);
  jet.dutheta_dchi = dchi(get_utheta);
  jet.dur_dtheta = dtheta(get_ur);
  jet.duchi_dtheta = dtheta(get_uchi);
  jet.dutheta_dtheta = dtheta(get_utheta);
  return jet;
}

Vec3 SphericalField::value(Vec3 p) const {
  const double r = p.norm();
  const double chi = std::acos(std::clamp(p.z / r, -1.0, 1.0));
  const double theta = std::atan2(p.y, p.x);
  const SphericalComponents c = spherical(r, chi, theta);
  const Frame f = frame_at(chi, theta);
  return c.ur * f.er + c.uchi * f.echi + c.utheta * f.etheta;
}

Mat3 SphericalField::jacobian(Vec3 p) const {
  const double r = p.norm();
  const double chi = std::acos(std::clamp(p.z / r, -1.0, 1.0));
  const double theta = std::atan2(p.y, p.x);
  const SphericalJet jet = spherical_jet(r, chi, theta);
  const Frame f = frame_at(chi, theta);

  // Cartesian components of the partial derivatives of u along the
  // coordinate directions; the frame derivatives are
  // d e_r/d chi = e_chi, d e_chi/d chi = -e_r, d e_theta/d chi = 0,
  // d e_r/d theta = sin(chi) e_theta, d e_chi/d theta = cos(chi) e_theta,
  // d e_theta/d theta = -(sin(chi) e_r + cos(chi) e_chi).
  const Vec3 du_dr =
      jet.dur_dr * f.er + jet.duchi_dr * f.echi + jet.dutheta_dr * f.etheta;
  const Vec3 du_dchi = (jet.dur_dchi - jet.uchi) * f.er +
                       (jet.duchi_dchi + jet.ur) * f.echi +
                       jet.dutheta_dchi * f.etheta;
  const Vec3 du_dtheta =
      (jet.dur_dtheta - jet.utheta * f.sin_chi) * f.er +
      (jet.duchi_dtheta - jet.utheta * f.cos_chi) * f.echi +
      (jet.dutheta_dtheta + jet.ur * f.sin_chi + jet.uchi * f.cos_chi) *
          f.etheta;

  Mat3 j;
  const double inv_r = 1.0 / r;
  const double inv_rs = 1.0 / (r * f.sin_chi);
  const double dr_comp[3] = {du_dr.x, du_dr.y, du_dr.z};
  const double dchi_comp[3] = {du_dchi.x, du_dchi.y, du_dchi.z};
  const double dtheta_comp[3] = {du_dtheta.x, du_dtheta.y, du_dtheta.z};
  const double er[3] = {f.er.x, f.er.y, f.er.z};
  const double echi[3] = {f.echi.x, f.echi.y, f.echi.z};
  const double etheta[3] = {f.etheta.x, f.etheta.y, f.etheta.z};
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      j(i, k) = dr_comp[i] * er[k] + inv_r * dchi_comp[i] * echi[k] +
                inv_rs * dtheta_comp[i] * etheta[k];
    }
  }
  return j;
}

double SphericalField::divergence_spherical(double r, double chi,
                                            double theta) const {
  const SphericalJet jet = spherical_jet(r, chi, theta);
  const double sc = std::sin(chi), cc = std::cos(chi);
  return (jet.dur_dr + 2.0 * (jet.ur / r)) +
         (jet.duchi_dchi + jet.uchi * (cc / sc)) / r +
         jet.dutheta_dtheta / (r * sc);
}

// ---------------------------------------------------------------------------
// ModeField3D

ModeField3D::ModeField3D(ShellGeometry geom, int m) : SphericalField(geom), m_(m) {
  if (m < 1) throw std::invalid_argument("ModeField3D: mode m must be >= 1");
}

SphericalComponents ModeField3D::spherical(double r, double chi,
                                           double theta) const {
  const ShellGeometry& g = geometry();
  const double len = g.r2 - g.r1;
  const double s = (r - g.r1) / len;
  const double u = (len / kTwoPi) * (std::cos(kTwoPi * s) - 1.0) / r;
  const double w = std::sin(kTwoPi * s);
  const double ut = u / r;  // Utilde = U/r
  const double sc = std::sin(chi);
  SphericalComponents out;
  out.ur = m_ * ut * std::cos(m_ * theta) * sc;
  out.uchi = 0.0;
  out.utheta = (w / r) * std::sin(m_ * theta) * sc * sc;
  return out;
}

SphericalJet ModeField3D::spherical_jet(double r, double chi,
                                        double theta) const {
  const ShellGeometry& g = geometry();
  const double len = g.r2 - g.r1;
  const double s = (r - g.r1) / len;
  const double u = (len / kTwoPi) * (std::cos(kTwoPi * s) - 1.0) / r;
  const double w = std::sin(kTwoPi * s);
  const double dw = (kTwoPi / len) * std::cos(kTwoPi * s);
  const double ut = u / r;
  // Utilde' = U'/r - U/r^2 with U' = -(U+W)/r, so Utilde' = -(2U + W)/r^2.
  const double dut = -(2.0 * u + w) / (r * r);
  const double sc = std::sin(chi), cc = std::cos(chi);
  const double cm = std::cos(m_ * theta), sm = std::sin(m_ * theta);
  SphericalJet jet;
  jet.ur = m_ * ut * cm * sc;
  jet.uchi = 0.0;
  jet.utheta = (w / r) * sm * sc * sc;
  jet.dur_dr = m_ * dut * cm * sc;
  jet.dur_dchi = m_ * ut * cm * cc;
  jet.dur_dtheta = -static_cast<double>(m_) * m_ * ut * sm * sc;
  jet.dutheta_dr = (dw / r - w / (r * r)) * sm * sc * sc;
  jet.dutheta_dchi = (w / r) * sm * 2.0 * sc * cc;
  jet.dutheta_dtheta = m_ * (w / r) * cm * sc * sc;
  return jet;
}

// ---------------------------------------------------------------------------
// SwirlField3D

SwirlField3D::SwirlField3D(ShellGeometry geom, ScalarProfile f)
    : SphericalField(geom), f_(std::move(f)) {
  const ShellGeometry& g = geometry();
  const double scale = max_abs_on_radius(f_, g.r1, g.r2);
  const double tol = 1e-10 * scale;
  if (std::abs(f_(g.r1)) > tol || std::abs(f_(g.r2)) > tol) {
    throw std::invalid_argument(
        "SwirlField3D: profile must vanish on both boundary radii");
  }
}

SphericalComponents SwirlField3D::spherical(double r, double chi,
                                            double /*theta*/) const {
  return {0.0, 0.0, f_(r) * std::sin(chi)};
}

SphericalJet SwirlField3D::spherical_jet(double r, double chi,
                                         double /*theta*/) const {
  SphericalJet jet;
  const double sc = std::sin(chi);
  jet.utheta = f_(r) * sc;
  jet.dutheta_dr = f_.derivative(r) * sc;
  jet.dutheta_dchi = f_(r) * std::cos(chi);
  return jet;
}

// ---------------------------------------------------------------------------
// RadialExtension3D

RadialExtension3D::RadialExtension3D(ShellGeometry geom, double phi)
    : SphericalField(geom), phi_(phi) {}

SphericalComponents RadialExtension3D::spherical(double r, double /*chi*/,
                                                 double /*theta*/) const {
  return {phi_ / (4.0 * kPi * r * r), 0.0, 0.0};
}

SphericalJet RadialExtension3D::spherical_jet(double r, double /*chi*/,
                                              double /*theta*/) const {
  SphericalJet jet;
  jet.ur = phi_ / (4.0 * kPi * r * r);
  // Written as -2 (u_r/r) so the coordinate divergence cancels exactly.
  jet.dur_dr = -2.0 * (jet.ur / r);
  return jet;
}

// ---------------------------------------------------------------------------
// PerturbedExtension3D

PerturbedExtension3D::PerturbedExtension3D(ShellGeometry geom, double phi,
                                           ScalarProfile h, ScalarProfile g)
    : geom_(geom), phi_(phi), h_(std::move(h)), g_(std::move(g)) {}

Vec3 PerturbedExtension3D::value(Vec3 p) const {
  const double r = p.norm();
  const double radial = phi_ / (4.0 * kPi * r * r * r);
  const double h = h_(r), dh = h_.derivative(r);
  const double g = g_(r), dg = g_.derivative(r);
  // curl(g(r) y, 0, h(r) x) done by hand:
  const Vec3 curl = {dh * p.x * p.y / r,
                     dg * p.y * p.z / r - dh * p.x * p.x / r - h,
                     -dg * p.y * p.y / r - g};
  return radial * p + curl;
}

// ---------------------------------------------------------------------------
// RotatedField3D

RotatedField3D::RotatedField3D(Field3DPtr base, const Mat3& rot)
    : base_(std::move(base)), rot_(rot) {
  if (!base_) throw std::invalid_argument("RotatedField3D: null base field");
  const Mat3 should_be_identity = rot_.transpose() * rot_;
  if ((should_be_identity - Mat3::identity()).max_abs() > 1e-12 ||
      std::abs(det3(rot_) - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "RotatedField3D: matrix must be orthogonal with determinant +1");
  }
}

Vec3 RotatedField3D::value(Vec3 p) const {
  const Vec3 q = rot_.transpose() * p;
  return rot_ * base_->value(q);
}

Mat3 RotatedField3D::jacobian(Vec3 p) const {
  const Vec3 q = rot_.transpose() * p;
  return rot_ * base_->jacobian(q) * rot_.transpose();
}

bool RotatedField3D::has_analytic_derivatives() const {
  return base_->has_analytic_derivatives();
}

// ---------------------------------------------------------------------------
// FieldSum3D

FieldSum3D::FieldSum3D(std::vector<std::pair<double, Field3DPtr>> terms)
    : terms_(std::move(terms)) {
  for (const auto& [coeff, field] : terms_) {
    (void)coeff;
    if (!field) throw std::invalid_argument("FieldSum3D: null term");
  }
}

Vec3 FieldSum3D::value(Vec3 p) const {
  Vec3 acc;
  for (const auto& [coeff, field] : terms_) acc += coeff * field->value(p);
  return acc;
}

Mat3 FieldSum3D::jacobian(Vec3 p) const {
  Mat3 acc;
  for (const auto& [coeff, field] : terms_) acc = acc + field->jacobian(p) * coeff;
  return acc;
}

bool FieldSum3D::has_analytic_derivatives() const {
  for (const auto& [coeff, field] : terms_) {
    (void)coeff;
    if (!field->has_analytic_derivatives()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

SphericalComponents spherical_components_of(const Field3D& field, double r,
                                            double chi, double theta) {
  const Frame f = frame_at(chi, theta);
  const Vec3 p = r * f.er;
  const Vec3 v = field.value(p);
  return {v.dot(f.er), v.dot(f.echi), v.dot(f.etheta)};
}

SphericalFieldPtr test_field_3d(const ShellGeometry& geom, int m) {
  return std::make_shared<ModeField3D>(geom, m);
}

SphericalFieldPtr inflow_field_3d(const ShellGeometry& geom,
                                  const ScalarProfile& f) {
  return std::make_shared<SwirlField3D>(geom, f);
}

SphericalFieldPtr averaged_extension_3d(const ShellGeometry& geom, double phi) {
  return std::make_shared<RadialExtension3D>(geom, phi);
}

Field3DPtr perturbed_extension_3d(const ShellGeometry& geom, double phi,
                                  const ScalarProfile& h,
                                  const ScalarProfile& g) {
  return std::make_shared<PerturbedExtension3D>(geom, phi, h, g);
}

}  // namespace eccert
