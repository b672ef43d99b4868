#include "eccert/fields2d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fd_util.hpp"

namespace eccert {

using detail::fd4;
using detail::fd4_bounded;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double fd_step_for(double scale) { return 1e-4 * std::max(1.0, scale); }

/// Largest |f| over a radial sample used to normalize boundary-zero checks.
double max_abs_on_radius(const ScalarProfile& f, double r1, double r2) {
  double m = 0.0;
  constexpr int kSamples = 256;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = r1 + (r2 - r1) * i / kSamples;
    m = std::max(m, std::abs(f(r)));
  }
  return m;
}

void require_boundary_zero(const ScalarProfile& f, double r1, double r2,
                           const char* what) {
  const double scale = max_abs_on_radius(f, r1, r2);
  const double tol = 1e-10 * scale;
  if (std::abs(f(r1)) > tol || std::abs(f(r2)) > tol) {
    throw std::invalid_argument(std::string(what) +
                                ": profile must vanish on both boundary radii");
  }
}

}  // namespace

Mat2 Field2D::jacobian(Vec2 p) const {
  const double h = fd_step_for(std::max(std::abs(p.x), std::abs(p.y)));
  Mat2 j;
  const auto dx = [&](double t) { return value({t, p.y}); };
  const auto dy = [&](double t) { return value({p.x, t}); };
  const Vec2 cx = {fd4([&](double t) { return dx(t).x; }, p.x, h),
                   fd4([&](double t) { return dx(t).y; }, p.x, h)};
  const Vec2 cy = {fd4([&](double t) { return dy(t).x; }, p.y, h),
                   fd4([&](double t) { return dy(t).y; }, p.y, h)};
  j(0, 0) = cx.x;
  j(1, 0) = cx.y;
  j(0, 1) = cy.x;
  j(1, 1) = cy.y;
  return j;
}

PolarJet PolarField::polar_jet(double r, double theta) const {
  const AnnulusGeometry& g = geometry();
  const double hr = 1e-3 * (g.r2 - g.r1);
  const double ht = 1e-3 * std::numbers::pi;

  PolarJet jet;
  const PolarComponents c = polar(r, theta);
  jet.ur = c.ur;
  jet.utheta = c.utheta;
  jet.dur_dr = fd4_bounded([&](double t) { return polar(t, theta).ur; }, r, hr,
                           g.r1, g.r2);
  jet.dutheta_dr = fd4_bounded([&](double t) { return polar(t, theta).utheta; },
                               r, hr, g.r1, g.r2);
  jet.dur_dtheta = fd4([&](double t) { return polar(r, t).ur; }, theta, ht);
  jet.dutheta_dtheta = fd4([&](double t) { return polar(r, t).utheta; }, theta, ht);
  return jet;
}

Vec2 PolarField::value(Vec2 p) const {
  const double r = p.norm();
  const double theta = std::atan2(p.y, p.x);
  const PolarComponents c = polar(r, theta);
  const double ct = std::cos(theta), st = std::sin(theta);
  return {c.ur * ct - c.utheta * st, c.ur * st + c.utheta * ct};
}

Mat2 PolarField::jacobian(Vec2 p) const {
  const double r = p.norm();
  const double theta = std::atan2(p.y, p.x);
  const PolarJet jet = polar_jet(r, theta);
  const double ct = std::cos(theta), st = std::sin(theta);
  // Orthonormal frame and the Cartesian components of the partial derivatives
  // of u along r and theta (the frame itself rotates with theta:
  // d e_r/d theta = e_theta, d e_theta/d theta = -e_r).
  const Vec2 er = {ct, st};
  const Vec2 et = {-st, ct};
  const Vec2 du_dr = jet.dur_dr * er + jet.dutheta_dr * et;
  const Vec2 du_dt = (jet.dur_dtheta - jet.utheta) * er +
                     (jet.dutheta_dtheta + jet.ur) * et;
  Mat2 j;
  for (int i = 0; i < 2; ++i) {
    const double dui_dr = (i == 0) ? du_dr.x : du_dr.y;
    const double dui_dt = (i == 0) ? du_dt.x : du_dt.y;
    j(i, 0) = dui_dr * er.x + dui_dt * et.x / r;
    j(i, 1) = dui_dr * er.y + dui_dt * et.y / r;
  }
  return j;
}

double PolarField::divergence_polar(double r, double theta) const {
  const PolarJet jet = polar_jet(r, theta);
  return (jet.dur_dr + jet.ur / r) + jet.dutheta_dtheta / r;
}

// ---------------------------------------------------------------------------
// ModeField2D

ModeField2D::ModeField2D(AnnulusGeometry geom, int m) : PolarField(geom), m_(m) {
  if (m < 1) throw std::invalid_argument("ModeField2D: mode m must be >= 1");
}

double ModeField2D::radial_u(double r) const {
  const AnnulusGeometry& g = geometry();
  const double len = g.r2 - g.r1;
  const double s = (r - g.r1) / len;
  return (len / kTwoPi) * (std::cos(kTwoPi * s) - 1.0) / r;
}

double ModeField2D::radial_w(double r) const {
  const AnnulusGeometry& g = geometry();
  const double s = (r - g.r1) / (g.r2 - g.r1);
  return std::sin(kTwoPi * s);
}

PolarComponents ModeField2D::polar(double r, double theta) const {
  const double u = radial_u(r);
  const double w = radial_w(r);
  return {m_ * u * std::cos(m_ * theta), w * std::sin(m_ * theta)};
}

PolarJet ModeField2D::polar_jet(double r, double theta) const {
  const AnnulusGeometry& g = geometry();
  const double len = g.r2 - g.r1;
  const double s = (r - g.r1) / len;
  const double u = radial_u(r);
  const double w = std::sin(kTwoPi * s);
  // U' = -(U + W)/r  (equivalent to the defining identity (rU)' = -W);
  // W' = (2 pi / L) cos(2 pi s).
  const double du = -(u + w) / r;
  const double dw = (kTwoPi / len) * std::cos(kTwoPi * s);
  const double cm = std::cos(m_ * theta), sm = std::sin(m_ * theta);
  PolarJet jet;
  jet.ur = m_ * u * cm;
  jet.utheta = w * sm;
  jet.dur_dr = m_ * du * cm;
  jet.dur_dtheta = -static_cast<double>(m_) * m_ * u * sm;
  jet.dutheta_dr = dw * sm;
  jet.dutheta_dtheta = m_ * w * cm;
  return jet;
}

// ---------------------------------------------------------------------------
// SwirlField2D

SwirlField2D::SwirlField2D(AnnulusGeometry geom, ScalarProfile f)
    : PolarField(geom), f_(std::move(f)) {
  require_boundary_zero(f_, geometry().r1, geometry().r2, "SwirlField2D");
}

PolarComponents SwirlField2D::polar(double r, double /*theta*/) const {
  return {0.0, f_(r)};
}

PolarJet SwirlField2D::polar_jet(double r, double /*theta*/) const {
  PolarJet jet;
  jet.utheta = f_(r);
  jet.dutheta_dr = f_.derivative(r);
  return jet;
}

// ---------------------------------------------------------------------------
// RadialExtension2D

RadialExtension2D::RadialExtension2D(AnnulusGeometry geom, double phi,
                                     ScalarProfile v)
    : PolarField(geom), phi_(phi), v_(std::move(v)) {}

PolarComponents RadialExtension2D::polar(double r, double /*theta*/) const {
  return {phi_ / (kTwoPi * r), v_(r)};
}

PolarJet RadialExtension2D::polar_jet(double r, double /*theta*/) const {
  PolarJet jet;
  jet.ur = phi_ / (kTwoPi * r);
  // Written as -(u_r/r) so the coordinate divergence cancels exactly.
  jet.dur_dr = -(jet.ur / r);
  jet.utheta = v_(r);
  jet.dutheta_dr = v_.derivative(r);
  return jet;
}

// ---------------------------------------------------------------------------
// PerturbedExtension2D

PerturbedExtension2D::PerturbedExtension2D(AnnulusGeometry geom, double phi,
                                           ScalarProfile a, ScalarProfile b,
                                           int k)
    : PolarField(geom), phi_(phi), a_(std::move(a)), b_(std::move(b)), k_(k) {
  if (k < 1) throw std::invalid_argument("PerturbedExtension2D: need k >= 1");
}

PolarComponents PerturbedExtension2D::polar(double r, double theta) const {
  const double ck = std::cos(k_ * theta), sk = std::sin(k_ * theta);
  // u_r = (1/r) d(psi)/d(theta) + Phi/(2 pi r); u_theta = -d(psi)/dr.
  const double ur = (k_ * (-a_(r) * sk + b_(r) * ck) + phi_ / kTwoPi) / r;
  const double ut = -(a_.derivative(r) * ck + b_.derivative(r) * sk);
  return {ur, ut};
}

PolarJet PerturbedExtension2D::polar_jet(double r, double theta) const {
  const double ck = std::cos(k_ * theta), sk = std::sin(k_ * theta);
  const double a = a_(r), da = a_.derivative(r), dda = a_.second_derivative(r);
  const double b = b_(r), db = b_.derivative(r), ddb = b_.second_derivative(r);
  const double stream = k_ * (-a * sk + b * ck);
  const double stream_dr = k_ * (-da * sk + db * ck);
  const double stream_dt = k_ * k_ * (-a * ck - b * sk);
  PolarJet jet;
  jet.ur = (stream + phi_ / kTwoPi) / r;
  jet.utheta = -(da * ck + db * sk);
  jet.dur_dr = stream_dr / r - (stream + phi_ / kTwoPi) / (r * r);
  jet.dur_dtheta = stream_dt / r;
  jet.dutheta_dr = -(dda * ck + ddb * sk);
  jet.dutheta_dtheta = k_ * (da * sk - db * ck);
  return jet;
}

// ---------------------------------------------------------------------------
// RotatedField2D

RotatedField2D::RotatedField2D(Field2DPtr base, double angle)
    : base_(std::move(base)), c_(std::cos(angle)), s_(std::sin(angle)) {
  if (!base_) throw std::invalid_argument("RotatedField2D: null base field");
}

Vec2 RotatedField2D::value(Vec2 p) const {
  const Vec2 q = {c_ * p.x + s_ * p.y, -s_ * p.x + c_ * p.y};  // R^T p
  const Vec2 v = base_->value(q);
  return {c_ * v.x - s_ * v.y, s_ * v.x + c_ * v.y};  // R v
}

Mat2 RotatedField2D::jacobian(Vec2 p) const {
  const Vec2 q = {c_ * p.x + s_ * p.y, -s_ * p.x + c_ * p.y};
  const Mat2 j = base_->jacobian(q);
  Mat2 rot;
  rot(0, 0) = c_;
  rot(0, 1) = -s_;
  rot(1, 0) = s_;
  rot(1, 1) = c_;
  return rot * j * rot.transpose();
}

bool RotatedField2D::has_analytic_derivatives() const {
  return base_->has_analytic_derivatives();
}

// ---------------------------------------------------------------------------
// FieldSum2D

FieldSum2D::FieldSum2D(std::vector<std::pair<double, Field2DPtr>> terms)
    : terms_(std::move(terms)) {
  for (const auto& [coeff, field] : terms_) {
    (void)coeff;
    if (!field) throw std::invalid_argument("FieldSum2D: null term");
  }
}

Vec2 FieldSum2D::value(Vec2 p) const {
  Vec2 acc;
  for (const auto& [coeff, field] : terms_) acc += coeff * field->value(p);
  return acc;
}

Mat2 FieldSum2D::jacobian(Vec2 p) const {
  Mat2 acc;
  for (const auto& [coeff, field] : terms_) acc = acc + field->jacobian(p) * coeff;
  return acc;
}

bool FieldSum2D::has_analytic_derivatives() const {
  for (const auto& [coeff, field] : terms_) {
    (void)coeff;
    if (!field->has_analytic_derivatives()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

PolarComponents polar_components_of(const Field2D& field, double r,
                                    double theta) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const Vec2 v = field.value({r * ct, r * st});
  return {v.x * ct + v.y * st, -v.x * st + v.y * ct};
}

PolarFieldPtr test_field_2d(const AnnulusGeometry& geom, int m) {
  return std::make_shared<ModeField2D>(geom, m);
}

PolarFieldPtr inflow_field_2d(const AnnulusGeometry& geom,
                              const ScalarProfile& f) {
  return std::make_shared<SwirlField2D>(geom, f);
}

PolarFieldPtr averaged_extension_2d(const AnnulusGeometry& geom, double phi,
                                    const ScalarProfile& v) {
  return std::make_shared<RadialExtension2D>(geom, phi, v);
}

PolarFieldPtr perturbed_extension_2d(const AnnulusGeometry& geom, double phi,
                                     const ScalarProfile& a,
                                     const ScalarProfile& b, int k) {
  return std::make_shared<PerturbedExtension2D>(geom, phi, a, b, k);
}

}  // namespace eccert
