#include "eccert/sampled.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace eccert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Degree-4 local Lagrange stencil on a uniform grid x_i = x0 + i h.
/// At interior nodes the derivative weights reduce to the classic 4th-order
/// central difference (-1, 8, 0, -8, 1)/(12h).
struct Stencil5 {
  std::size_t i0 = 0;
  double w[5] = {};   // value weights
  double dw[5] = {};  // derivative weights (per unit x)
};

Stencil5 make_stencil(double x, double x0, double h, std::size_t n) {
  Stencil5 st;
  const double xi_global = (x - x0) / h;
  const auto idx = static_cast<long long>(std::floor(xi_global));
  const long long lo = std::clamp<long long>(idx - 2, 0,
                                             static_cast<long long>(n) - 5);
  st.i0 = static_cast<std::size_t>(lo);
  const double xi = xi_global - static_cast<double>(lo);  // in node units, nodes at 0..4
  for (int s = 0; s < 5; ++s) {
    double denom = 1.0;
    for (int t = 0; t < 5; ++t) {
      if (t != s) denom *= static_cast<double>(s - t);
    }
    double num = 1.0;
    for (int t = 0; t < 5; ++t) {
      if (t != s) num *= xi - static_cast<double>(t);
    }
    double dnum = 0.0;
    for (int u = 0; u < 5; ++u) {
      if (u == s) continue;
      double prod = 1.0;
      for (int t = 0; t < 5; ++t) {
        if (t != s && t != u) prod *= xi - static_cast<double>(t);
      }
      dnum += prod;
    }
    st.w[s] = num / denom;
    st.dw[s] = dnum / (denom * h);
  }
  return st;
}

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void write_text_atomically(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + tmp.string());
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    throw std::runtime_error("rename failed for " + target.string() + ": " +
                             ec.message());
  }
}

void check_coordinate(double got, double expected, const char* what,
                      std::size_t line_index) {
  const double tol = 1e-9 * std::max(1.0, std::abs(expected));
  if (!(std::abs(got - expected) <= tol)) {
    std::ostringstream msg;
    msg << "field file node " << line_index << ": " << what << " = " << got
        << " does not lie on the declared grid (expected " << expected << ")";
    throw std::runtime_error(msg.str());
  }
}

}  // namespace

namespace detail {

TrigSeries TrigSeries::fit(const double* samples, std::size_t n) {
  const std::size_t m = n / 2;
  TrigSeries out;
  out.a.assign(m + 1, 0.0);
  out.b.assign(m + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = samples[k];
    const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    const double c1 = std::cos(theta), s1 = std::sin(theta);
    double cj = 1.0, sj = 0.0;  // cos(0), sin(0)
    out.a[0] += f;
    for (std::size_t j = 1; j <= m; ++j) {
      const double cn = cj * c1 - sj * s1;
      const double sn = sj * c1 + cj * s1;
      cj = cn;
      sj = sn;
      out.a[j] += f * cj;
      out.b[j] += f * sj;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  out.a[0] *= inv_n;
  for (std::size_t j = 1; j <= m; ++j) {
    out.a[j] *= 2.0 * inv_n;
    out.b[j] *= 2.0 * inv_n;
  }
  if (n % 2 == 0) {
    // Nyquist mode appears once, not twice.
    out.a[m] *= 0.5;
    out.b[m] = 0.0;
  }
  return out;
}

double TrigSeries::eval(double theta) const {
  const std::size_t m = a.size() - 1;
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double cj = 1.0, sj = 0.0;
  double acc = a[0];
  for (std::size_t j = 1; j <= m; ++j) {
    const double cn = cj * c1 - sj * s1;
    const double sn = sj * c1 + cj * s1;
    cj = cn;
    sj = sn;
    acc += a[j] * cj + b[j] * sj;
  }
  return acc;
}

double TrigSeries::eval_derivative(double theta) const {
  const std::size_t m = a.size() - 1;
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double cj = 1.0, sj = 0.0;
  double acc = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    const double cn = cj * c1 - sj * s1;
    const double sn = sj * c1 + cj * s1;
    cj = cn;
    sj = sn;
    acc += static_cast<double>(j) * (b[j] * cj - a[j] * sj);
  }
  return acc;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SampledField2D

SampledField2D::SampledField2D(AnnulusGeometry geom, std::size_t nr,
                               std::size_t ntheta, std::vector<double> ux,
                               std::vector<double> uy)
    : geom_(geom), nr_(nr), ntheta_(ntheta), ux_(std::move(ux)),
      uy_(std::move(uy)) {
  if (nr_ < 5) throw std::invalid_argument("SampledField2D: need nr >= 5");
  if (ntheta_ < 4) throw std::invalid_argument("SampledField2D: need ntheta >= 4");
  if (ux_.size() != nr_ * ntheta_ || uy_.size() != nr_ * ntheta_) {
    throw std::invalid_argument("SampledField2D: sample arrays must have nr*ntheta entries");
  }
  series_x_.reserve(nr_);
  series_y_.reserve(nr_);
  for (std::size_t i = 0; i < nr_; ++i) {
    series_x_.push_back(detail::TrigSeries::fit(ux_.data() + i * ntheta_, ntheta_));
    series_y_.push_back(detail::TrigSeries::fit(uy_.data() + i * ntheta_, ntheta_));
  }
}

std::shared_ptr<const SampledField2D> SampledField2D::sample(
    const Field2D& src, const AnnulusGeometry& geom, std::size_t nr,
    std::size_t ntheta) {
  if (nr < 5 || ntheta < 4) {
    throw std::invalid_argument("SampledField2D::sample: grid too small");
  }
  std::vector<double> ux(nr * ntheta), uy(nr * ntheta);
  for (std::size_t i = 0; i < nr; ++i) {
    const double r = geom.r1 + (geom.r2 - geom.r1) * static_cast<double>(i) /
                                   static_cast<double>(nr - 1);
    for (std::size_t j = 0; j < ntheta; ++j) {
      const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(ntheta);
      const Vec2 v = src.value({r * std::cos(theta), r * std::sin(theta)});
      ux[i * ntheta + j] = v.x;
      uy[i * ntheta + j] = v.y;
    }
  }
  return std::make_shared<SampledField2D>(geom, nr, ntheta, std::move(ux),
                                          std::move(uy));
}

double SampledField2D::node_r(std::size_t i) const {
  return geom_.r1 + (geom_.r2 - geom_.r1) * static_cast<double>(i) /
                        static_cast<double>(nr_ - 1);
}

double SampledField2D::node_theta(std::size_t j) const {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(ntheta_);
}

struct SampledField2D::Eval2 {
  double ux = 0.0, uy = 0.0;
  double dux_dr = 0.0, duy_dr = 0.0;
  double dux_dt = 0.0, duy_dt = 0.0;
};

SampledField2D::Eval2 SampledField2D::evaluate(double r, double theta,
                                               bool derivatives) const {
  const double h = (geom_.r2 - geom_.r1) / static_cast<double>(nr_ - 1);
  const Stencil5 st = make_stencil(r, geom_.r1, h, nr_);
  Eval2 e;
  for (int s = 0; s < 5; ++s) {
    const std::size_t i = st.i0 + static_cast<std::size_t>(s);
    const double vx = series_x_[i].eval(theta);
    const double vy = series_y_[i].eval(theta);
    e.ux += st.w[s] * vx;
    e.uy += st.w[s] * vy;
    if (derivatives) {
      e.dux_dr += st.dw[s] * vx;
      e.duy_dr += st.dw[s] * vy;
      e.dux_dt += st.w[s] * series_x_[i].eval_derivative(theta);
      e.duy_dt += st.w[s] * series_y_[i].eval_derivative(theta);
    }
  }
  return e;
}

Vec2 SampledField2D::value_polar(double r, double theta) const {
  const Eval2 e = evaluate(r, theta, false);
  return {e.ux, e.uy};
}

Vec2 SampledField2D::value(Vec2 p) const {
  return value_polar(p.norm(), std::atan2(p.y, p.x));
}

Mat2 SampledField2D::jacobian(Vec2 p) const {
  const double r = p.norm();
  const double theta = std::atan2(p.y, p.x);
  const Eval2 e = evaluate(r, theta, true);
  const double c = std::cos(theta), s = std::sin(theta);
  // grad r = (c, s), grad theta = (-s, c)/r.
  Mat2 j;
  j(0, 0) = e.dux_dr * c - e.dux_dt * s / r;
  j(0, 1) = e.dux_dr * s + e.dux_dt * c / r;
  j(1, 0) = e.duy_dr * c - e.duy_dt * s / r;
  j(1, 1) = e.duy_dr * s + e.duy_dt * c / r;
  return j;
}

// ---------------------------------------------------------------------------
// SampledField3D

SampledField3D::SampledField3D(ShellGeometry geom, std::size_t nr,
                               std::size_t nchi, std::size_t ntheta,
                               std::vector<double> ux, std::vector<double> uy,
                               std::vector<double> uz)
    : geom_(geom), nr_(nr), nchi_(nchi), ntheta_(ntheta), ux_(std::move(ux)),
      uy_(std::move(uy)), uz_(std::move(uz)) {
  if (nr_ < 5 || nchi_ < 5) {
    throw std::invalid_argument("SampledField3D: need nr >= 5 and nchi >= 5");
  }
  if (ntheta_ < 4) throw std::invalid_argument("SampledField3D: need ntheta >= 4");
  const std::size_t total = nr_ * nchi_ * ntheta_;
  if (ux_.size() != total || uy_.size() != total || uz_.size() != total) {
    throw std::invalid_argument("SampledField3D: sample arrays must have nr*nchi*ntheta entries");
  }
  const std::size_t lines = nr_ * nchi_;
  series_x_.reserve(lines);
  series_y_.reserve(lines);
  series_z_.reserve(lines);
  for (std::size_t l = 0; l < lines; ++l) {
    series_x_.push_back(detail::TrigSeries::fit(ux_.data() + l * ntheta_, ntheta_));
    series_y_.push_back(detail::TrigSeries::fit(uy_.data() + l * ntheta_, ntheta_));
    series_z_.push_back(detail::TrigSeries::fit(uz_.data() + l * ntheta_, ntheta_));
  }
}

std::shared_ptr<const SampledField3D> SampledField3D::sample(
    const Field3D& src, const ShellGeometry& geom, std::size_t nr,
    std::size_t nchi, std::size_t ntheta) {
  if (nr < 5 || nchi < 5 || ntheta < 4) {
    throw std::invalid_argument("SampledField3D::sample: grid too small");
  }
  std::vector<double> ux(nr * nchi * ntheta), uy(nr * nchi * ntheta),
      uz(nr * nchi * ntheta);
  for (std::size_t i = 0; i < nr; ++i) {
    const double r = geom.r1 + (geom.r2 - geom.r1) * static_cast<double>(i) /
                                   static_cast<double>(nr - 1);
    for (std::size_t a = 0; a < nchi; ++a) {
      const double chi = kPi * static_cast<double>(a) / static_cast<double>(nchi - 1);
      const double sc = std::sin(chi), cc = std::cos(chi);
      for (std::size_t j = 0; j < ntheta; ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(ntheta);
        const Vec3 v = src.value(
            {r * sc * std::cos(theta), r * sc * std::sin(theta), r * cc});
        const std::size_t idx = (i * nchi + a) * ntheta + j;
        ux[idx] = v.x;
        uy[idx] = v.y;
        uz[idx] = v.z;
      }
    }
  }
  return std::make_shared<SampledField3D>(geom, nr, nchi, ntheta, std::move(ux),
                                          std::move(uy), std::move(uz));
}

double SampledField3D::node_r(std::size_t i) const {
  return geom_.r1 + (geom_.r2 - geom_.r1) * static_cast<double>(i) /
                        static_cast<double>(nr_ - 1);
}

double SampledField3D::node_chi(std::size_t a) const {
  return kPi * static_cast<double>(a) / static_cast<double>(nchi_ - 1);
}

double SampledField3D::node_theta(std::size_t j) const {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(ntheta_);
}

struct SampledField3D::Eval3 {
  double u[3] = {};
  double du_dr[3] = {};
  double du_dchi[3] = {};
  double du_dt[3] = {};
};

SampledField3D::Eval3 SampledField3D::evaluate(double r, double chi,
                                               double theta,
                                               bool derivatives) const {
  const double hr = (geom_.r2 - geom_.r1) / static_cast<double>(nr_ - 1);
  const double hc = kPi / static_cast<double>(nchi_ - 1);
  const Stencil5 sr = make_stencil(r, geom_.r1, hr, nr_);
  const Stencil5 sc = make_stencil(chi, 0.0, hc, nchi_);
  Eval3 e;
  const std::vector<detail::TrigSeries>* series[3] = {&series_x_, &series_y_,
                                                      &series_z_};
  for (int comp = 0; comp < 3; ++comp) {
    for (int s = 0; s < 5; ++s) {
      const std::size_t i = sr.i0 + static_cast<std::size_t>(s);
      for (int t = 0; t < 5; ++t) {
        const std::size_t a = sc.i0 + static_cast<std::size_t>(t);
        const detail::TrigSeries& line = (*series[comp])[i * nchi_ + a];
        const double v = line.eval(theta);
        e.u[comp] += sr.w[s] * sc.w[t] * v;
        if (derivatives) {
          e.du_dr[comp] += sr.dw[s] * sc.w[t] * v;
          e.du_dchi[comp] += sr.w[s] * sc.dw[t] * v;
          e.du_dt[comp] += sr.w[s] * sc.w[t] * line.eval_derivative(theta);
        }
      }
    }
  }
  return e;
}

Vec3 SampledField3D::value_spherical(double r, double chi, double theta) const {
  const Eval3 e = evaluate(r, chi, theta, false);
  return {e.u[0], e.u[1], e.u[2]};
}

Vec3 SampledField3D::value(Vec3 p) const {
  const double r = p.norm();
  const double chi = std::acos(std::clamp(p.z / r, -1.0, 1.0));
  const double theta = std::atan2(p.y, p.x);
  return value_spherical(r, chi, theta);
}

Mat3 SampledField3D::jacobian(Vec3 p) const {
  const double r = p.norm();
  const double chi = std::acos(std::clamp(p.z / r, -1.0, 1.0));
  const double theta = std::atan2(p.y, p.x);
  const Eval3 e = evaluate(r, chi, theta, true);
  const double scn = std::sin(chi), ccn = std::cos(chi);
  const double st = std::sin(theta), ct = std::cos(theta);
  const double er[3] = {scn * ct, scn * st, ccn};
  const double echi[3] = {ccn * ct, ccn * st, -scn};
  const double etheta[3] = {-st, ct, 0.0};
  // grad r = e_r, grad chi = e_chi / r, grad theta = e_theta / (r sin chi).
  Mat3 j;
  const double inv_r = 1.0 / r;
  const double inv_rs = 1.0 / (r * scn);
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      j(i, k) = e.du_dr[i] * er[k] + e.du_dchi[i] * inv_r * echi[k] +
                e.du_dt[i] * inv_rs * etheta[k];
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// File IO

void write_field_file(const std::string& path, const SampledField2D& field) {
  std::string text;
  text.reserve(field.nr() * field.ntheta() * 80 + 64);
  text += "polar-grid ";
  append_double(text, field.geometry().r1);
  text += ' ';
  append_double(text, field.geometry().r2);
  text += ' ';
  text += std::to_string(field.nr());
  text += ' ';
  text += std::to_string(field.ntheta());
  text += '\n';
  for (std::size_t i = 0; i < field.nr(); ++i) {
    for (std::size_t j = 0; j < field.ntheta(); ++j) {
      const std::size_t idx = i * field.ntheta() + j;
      append_double(text, field.node_r(i));
      text += ' ';
      append_double(text, field.node_theta(j));
      text += ' ';
      append_double(text, field.samples_x()[idx]);
      text += ' ';
      append_double(text, field.samples_y()[idx]);
      text += '\n';
    }
  }
  write_text_atomically(path, text);
}

void write_field_file(const std::string& path, const SampledField3D& field) {
  std::string text;
  text.reserve(field.nr() * field.nchi() * field.ntheta() * 110 + 64);
  text += "spherical-grid ";
  append_double(text, field.geometry().r1);
  text += ' ';
  append_double(text, field.geometry().r2);
  text += ' ';
  text += std::to_string(field.nr());
  text += ' ';
  text += std::to_string(field.nchi());
  text += ' ';
  text += std::to_string(field.ntheta());
  text += '\n';
  for (std::size_t i = 0; i < field.nr(); ++i) {
    for (std::size_t a = 0; a < field.nchi(); ++a) {
      for (std::size_t j = 0; j < field.ntheta(); ++j) {
        const std::size_t idx = (i * field.nchi() + a) * field.ntheta() + j;
        append_double(text, field.node_r(i));
        text += ' ';
        append_double(text, field.node_chi(a));
        text += ' ';
        append_double(text, field.node_theta(j));
        text += ' ';
        append_double(text, field.samples_x()[idx]);
        text += ' ';
        append_double(text, field.samples_y()[idx]);
        text += ' ';
        append_double(text, field.samples_z()[idx]);
        text += '\n';
      }
    }
  }
  write_text_atomically(path, text);
}

LoadedField read_field_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field file: " + path);
  std::string kind;
  if (!(in >> kind)) throw std::runtime_error("empty field file: " + path);

  const auto read_double = [&](const char* what) {
    double v;
    if (!(in >> v)) {
      throw std::runtime_error(std::string("field file ") + path +
                               ": cannot read " + what);
    }
    return v;
  };
  const auto read_size = [&](const char* what) {
    long long v;
    if (!(in >> v) || v <= 0) {
      throw std::runtime_error(std::string("field file ") + path +
                               ": invalid " + what);
    }
    return static_cast<std::size_t>(v);
  };
  const auto expect_end = [&] {
    std::string extra;
    if (in >> extra) {
      throw std::runtime_error("field file " + path +
                               ": trailing data after the declared nodes");
    }
  };

  if (kind == "polar-grid") {
    const double r1 = read_double("R1");
    const double r2 = read_double("R2");
    const std::size_t nr = read_size("Nr");
    const std::size_t ntheta = read_size("Ntheta");
    AnnulusGeometry geom(r1, r2);
    std::vector<double> ux(nr * ntheta), uy(nr * ntheta);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < ntheta; ++j) {
        const std::size_t idx = i * ntheta + j;
        const double r = read_double("r");
        const double theta = read_double("theta");
        check_coordinate(r, r1 + (r2 - r1) * static_cast<double>(i) /
                                     static_cast<double>(nr - 1),
                         "r", idx);
        check_coordinate(theta, kTwoPi * static_cast<double>(j) /
                                    static_cast<double>(ntheta),
                         "theta", idx);
        ux[idx] = read_double("ux");
        uy[idx] = read_double("uy");
      }
    }
    expect_end();
    LoadedField out;
    out.field2d = std::make_shared<SampledField2D>(geom, nr, ntheta,
                                                   std::move(ux), std::move(uy));
    return out;
  }
  if (kind == "spherical-grid") {
    const double r1 = read_double("R1");
    const double r2 = read_double("R2");
    const std::size_t nr = read_size("Nr");
    const std::size_t nchi = read_size("Nchi");
    const std::size_t ntheta = read_size("Ntheta");
    ShellGeometry geom(r1, r2);
    const std::size_t total = nr * nchi * ntheta;
    std::vector<double> ux(total), uy(total), uz(total);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t a = 0; a < nchi; ++a) {
        for (std::size_t j = 0; j < ntheta; ++j) {
          const std::size_t idx = (i * nchi + a) * ntheta + j;
          const double r = read_double("r");
          const double chi = read_double("chi");
          const double theta = read_double("theta");
          check_coordinate(r, r1 + (r2 - r1) * static_cast<double>(i) /
                                       static_cast<double>(nr - 1),
                           "r", idx);
          check_coordinate(chi, kPi * static_cast<double>(a) /
                                    static_cast<double>(nchi - 1),
                           "chi", idx);
          check_coordinate(theta, kTwoPi * static_cast<double>(j) /
                                      static_cast<double>(ntheta),
                           "theta", idx);
          ux[idx] = read_double("ux");
          uy[idx] = read_double("uy");
          uz[idx] = read_double("uz");
        }
      }
    }
    expect_end();
    LoadedField out;
    out.field3d = std::make_shared<SampledField3D>(
        geom, nr, nchi, ntheta, std::move(ux), std::move(uy), std::move(uz));
    return out;
  }
  throw std::runtime_error("field file " + path +
                           ": unknown header kind '" + kind +
                           "' (expected polar-grid or spherical-grid)");
}

SampledField2DPtr synthetic_extension_2d(const AnnulusGeometry& geom, double phi,
                                         const ScalarProfile& a,
                                         const ScalarProfile& b, int k,
                                         std::size_t nr, std::size_t ntheta) {
  const PolarFieldPtr analytic = perturbed_extension_2d(geom, phi, a, b, k);
  return SampledField2D::sample(*analytic, geom, nr, ntheta);
}

}  // namespace eccert
