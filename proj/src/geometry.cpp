#include "eccert/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace eccert {

namespace {

void require_radii(double r1, double r2, const char* what) {
  if (!std::isfinite(r1) || !std::isfinite(r2) || !(r1 > 0.0) || !(r2 > r1)) {
    throw std::invalid_argument(std::string(what) +
                                ": radii must satisfy 0 < R1 < R2");
  }
}

}  // namespace

AnnulusGeometry::AnnulusGeometry(double r1_, double r2_) : r1(r1_), r2(r2_) {
  require_radii(r1, r2, "AnnulusGeometry");
}

ShellGeometry::ShellGeometry(double r1_, double r2_) : r1(r1_), r2(r2_) {
  require_radii(r1, r2, "ShellGeometry");
}

PlanarMultiDomain::PlanarMultiDomain(Circle outer, std::vector<Circle> inner)
    : outer_(outer), inner_(std::move(inner)) {
  if (!(outer_.radius > 0.0) || !std::isfinite(outer_.radius)) {
    throw std::invalid_argument("PlanarMultiDomain: outer radius must be positive");
  }
  for (const Circle& c : inner_) {
    if (!(c.radius > 0.0) || !std::isfinite(c.radius)) {
      throw std::invalid_argument("PlanarMultiDomain: inner radius must be positive");
    }
    const double d = (c.center - outer_.center).norm();
    if (!(d + c.radius < outer_.radius)) {
      throw std::invalid_argument(
          "PlanarMultiDomain: inner circle not strictly inside outer circle");
    }
  }
  for (std::size_t i = 0; i < inner_.size(); ++i) {
    for (std::size_t j = i + 1; j < inner_.size(); ++j) {
      const double d = (inner_[i].center - inner_[j].center).norm();
      if (!(d > inner_[i].radius + inner_[j].radius)) {
        throw std::invalid_argument(
            "PlanarMultiDomain: inner circles must be pairwise disjoint");
      }
    }
  }
}

PlanarMultiDomain multidomain_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("domain JSON parse error: ") + e.what());
  }
  const auto read_circle = [](const nlohmann::json& j) -> Circle {
    if (!j.is_object() || !j.contains("cx") || !j.contains("cy") || !j.contains("r")) {
      throw std::invalid_argument("domain JSON: circle needs cx, cy, r");
    }
    return Circle{{j.at("cx").get<double>(), j.at("cy").get<double>()},
                  j.at("r").get<double>()};
  };
  if (!doc.is_object() || !doc.contains("outer")) {
    throw std::invalid_argument("domain JSON: missing \"outer\" circle");
  }
  Circle outer = read_circle(doc.at("outer"));
  std::vector<Circle> inner;
  if (doc.contains("inner")) {
    if (!doc.at("inner").is_array()) {
      throw std::invalid_argument("domain JSON: \"inner\" must be an array");
    }
    for (const auto& j : doc.at("inner")) inner.push_back(read_circle(j));
  }
  return PlanarMultiDomain(outer, std::move(inner));
}

bool separates(const PlanarMultiDomain& domain, std::size_t i,
               const Circle& candidate) {
  if (i >= domain.inner_count()) {
    throw std::out_of_range("separates: inner component index out of range");
  }
  const Circle& gi = domain.inner()[i];
  // (a) strictly contains inner circle i.
  const double d_i = (gi.center - candidate.center).norm();
  if (!(d_i + gi.radius < candidate.radius)) return false;
  // (b) strictly inside the outer circle.
  const double d_out = (candidate.center - domain.outer().center).norm();
  if (!(d_out + candidate.radius < domain.outer().radius)) return false;
  // (c) strictly excludes every other inner circle.
  for (std::size_t j = 0; j < domain.inner_count(); ++j) {
    if (j == i) continue;
    const Circle& gj = domain.inner()[j];
    const double d_j = (gj.center - candidate.center).norm();
    if (!(d_j > candidate.radius + gj.radius)) return false;
  }
  return true;
}

std::optional<Circle> separating_circle_exists(const PlanarMultiDomain& domain,
                                               std::size_t i, int samples) {
  if (i >= domain.inner_count()) {
    throw std::out_of_range(
        "separating_circle_exists: inner component index out of range");
  }
  if (samples < 1) {
    throw std::invalid_argument("separating_circle_exists: need samples >= 1");
  }
  const Circle& gi = domain.inner()[i];
  // Largest radius a concentric candidate could possibly have: it must stay
  // inside the outer circle and clear of every other inner circle.
  double t_max = domain.outer().radius - (gi.center - domain.outer().center).norm();
  for (std::size_t j = 0; j < domain.inner_count(); ++j) {
    if (j == i) continue;
    const double d = (domain.inner()[j].center - gi.center).norm();
    t_max = std::min(t_max, d - domain.inner()[j].radius);
  }
  const double t_min = gi.radius;
  if (!(t_max > t_min)) return std::nullopt;

  // Uniform scan strictly inside (t_min, t_max); feasibility is an interval
  // (intersection of radius intervals), so the witness is its midpoint.
  const double h = (t_max - t_min) / samples;
  double first = std::numeric_limits<double>::quiet_NaN();
  double last = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k < samples; ++k) {
    const double t = t_min + (k + 0.5) * h;
    if (separates(domain, i, Circle{gi.center, t})) {
      if (std::isnan(first)) first = t;
      last = t;
    }
  }
  if (std::isnan(first)) return std::nullopt;
  return Circle{gi.center, 0.5 * (first + last)};
}

}  // namespace eccert
