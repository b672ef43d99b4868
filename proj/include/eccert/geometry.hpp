#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eccert/linalg.hpp"

/// \file geometry.hpp
/// Admissible domains: the plane annulus, the spherical shell, and planar
/// multiply-connected domains bounded by circles, together with the
/// separating-circle existence check used to classify the latter.

namespace eccert {

/// Open annulus { R1 < |x| < R2 } in the plane.
struct AnnulusGeometry {
  double r1;
  double r2;

  /// Validates 0 < R1 < R2 (both finite).
  AnnulusGeometry(double r1_, double r2_);

  /// Aspect ratio rho = R2/R1 > 1.
  double rho() const { return r2 / r1; }
};

/// Open spherical shell { R1 < |x| < R2 } in space.
struct ShellGeometry {
  double r1;
  double r2;

  /// Validates 0 < R1 < R2 (both finite).
  ShellGeometry(double r1_, double r2_);

  /// Aspect ratio rho = R2/R1 > 1.
  double rho() const { return r2 / r1; }
};

/// Circle in the plane (used both as boundary component and as witness).
struct Circle {
  Vec2 center;
  double radius = 0.0;
};

/// Planar multiply-connected domain: the interior of `outer` minus the closed
/// discs bounded by `inner`. Boundary components are the inner circles
/// (indices 0..N-2) plus the outer circle.
class PlanarMultiDomain {
 public:
  /// Validates: all radii positive; every inner circle strictly inside the
  /// outer circle; inner closed discs pairwise disjoint. Throws
  /// std::invalid_argument otherwise.
  PlanarMultiDomain(Circle outer, std::vector<Circle> inner);

  const Circle& outer() const { return outer_; }
  const std::vector<Circle>& inner() const { return inner_; }
  std::size_t inner_count() const { return inner_.size(); }

 private:
  Circle outer_;
  std::vector<Circle> inner_;
};

/// Parse a domain from a JSON document of the shape
/// {"outer":{"cx":..,"cy":..,"r":..},"inner":[{"cx":..,"cy":..,"r":..},...]}
/// Throws std::invalid_argument on malformed documents or invalid geometry.
PlanarMultiDomain multidomain_from_json_text(const std::string& text);

/// True when `candidate` (a) strictly contains inner circle `i`, (b) lies
/// strictly inside the outer circle, and (c) strictly excludes every other
/// inner circle.
bool separates(const PlanarMultiDomain& domain, std::size_t i,
               const Circle& candidate);

/// Search for a circle concentric with inner circle `i` satisfying the
/// predicates of `separates`, scanning `samples` candidate radii uniformly
/// between the inner radius and the largest geometrically feasible radius;
/// returns the midpoint of the feasible range, or absent when no sampled
/// radius qualifies. This is a sufficient check only: witnesses that are not
/// concentric with inner circle `i` are not searched.
/// Throws std::out_of_range for an invalid component index.
std::optional<Circle> separating_circle_exists(const PlanarMultiDomain& domain,
                                               std::size_t i,
                                               int samples = 1024);

}  // namespace eccert
