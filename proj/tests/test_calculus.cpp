#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eccert/calculus.hpp"
#include "eccert/fields2d.hpp"
#include "eccert/fields3d.hpp"

namespace {

using namespace eccert;
constexpr double kPi = std::numbers::pi;

// Reference values for the two planar radial integrals
//   I1 = int_1^rho U(r)^2 / r dr,   I2 = int_1^rho W(r)^2 / r dr
// and their shell counterparts
//   J1 = int_1^rho (U(r)/r)^2 r dr, J2 = int_1^rho W(r)^2 / r dr (weighted),
// computed independently with 40-digit arithmetic and frozen here. The
// closed-form ring/shell couplings below are linear in these.
struct RadialReference {
  double rho;
  double f1, f2;  // planar
  double g1, g2;  // shell
};

constexpr RadialReference kReference[] = {
    {1.5, 0.0077893181515747809916, 0.63553986558835151949,
     0.013689468610841964719, 0.45925064110686998098},
    {2.0, 0.037372186727907027806, 1.0816489281952812286,
     0.048185733624628661686, 0.60168198959757050673},
    {4.0, 0.25045710835311677677, 2.1108641128250383551,
     0.14609427718961707899, 0.62437406584587198075},
};

// Value-only wrapper to exercise the finite-difference jacobian fallback.
class ValueOnly2D final : public Field2D {
 public:
  explicit ValueOnly2D(Field2DPtr base) : base_(std::move(base)) {}
  Vec2 value(Vec2 p) const override { return base_->value(p); }

 private:
  Field2DPtr base_;
};

}  // namespace

TEST_CASE("ring coupling matches the closed-form radial reduction") {
  QuadratureSpec q;
  q.nodes_r = 64;
  q.nodes_theta = 128;
  for (const RadialReference& ref : kReference) {
    const AnnulusGeometry geom(1.0, ref.rho);
    for (int m = 1; m <= 10; ++m) {
      const PolarFieldPtr u = test_field_2d(geom, m);
      // With Phi = pi the prefactor is 1 and the coupling reduces to
      // m^2 I1 - I2 exactly.
      const double got = obstruction_2d(kPi, ScalarProfile::zero(), *u, q);
      const double expect = m * m * ref.f1 - ref.f2;
      CHECK(got == doctest::Approx(expect).epsilon(1e-8));
    }
  }
}

TEST_CASE("shell coupling matches the closed-form radial reduction") {
  QuadratureSpec q;
  q.nodes_r = 48;
  q.nodes_theta = 64;
  q.nodes_chi = 48;
  for (const RadialReference& ref : kReference) {
    const ShellGeometry geom(1.0, ref.rho);
    for (int m = 1; m <= 6; ++m) {
      const SphericalFieldPtr u = test_field_3d(geom, m);
      // With Phi = 4 pi the prefactor is 1; R1 = 1 here.
      const double got = obstruction_3d(4.0 * kPi, *u, q);
      const double expect = m * m * ref.g1 - ref.g2;
      CHECK(got == doctest::Approx(expect).epsilon(1e-8));
    }
  }
}

TEST_CASE("swirl contribution to the ring coupling cancels") {
  QuadratureSpec q;
  q.nodes_r = 64;
  q.nodes_theta = 128;
  const AnnulusGeometry geom(1.0, 2.0);
  const PolarFieldPtr u = test_field_2d(geom, 4);
  const double base = obstruction_2d(2.0, ScalarProfile::zero(), *u, q);
  for (const ScalarProfile& v :
       {ScalarProfile::polynomial({1.0}), ScalarProfile::polynomial({0.0, 2.0}),
        ScalarProfile::polynomial({3.0, -2.5, 0.5})}) {
    const double with_swirl = obstruction_2d(2.0, v, *u, q);
    CHECK(std::abs(with_swirl - base) <= 1e-10 * (1.0 + std::abs(base)));
  }
}

TEST_CASE("quadratic form equals the ring coupling closed form") {
  QuadratureSpec q;
  q.nodes_r = 64;
  q.nodes_theta = 128;
  const RadialReference& ref = kReference[1];  // rho = 2
  const AnnulusGeometry geom(1.0, 2.0);
  const PolarFieldPtr u = test_field_2d(geom, 6);
  const PolarFieldPtr v = averaged_extension_2d(
      geom, kPi, ScalarProfile::polynomial({2.0, -3.0, 1.0}));
  // -(u . grad V, u) computed by raw quadrature is half the reduced
  // coupling (the angular averages of cos^2 and sin^2 contribute the half).
  const double raw = quadratic_form(*v, *u, geom, q);
  const double expect = 0.5 * (36.0 * ref.f1 - ref.f2);
  CHECK(raw == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("strain-based form agrees with the advective form") {
  QuadratureSpec q;
  q.nodes_r = 32;
  q.nodes_theta = 48;
  q.nodes_chi = 24;
  const AnnulusGeometry a(1.0, 2.0);
  const PolarFieldPtr u2 = test_field_2d(a, 3);
  const PolarFieldPtr v2 = averaged_extension_2d(
      a, 1.7, ScalarProfile::polynomial({0.5, -0.25}));
  const double adv2 = quadratic_form(*v2, *u2, a, q);
  const double strain2 = quadratic_form_strain(*v2, *u2, a, q);
  CHECK(std::abs(adv2 - strain2) <= 1e-12 * (1.0 + std::abs(adv2)));

  const ShellGeometry s(1.0, 2.0);
  const SphericalFieldPtr u3 = test_field_3d(s, 3);
  const SphericalFieldPtr v3 = averaged_extension_3d(s, -1.2);
  const double adv3 = quadratic_form(*v3, *u3, s, q);
  const double strain3 = quadratic_form_strain(*v3, *u3, s, q);
  CHECK(std::abs(adv3 - strain3) <= 1e-12 * (1.0 + std::abs(adv3)));
}

TEST_CASE("dirichlet seminorm is rotation invariant") {
  QuadratureSpec q;
  q.nodes_r = 48;
  q.nodes_theta = 64;
  const AnnulusGeometry geom(1.0, 2.0);
  const PolarFieldPtr u = test_field_2d(geom, 5);
  const double base = dirichlet_norm_sq(*u, geom, q);
  CHECK(base > 0.0);
  for (double alpha : {0.37, 1.9, 4.2}) {
    const RotatedField2D ru(u, alpha);
    const double rotated = dirichlet_norm_sq(ru, geom, q);
    CHECK(rotated == doctest::Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("finite-difference jacobian fallback reproduces the seminorm") {
  QuadratureSpec q;
  q.nodes_r = 32;
  q.nodes_theta = 48;
  const AnnulusGeometry geom(1.0, 2.0);
  const PolarFieldPtr u = test_field_2d(geom, 3);
  const ValueOnly2D wrapped(u);
  const double analytic = dirichlet_norm_sq(*u, geom, q);
  const double fd = dirichlet_norm_sq(wrapped, geom, q);
  CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
}

TEST_CASE("flux is constant across radii and linear in the carrier") {
  const AnnulusGeometry a(1.0, 2.0);
  const ShellGeometry s(1.0, 2.0);
  const PolarFieldPtr carrier2 = averaged_extension_2d(
      a, 3.7, ScalarProfile::polynomial({0.2, -0.1}));
  for (double r0 : {1.0, 1.31, 1.77, 2.0}) {
    CHECK(flux(*carrier2, a, r0) == doctest::Approx(3.7).epsilon(1e-10));
  }
  const SphericalFieldPtr carrier3 = averaged_extension_3d(s, -2.0);
  for (double r0 : {1.0, 1.5, 2.0}) {
    CHECK(flux(*carrier3, s, r0) == doctest::Approx(-2.0).epsilon(1e-10));
  }
  // Boundary-vanishing witnesses and pure perturbations carry no flux.
  CHECK(std::abs(flux(*test_field_2d(a, 3), a, 1.5)) <= 1e-12);
  const Field2DPtr pert = perturbed_extension_2d(
      a, 0.0, ScalarProfile::polynomial({2.0, -3.0, 1.0}),
      ScalarProfile::polynomial({-2.0, 3.0, -1.0}), 3);
  CHECK(std::abs(flux(*pert, a, 1.4)) <= 1e-12);
  CHECK_THROWS_AS(flux(*carrier2, a, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(flux(*carrier3, s, 2.5), std::invalid_argument);
}

TEST_CASE("pointwise operators validate their evaluation points") {
  const AnnulusGeometry a(1.0, 2.0);
  const ShellGeometry s(1.0, 2.0);
  const PolarFieldPtr u2 = test_field_2d(a, 2);
  const SphericalFieldPtr u3 = test_field_3d(s, 2);
  CHECK_THROWS_AS(divergence(*u2, Vec2{1.0, 0.0}, a), std::domain_error);
  CHECK_THROWS_AS(divergence(*u2, Vec2{2.6, 0.0}, a), std::domain_error);
  CHECK_THROWS_AS(symmetric_gradient(*u2, Vec2{0.2, 0.1}, a),
                  std::domain_error);
  CHECK_THROWS_AS(divergence(*u3, Vec3{0.0, 0.0, 1.0}, s), std::domain_error);
  CHECK_THROWS_AS(symmetric_gradient(*u3, Vec3{0.0, 0.0, 2.4}, s),
                  std::domain_error);
  // Interior calls succeed and the divergence of the witnesses vanishes.
  CHECK(std::abs(divergence(*u2, Vec2{1.3, 0.4}, a)) <= 1e-12);
  CHECK(std::abs(divergence(*u3, Vec3{0.9, 0.9, 0.6}, s)) <= 1e-12);
}

TEST_CASE("rate of strain matches the closed carrier formulas") {
  const AnnulusGeometry a(1.0, 2.0);
  const ShellGeometry s(1.0, 2.0);
  const double phi = 2.2;

  const PolarFieldPtr carrier2 =
      averaged_extension_2d(a, phi, ScalarProfile::zero());
  const Vec2 p2{1.1, 0.8};
  const double r2 = std::hypot(p2.x, p2.y);
  const Vec2 e2{p2.x / r2, p2.y / r2};
  const double c2 = phi / (2.0 * kPi * r2 * r2);
  Mat2 expect2;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double ei = (i == 0) ? e2.x : e2.y;
      const double ej = (j == 0) ? e2.x : e2.y;
      expect2(i, j) = c2 * ((i == j ? 1.0 : 0.0) - 2.0 * ei * ej);
    }
  }
  const Mat2 got2 = symmetric_gradient(*carrier2, p2, a);
  CHECK((got2 - expect2).max_abs() <= 1e-10);
  CHECK(std::abs(got2.trace()) <= 1e-10);  // traceless = solenoidal

  const SphericalFieldPtr carrier3 = averaged_extension_3d(s, phi);
  const Vec3 p3{0.8, 0.7, 0.9};
  const double r3 = p3.norm();
  const Vec3 e3 = p3 * (1.0 / r3);
  const double c3 = phi / (4.0 * kPi * r3 * r3 * r3);
  Mat3 expect3;
  const double e3c[3] = {e3.x, e3.y, e3.z};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      expect3(i, j) = c3 * ((i == j ? 1.0 : 0.0) - 3.0 * e3c[i] * e3c[j]);
    }
  }
  const Mat3 got3 = symmetric_gradient(*carrier3, p3, s);
  CHECK((got3 - expect3).max_abs() <= 1e-10);
  CHECK(std::abs(got3.trace()) <= 1e-10);
}

TEST_CASE("quadratic forms insist on boundary-vanishing test fields") {
  QuadratureSpec q;
  q.nodes_r = 16;
  q.nodes_theta = 16;
  const AnnulusGeometry a(1.0, 2.0);
  const PolarFieldPtr v = averaged_extension_2d(a, 1.0, ScalarProfile::zero());
  // The carrier itself does not vanish on the boundary, so it is not a
  // valid test direction.
  CHECK_THROWS_AS(quadratic_form(*v, *v, a, q), std::invalid_argument);
}

TEST_CASE("quadrature specs validate node counts") {
  QuadratureSpec q;
  q.nodes_r = 4;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q.nodes_r = 64;
  q.nodes_theta = 2;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q.nodes_theta = 128;
  q.nodes_chi = 1;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q.nodes_chi = 64;
  CHECK_NOTHROW(q.validate());
}
