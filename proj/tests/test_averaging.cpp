#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eccert/averaging.hpp"
#include "eccert/calculus.hpp"
#include "eccert/fields2d.hpp"
#include "eccert/fields3d.hpp"
#include "eccert/sampled.hpp"

namespace {

using namespace eccert;
constexpr double kPi = std::numbers::pi;

bool is_rotation(const Mat3& r, double tol) {
  const Mat3 gram = r * r.transpose();
  if ((gram - Mat3::identity()).max_abs() > tol) return false;
  const double det =
      r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1)) -
      r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0)) +
      r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0));
  return std::abs(det - 1.0) <= tol;
}

}  // namespace

TEST_CASE("rotation builders produce proper rotations") {
  for (double a : {0.0, 0.4, 1.9, 4.4}) {
    const Mat2 r = rotation_matrix_2d(a);
    const Mat2 gram = r * r.transpose();
    CHECK((gram - Mat2::identity()).max_abs() <= 1e-15);
    const double det = r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0);
    CHECK(det == doctest::Approx(1.0).epsilon(1e-15));
  }
  for (EulerConvention conv : {EulerConvention::zyz, EulerConvention::zxz}) {
    for (double a1 : {0.0, 1.3, 5.0}) {
      for (double a2 : {0.7, 3.9}) {
        for (double a3 : {0.0, 1.1, 3.0}) {
          CHECK(is_rotation(euler_rotation(conv, a1, a2, a3), 1e-14));
        }
      }
    }
  }
  // zyz composition spot check: R_z(a1) R_y(a3) R_z(a2) applied to e_z.
  const Mat3 r = euler_rotation(EulerConvention::zyz, 0.5, 1.2, 0.9);
  const Vec3 image = r * Vec3{0.0, 0.0, 1.0};
  CHECK(image.x == doctest::Approx(std::sin(0.9) * std::cos(0.5)).epsilon(1e-14));
  CHECK(image.y == doctest::Approx(std::sin(0.9) * std::sin(0.5)).epsilon(1e-14));
  CHECK(image.z == doctest::Approx(std::cos(0.9)).epsilon(1e-14));
}

TEST_CASE("rotation grids carry normalized weights") {
  const RotationGrid2D g2(RotationSpec2D{48});
  double sum2 = 0.0;
  for (std::size_t k = 0; k < g2.size(); ++k) sum2 += g2.weight(k);
  CHECK(sum2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g2.size() == 48);

  const RotationGrid3D g3(RotationSpec3D{8, 8, 8, EulerConvention::zyz});
  double sum3 = 0.0;
  for (std::size_t k = 0; k < g3.size(); ++k) {
    CHECK(g3.weight(k) > 0.0);
    CHECK(is_rotation(g3.rotation(k), 1e-13));
    sum3 += g3.weight(k);
  }
  CHECK(sum3 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(g3.size() == 8 * 8 * 8);
}

TEST_CASE("rotationally invariant fields are fixed points of the average") {
  const AnnulusGeometry a(1.0, 2.0);
  const ShellGeometry s(1.0, 2.0);
  const Field2DPtr v2 =
      averaged_extension_2d(a, 1.7, ScalarProfile::polynomial({0.4, -0.2}));
  const Field3DPtr v3 = averaged_extension_3d(s, -2.3);

  const RotationGrid2D g2(RotationSpec2D{32});
  const RotationGrid3D g3(RotationSpec3D{8, 8, 8, EulerConvention::zyz});

  for (double r : {1.1, 1.5, 1.9}) {
    const Vec2 p2{r * std::cos(0.3), r * std::sin(0.3)};
    const Vec2 avg2 = average_at(*v2, p2, g2);
    const Vec2 val2 = v2->value(p2);
    CHECK(std::abs(avg2.x - val2.x) <= 1e-12);
    CHECK(std::abs(avg2.y - val2.y) <= 1e-12);

    const Vec3 p3{r * std::sin(1.2) * std::cos(0.3),
                  r * std::sin(1.2) * std::sin(0.3), r * std::cos(1.2)};
    const Vec3 avg3 = average_at(*v3, p3, g3);
    const Vec3 val3 = v3->value(p3);
    CHECK(std::abs(avg3.x - val3.x) <= 1e-12);
    CHECK(std::abs(avg3.y - val3.y) <= 1e-12);
    CHECK(std::abs(avg3.z - val3.z) <= 1e-12);
  }
}

TEST_CASE("discrete averages are invariant under grid rotations") {
  const AnnulusGeometry a(1.0, 2.0);
  const ShellGeometry s(1.0, 2.0);
  const Field2DPtr u2 = perturbed_extension_2d(
      a, 1.0, ScalarProfile::polynomial({2.0, -3.0, 1.0}),
      ScalarProfile::polynomial({0.5, -0.25}), 3);
  const Field3DPtr u3 = std::make_shared<PerturbedExtension3D>(
      s, 1.0, ScalarProfile::polynomial({2.0, -3.0, 1.0}),
      ScalarProfile::polynomial({-2.0, 3.0, -1.0}));

  const std::size_t n = 16;
  const RotationGrid2D g2(RotationSpec2D{n});
  const Vec2 p2{1.31, 0.42};
  const Vec2 base2 = average_at(*u2, p2, g2);
  // Rotating the input by a grid angle permutes the grid, so the average of
  // the rotated field agrees with the rotated average exactly up to roundoff.
  for (std::size_t k : {std::size_t{1}, std::size_t{5}, std::size_t{11}}) {
    const double alpha = 2.0 * kPi * static_cast<double>(k) / n;
    const Field2DPtr shifted = rotate_field(u2, alpha);
    const Vec2 avg = average_at(*shifted, p2, g2);
    const double c = std::cos(alpha), sn = std::sin(alpha);
    const Vec2 q{c * p2.x + sn * p2.y, -sn * p2.x + c * p2.y};
    const Vec2 expect_raw = average_at(*u2, q, g2);
    const Vec2 expect{c * expect_raw.x - sn * expect_raw.y,
                      sn * expect_raw.x + c * expect_raw.y};
    CHECK(std::abs(avg.x - expect.x) <= 1e-13);
    CHECK(std::abs(avg.y - expect.y) <= 1e-13);
    // And the invariant average itself is unchanged by the shift.
    CHECK(std::abs(avg.x - base2.x) <= 1e-12);
    CHECK(std::abs(avg.y - base2.y) <= 1e-12);
  }

  // Same statement in space for rotations about z by first-angle grid steps.
  const std::size_t n1 = 8;
  const RotationGrid3D g3(RotationSpec3D{n1, 8, 8, EulerConvention::zyz});
  const Vec3 p3{1.2, 0.3, 0.5};
  const Vec3 base3 = average_at(*u3, p3, g3);
  const double beta = 2.0 * kPi * 3.0 / static_cast<double>(n1);
  const Mat3 rz = euler_rotation(EulerConvention::zyz, beta, 0.0, 0.0);
  const Field3DPtr shifted3 = rotate_field(u3, rz);
  const Vec3 avg3 = average_at(*shifted3, p3, g3);
  CHECK(std::abs(avg3.x - base3.x) <= 1e-12);
  CHECK(std::abs(avg3.y - base3.y) <= 1e-12);
  CHECK(std::abs(avg3.z - base3.z) <= 1e-12);
}

TEST_CASE("averaging is linear") {
  const AnnulusGeometry a(1.0, 2.0);
  const Field2DPtr f = test_field_2d(a, 3);
  const Field2DPtr g = perturbed_extension_2d(
      a, 0.9, ScalarProfile::polynomial({2.0, -3.0, 1.0}),
      ScalarProfile::polynomial({0.0, 0.2, -0.1}), 2);
  const Field2DPtr sum = std::make_shared<FieldSum2D>(
      std::vector<std::pair<double, Field2DPtr>>{{1.0, f}, {1.0, g}});
  const RotationGrid2D grid(RotationSpec2D{24});
  for (double r : {1.2, 1.6}) {
    const Vec2 p{r * std::cos(1.1), r * std::sin(1.1)};
    const Vec2 left = average_at(*sum, p, grid);
    const Vec2 right = average_at(*f, p, grid) + average_at(*g, p, grid);
    CHECK(std::abs(left.x - right.x) <= 1e-14);
    CHECK(std::abs(left.y - right.y) <= 1e-14);
  }
}

TEST_CASE("both Euler conventions give the same group average") {
  const ShellGeometry s(1.0, 2.0);
  const Field3DPtr u = std::make_shared<PerturbedExtension3D>(
      s, 1.4, ScalarProfile::polynomial({2.0, -3.0, 1.0}),
      ScalarProfile::polynomial({-1.0, 1.5, -0.5}));
  const RotationGrid3D gzyz(RotationSpec3D{24, 24, 16, EulerConvention::zyz});
  const RotationGrid3D gzxz(RotationSpec3D{24, 24, 16, EulerConvention::zxz});
  const Vec3 p{1.25, 0.4, 0.6};
  const Vec3 a = average_at(*u, p, gzyz);
  const Vec3 b = average_at(*u, p, gzxz);
  CHECK(std::abs(a.x - b.x) <= 1e-8);
  CHECK(std::abs(a.y - b.y) <= 1e-8);
  CHECK(std::abs(a.z - b.z) <= 1e-8);
}

TEST_CASE("quadratic coupling with the average transfers to rotated tests") {
  // The defining property behind the certificates: coupling the averaged
  // extension against a fixed solenoidal u equals the weighted sum of the
  // couplings of the raw extension against counter-rotated copies of u.
  const AnnulusGeometry a(1.0, 2.0);
  const Field2DPtr v = perturbed_extension_2d(
      a, 1.1, ScalarProfile::polynomial({2.0, -3.0, 1.0}),
      ScalarProfile::polynomial({-2.0, 3.0, -1.0}), 2);
  const PolarFieldPtr u = test_field_2d(a, 3);

  const std::size_t n = 16;
  const RotationSpec2D spec{n};
  const Field2DPtr avg = averaged_field_2d(v, spec);
  QuadratureSpec q;
  q.nodes_r = 48;
  q.nodes_theta = 48;

  const double lhs = quadratic_form(*avg, *u, a, q);
  double rhs = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double alpha = 2.0 * kPi * static_cast<double>(k) / n;
    const RotatedField2D uk(u, -alpha);
    rhs += quadratic_form(*v, uk, a, q) / static_cast<double>(n);
  }
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("materialized 2-D average matches the on-demand average at nodes") {
  const AnnulusGeometry geom(1.0, 2.0);
  const SampledField2DPtr raw = synthetic_extension_2d(
      geom, 1.6, ScalarProfile::polynomial({2.0, -3.0, 1.0}),
      ScalarProfile::polynomial({-1.0, 1.5, -0.5}), 3, 33, 32);
  const RotationSpec2D spec{64};
  const SampledField2DPtr avg = average_2d(*raw, spec);
  REQUIRE(avg->nr() == raw->nr());
  REQUIRE(avg->ntheta() == raw->ntheta());

  const RotationGrid2D grid(spec);
  for (std::size_t i : {std::size_t{0}, std::size_t{16}, std::size_t{32}}) {
    for (std::size_t j : {std::size_t{0}, std::size_t{9}, std::size_t{25}}) {
      const double r = avg->node_r(i);
      const double theta = avg->node_theta(j);
      const Vec2 p{r * std::cos(theta), r * std::sin(theta)};
      const Vec2 expect = average_at(*raw, p, grid);
      const Vec2 got = avg->value_polar(r, theta);
      CHECK(std::abs(got.x - expect.x) <= 1e-13);
      CHECK(std::abs(got.y - expect.y) <= 1e-13);
    }
  }
}
