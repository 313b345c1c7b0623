#include <doctest.h>

#include <cmath>
#include <random>

#include "sl2r/errors.hpp"
#include "sl2r/model.hpp"

using namespace sl2r;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("normalization and interior test") {
  const ProjectivePoint p{2.0, 0.0, 1.0, 0.0};
  const ProjectivePoint n = normalize(p);
  CHECK(form_value(n) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(n.x0 / n.x2 == doctest::Approx(2.0));
  CHECK_THROWS_AS(normalize({1.0, 0.0, 1.0, 1.0}), NonInteriorPoint);
  CHECK_THROWS_AS(normalize({0.0, 0.0, 1.0, 0.0}), NonInteriorPoint);
}

TEST_CASE("hyperboloid coordinate round trip") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    HyperboloidCoords h{1.5 * std::fabs(uni(rng)) + 1e-3, kPi * uni(rng),
                        1.4 * uni(rng)};
    const HyperboloidCoords back = to_hyperboloid(from_hyperboloid(h));
    CHECK(back.r == doctest::Approx(h.r).epsilon(1e-12));
    CHECK(std::remainder(back.theta - h.theta, 2.0 * kPi) ==
          doctest::Approx(0.0).epsilon(1e-10));
    CHECK(std::remainder(back.phi - h.phi, 2.0 * kPi) ==
          doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("origin maps to itself") {
  const HyperboloidCoords h = to_hyperboloid(origin());
  CHECK(h.r == doctest::Approx(0.0));
  CHECK(h.theta == 0.0);
  CHECK(h.phi == doctest::Approx(0.0));
}

TEST_CASE("euclidean model chart") {
  const EuclideanModelPoint e = to_euclidean({2.0, 1.0, 0.5, -0.25});
  CHECK(e.x == doctest::Approx(0.5));
  CHECK(e.y == doctest::Approx(0.25));
  CHECK(e.z == doctest::Approx(-0.125));
  CHECK_THROWS_AS(to_euclidean({0.0, 1.0, 0.5, 0.25}), AtInfinity);
}

TEST_CASE("unit-determinant matrix to point") {
  // identity matrix -> origin
  const ProjectivePoint o = sl2_to_point(1.0, 0.0, 0.0, 1.0);
  CHECK(o.x0 == doctest::Approx(1.0));
  CHECK(o.x1 == doctest::Approx(0.0));
  CHECK(o.x2 == doctest::Approx(0.0));
  CHECK(o.x3 == doctest::Approx(0.0));
  CHECK_THROWS_AS(sl2_to_point(1.0, 0.0, 0.0, 2.0), NotUnitDeterminant);
}

TEST_CASE("fibre translation acts as phi shift") {
  const HyperboloidCoords h{0.7, 0.4, 0.2};
  const ProjectivePoint moved = from_hyperboloid(h) * fibre_translation(0.3);
  const HyperboloidCoords out = to_hyperboloid(moved);
  CHECK(out.r == doctest::Approx(h.r).epsilon(1e-12));
  CHECK(out.theta == doctest::Approx(h.theta).epsilon(1e-10));
  CHECK(out.phi == doctest::Approx(h.phi + 0.3).epsilon(1e-12));
}

TEST_CASE("translations carry the origin to the target point") {
  const ProjectivePoint p = from_hyperboloid({0.9, -0.6, 0.5});
  const ProjectivePoint image = origin() * translation_to(p);
  const ProjectivePoint n = normalize(p);
  CHECK(image.x0 == doctest::Approx(n.x0).epsilon(1e-12));
  CHECK(image.x1 == doctest::Approx(n.x1).epsilon(1e-12));
  CHECK(image.x2 == doctest::Approx(n.x2).epsilon(1e-12));
  CHECK(image.x3 == doctest::Approx(n.x3).epsilon(1e-12));

  const ProjectivePoint back = p * translation_to_inverse(p);
  const HyperboloidCoords hb = to_hyperboloid(back);
  CHECK(hb.r == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(hb.phi == doctest::Approx(0.0).epsilon(1e-12));

  const Mat4 prod = translation_to(p) * translation_to_inverse(p);
  CHECK(proportional(prod, Mat4::identity(), 1e-12));
}

TEST_CASE("rotation about the origin fibre") {
  // quarter turn moves a base-plane direction onto the other one
  const ProjectivePoint p{1.0, 0.0, 1.0, 0.0};
  const ProjectivePoint q = p * rotation_about_origin_fibre(kPi / 2.0);
  CHECK(q.x0 == doctest::Approx(1.0));
  CHECK(q.x1 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(q.x2 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(q.x3 == doctest::Approx(1.0));
  // fixes the origin
  const HyperboloidCoords h =
      to_hyperboloid(origin() * rotation_about_origin_fibre(1.1));
  CHECK(h.r == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(h.phi == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("conjugated rotation fixes its centre and matches the explicit matrix") {
  const double r = 0.8, omega = 0.9;
  const ProjectivePoint centre = from_hyperboloid({r, 0.0, 0.0});
  const Isometry rot = rotation_about_fibre(centre, omega);
  const HyperboloidCoords fixed = to_hyperboloid(centre * rot);
  CHECK(fixed.r == doctest::Approx(r).epsilon(1e-12));
  CHECK(fixed.theta == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(fixed.phi == doctest::Approx(0.0).epsilon(1e-12));

  const Isometry explicit_rot = rotation_about_base_axis_point(r, omega);
  CHECK(proportional(rot, explicit_rot, 1e-10));
  CHECK(isometry_residual(rot) < 1e-12);
}

TEST_CASE("foot point lands on the base plane along the fibre") {
  const ProjectivePoint p = from_hyperboloid({0.6, 1.1, 0.5});
  const ProjectivePoint h = normalize(foot_point(p));
  const HyperboloidCoords hc = to_hyperboloid(h);
  CHECK(h.x1 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(hc.r == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(hc.theta == doctest::Approx(1.1).epsilon(1e-10));
  // moving along the fibre does not change the foot point
  const ProjectivePoint h2 = normalize(foot_point(p * fibre_translation(0.4)));
  CHECK(h2.x0 == doctest::Approx(h.x0).epsilon(1e-12));
  CHECK(h2.x2 == doctest::Approx(h.x2).epsilon(1e-12));
  CHECK(h2.x3 == doctest::Approx(h.x3).epsilon(1e-12));
}

TEST_CASE("metric tensor and volume element") {
  const double r = 0.75;
  const MetricTensor g = metric_at(r);
  CHECK(g.g[0][0] == 1.0);
  CHECK(g.g[2][2] == 1.0);
  const double sh2 = std::sinh(r) * std::sinh(r);
  CHECK(g.g[1][2] == doctest::Approx(sh2));
  CHECK(std::sqrt(g.det()) == doctest::Approx(volume_element(r)).epsilon(1e-12));
  CHECK(volume_element(0.0) == 0.0);
  CHECK_THROWS_AS(metric_at(-0.1), NegativeRadius);
  CHECK_THROWS_AS(volume_element(-0.1), NegativeRadius);
}

TEST_CASE("isometry residual flags non-isometries") {
  CHECK(isometry_residual(fibre_translation(0.77)) < 1e-12);
  CHECK(isometry_residual(translation_to(from_hyperboloid({0.5, 0.3, 0.1}))) <
        1e-12);
  Mat4 bogus = Mat4::identity();
  bogus(2, 3) = 0.25;
  CHECK(isometry_residual(bogus) > 1e-3);
}

TEST_CASE("matrix utilities") {
  const Mat4 s = fibre_translation(0.4);
  CHECK(proportional(s * 2.5, s, 1e-12));
  CHECK_FALSE(proportional(s * (-1.0), s, 1e-12));  // only positive scale
  CHECK(proportional(s.power(3), fibre_translation(1.2), 1e-10));
  CHECK(proportional(s.power(-2), fibre_translation(-0.8), 1e-10));
  CHECK(proportional(s * s.inverse(), Mat4::identity(), 1e-12));

  // nullspace of S(pi) - id is empty; of (M - M) is everything
  const Mat4 zero = s - s;
  CHECK(nullspace(zero).size() == 4);
}
