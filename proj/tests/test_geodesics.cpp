#include <doctest.h>

#include <cmath>
#include <random>

#include "sl2r/errors.hpp"
#include "sl2r/geodesics.hpp"
#include "sl2r/model.hpp"

using namespace sl2r;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(0.0) == GeodesicRegime::H2Like);
  CHECK(classify_regime(kPi / 4.0) == GeodesicRegime::Light);
  CHECK(classify_regime(-kPi / 4.0) == GeodesicRegime::Light);
  CHECK(classify_regime(1.0) == GeodesicRegime::FibreLike);
}

TEST_CASE("closed form, base-plane direction") {
  const HyperboloidCoords c = geodesic_closed_form(0.8, 0.0);
  CHECK(c.r == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(c.theta == doctest::Approx(0.0));
  CHECK(c.phi == doctest::Approx(0.0));
}

TEST_CASE("closed form, fibre direction") {
  // r = 0, theta = -arctan(tan s), phi = 2s + theta = s for s < pi/2
  const HyperboloidCoords c = geodesic_closed_form(0.7, kPi / 2.0);
  CHECK(c.r == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c.theta == doctest::Approx(-0.7).epsilon(1e-12));
  CHECK(c.phi == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("closed form, light direction") {
  const HyperboloidCoords c = geodesic_closed_form(1.0, kPi / 4.0);
  const double root2 = std::sqrt(2.0);
  CHECK(c.r == doctest::Approx(std::asinh(root2 / 2.0)).epsilon(1e-12));
  CHECK(c.theta == doctest::Approx(-std::atan(root2 / 2.0)).epsilon(1e-12));
  CHECK(c.phi == doctest::Approx(root2 + c.theta).epsilon(1e-12));
}

TEST_CASE("continuity across the light direction") {
  for (double s : {0.3, 1.0, 1.7}) {
    const HyperboloidCoords lo = geodesic_closed_form(s, kPi / 4.0 - 1e-6);
    const HyperboloidCoords mid = geodesic_closed_form(s, kPi / 4.0);
    const HyperboloidCoords hi = geodesic_closed_form(s, kPi / 4.0 + 1e-6);
    CHECK(std::fabs(lo.r - mid.r) < 1e-5);
    CHECK(std::fabs(hi.r - mid.r) < 1e-5);
    CHECK(std::fabs(lo.phi - mid.phi) < 1e-5);
    CHECK(std::fabs(hi.phi - mid.phi) < 1e-5);
  }
}

TEST_CASE("mirror symmetry in alpha") {
  const GeodesicEval plus = geodesic_eval(1.1, 0.6);
  const GeodesicEval minus = geodesic_eval(1.1, -0.6);
  CHECK(minus.r == doctest::Approx(plus.r).epsilon(1e-14));
  CHECK(minus.theta == doctest::Approx(-plus.theta).epsilon(1e-14));
  CHECK(minus.phi == doctest::Approx(-plus.phi).epsilon(1e-14));
}

TEST_CASE("negative arc length rejected") {
  CHECK_THROWS_AS(geodesic_closed_form(-0.1, 0.0), NegativeArcLength);
}

TEST_CASE("unit speed identity on a grid") {
  // (dr/ds)^2 + cosh^2 r sinh^2 r (dtheta/ds)^2 + (dphi/ds + sinh^2 r dtheta/ds)^2 = 1
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      const double s = 0.02 + 1.96 * i / 49.0;
      const double alpha = (kPi / 2.0 - 2e-3) * j / 49.0;
      const GeodesicEval e = geodesic_eval(s, alpha);
      const double sh = std::sinh(e.r), ch = std::cosh(e.r);
      const double speed2 = e.r_s * e.r_s + ch * ch * sh * sh * e.theta_s * e.theta_s +
                            (e.phi_s + sh * sh * e.theta_s) * (e.phi_s + sh * sh * e.theta_s);
      CHECK(std::fabs(speed2 - 1.0) < 1e-9);
    }
}

TEST_CASE("analytic partials match finite differences") {
  const double h = 1e-6;
  for (double s : {0.3, 0.8, 1.5})
    for (double alpha : {0.1, 0.5, 0.9, 1.3}) {
      const GeodesicEval e = geodesic_eval(s, alpha);
      const GeodesicEval sp = geodesic_eval(s + h, alpha);
      const GeodesicEval sm = geodesic_eval(s - h, alpha);
      const GeodesicEval ap = geodesic_eval(s, alpha + h);
      const GeodesicEval am = geodesic_eval(s, alpha - h);
      CHECK(e.r_s == doctest::Approx((sp.r - sm.r) / (2 * h)).epsilon(1e-6));
      CHECK(e.phi_s == doctest::Approx((sp.phi - sm.phi) / (2 * h)).epsilon(1e-6));
      CHECK(e.r_alpha == doctest::Approx((ap.r - am.r) / (2 * h)).epsilon(1e-6));
      CHECK(e.phi_alpha ==
            doctest::Approx((ap.phi - am.phi) / (2 * h)).epsilon(1e-6));
      CHECK(e.theta_alpha ==
            doctest::Approx((ap.theta - am.theta) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("geodesic model point") {
  const EuclideanModelPoint o = geodesic_point({0.0, 1.0, 0.7});
  CHECK(o.x == doctest::Approx(0.0));
  CHECK(o.y == doctest::Approx(0.0));
  CHECK(o.z == doctest::Approx(0.0));

  const EuclideanModelPoint a = geodesic_point({0.5, 0.0, 0.0});
  CHECK(a.x == doctest::Approx(0.0));
  CHECK(a.y == doctest::Approx(std::tanh(0.5)).epsilon(1e-12));
  CHECK(a.z == doctest::Approx(0.0).epsilon(1e-14));

  const EuclideanModelPoint b = geodesic_point({0.5, kPi / 2.0, 0.0});
  CHECK(b.y == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(b.z == doctest::Approx(std::tanh(0.5)).epsilon(1e-12));

  CHECK_THROWS_AS(geodesic_point({kPi / 2.0 + 0.1, 0.0, kPi / 2.0}), ChartOverflow);
}

TEST_CASE("ODE agrees with the closed forms") {
  for (double alpha : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4})
    for (double s : {0.5, 1.0, 1.5, 2.0}) {
      const GeodesicState y = integrate_from_origin(alpha, s, 1e-10);
      const GeodesicEval e = geodesic_eval(s, alpha);
      CHECK(std::fabs(y.r - e.r) < 1e-6);
      CHECK(std::fabs(y.theta - e.theta) < 1e-6);
      CHECK(std::fabs(y.phi - e.phi) < 1e-6);
      CHECK(std::fabs(y.r_dot - e.r_s) < 1e-6);
    }
}

TEST_CASE("ODE start at r = 0 needs the bootstrap") {
  const GeodesicState bad{0.0, 0.0, 0.0, std::cos(0.4), -std::sin(0.4),
                          std::sin(0.4)};
  CHECK_THROWS_AS(integrate_ode(bad, 0.0, 1.0, 1e-10), SingularStart);
}

TEST_CASE("distance to radial and fibre points") {
  const DistanceResult radial =
      distance_from_origin(from_hyperboloid({0.5, 1.2, 0.0}));
  CHECK(radial.d == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(radial.geodesic.alpha == doctest::Approx(0.0));
  CHECK(radial.geodesic.lambda == doctest::Approx(1.2).epsilon(1e-10));

  const DistanceResult fibre =
      distance_from_origin(from_hyperboloid({0.0, 0.0, 0.3}));
  CHECK(fibre.d == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(fibre.geodesic.alpha == doctest::Approx(kPi / 2.0));

  CHECK(distance_from_origin(origin()).d == doctest::Approx(0.0));
}

TEST_CASE("distance solver round trip") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int checked = 0;
  while (checked < 60) {
    const double s = 0.05 + 1.45 * uni(rng);
    const double alpha = (kPi / 2.0 - 1e-3) * uni(rng);
    const double lambda = 2.0 * kPi * uni(rng) - kPi;
    const GeodesicEval e = geodesic_eval(s, alpha);
    if (std::fabs(e.phi) >= kPi / 2.0 - 1e-3) continue;
    const HyperboloidCoords target{e.r, e.theta + lambda, e.phi};
    const DistanceResult res = distance_from_origin(from_hyperboloid(target));
    CHECK(res.d <= s + 1e-8);  // the found geodesic is minimal
    // the returned parameters really hit the target
    const GeodesicEval back = geodesic_eval(res.geodesic.s, res.geodesic.alpha);
    CHECK(back.r == doctest::Approx(e.r).epsilon(1e-7));
    CHECK(back.phi == doctest::Approx(e.phi).epsilon(1e-7));
    ++checked;
  }
}

TEST_CASE("distance is independent of the polar angle") {
  const double base = distance_from_origin(from_hyperboloid({0.6, 0.0, 0.4})).d;
  for (double theta : {0.5, 1.5, 3.0, -2.0}) {
    const double d = distance_from_origin(from_hyperboloid({0.6, theta, 0.4})).d;
    CHECK(d == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("mirror symmetry of the solver") {
  const DistanceResult plus =
      distance_from_origin(from_hyperboloid({0.6, 0.3, 0.4}));
  const DistanceResult minus =
      distance_from_origin(from_hyperboloid({0.6, -0.3, -0.4}));
  CHECK(minus.d == doctest::Approx(plus.d).epsilon(1e-10));
  CHECK(minus.geodesic.alpha == doctest::Approx(-plus.geodesic.alpha));
  CHECK(minus.geodesic.lambda == doctest::Approx(-plus.geodesic.lambda));
}

TEST_CASE("two-point distance is symmetric and isometry invariant") {
  const ProjectivePoint p1 = from_hyperboloid({0.4, 0.7, 0.2});
  const ProjectivePoint p2 = from_hyperboloid({0.7, -0.5, -0.3});
  const double d12 = distance(p1, p2);
  CHECK(d12 == doctest::Approx(distance(p2, p1)).epsilon(1e-8));
  CHECK(distance(p1, p1) == doctest::Approx(0.0).epsilon(1e-10));

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    // random isometry: translation * rotation * fibre shift
    const Isometry g = translation_to(from_hyperboloid(
                           {0.5 * std::fabs(uni(rng)), kPi * uni(rng), 0.5 * uni(rng)})) *
                       rotation_about_origin_fibre(kPi * uni(rng)) *
                       fibre_translation(0.5 * uni(rng));
    CHECK(distance(p1 * g, p2 * g) == doctest::Approx(d12).epsilon(1e-8));
  }
}

TEST_CASE("fibre translation distance") {
  const double d = distance(origin(), origin() * fibre_translation(0.4));
  CHECK(d == doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("out-of-chart targets are rejected") {
  CHECK_THROWS_AS(distance_from_origin(from_hyperboloid({0.2, 0.0, 1.6})),
                  OutOfChart);
}
