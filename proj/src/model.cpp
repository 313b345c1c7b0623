#include "sl2r/model.hpp"

#include <cmath>
#include <limits>

#include "sl2r/errors.hpp"

namespace sl2r {

double MetricTensor::det() const {
  const auto& m = g;
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

ProjectivePoint normalize(const ProjectivePoint& p) {
  const double f = form_value(p);
  if (!(f < 0.0)) throw NonInteriorPoint("normalize: point not interior");
  const double s = std::sqrt(-f);
  return {p.x0 / s, p.x1 / s, p.x2 / s, p.x3 / s};
}

HyperboloidCoords to_hyperboloid(const ProjectivePoint& p0) {
  const ProjectivePoint p = normalize(p0);
  const double c = std::sqrt(p.x0 * p.x0 + p.x1 * p.x1);  // cosh r >= 1
  HyperboloidCoords h;
  h.r = std::acosh(std::max(c, 1.0));
  h.phi = std::atan2(p.x1, p.x0);
  h.theta = h.r > 1e-14 ? h.phi + std::atan2(p.x3, p.x2) : 0.0;
  return h;
}

ProjectivePoint from_hyperboloid(const HyperboloidCoords& h) {
  const double ch = std::cosh(h.r), sh = std::sinh(h.r);
  return {ch * std::cos(h.phi), ch * std::sin(h.phi),
          sh * std::cos(h.theta - h.phi), sh * std::sin(h.theta - h.phi)};
}

EuclideanModelPoint to_euclidean(const ProjectivePoint& p) {
  if (p.x0 == 0.0) throw AtInfinity("to_euclidean: x0 = 0");
  return {p.x1 / p.x0, p.x2 / p.x0, p.x3 / p.x0};
}

ProjectivePoint from_euclidean(const EuclideanModelPoint& e) {
  return {1.0, e.x, e.y, e.z};
}

ProjectivePoint sl2_to_point(double a, double b, double c, double d, double det_tol) {
  if (std::fabs(a * d - b * c - 1.0) > det_tol)
    throw NotUnitDeterminant("sl2_to_point: ad - bc != 1");
  return {(a + d) / 2.0, (b - c) / 2.0, (b + c) / 2.0, (a - d) / 2.0};
}

Isometry fibre_translation(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  Isometry m;
  m(0, 0) = c;  m(0, 1) = s;
  m(1, 0) = -s; m(1, 1) = c;
  m(2, 2) = c;  m(2, 3) = -s;
  m(3, 2) = s;  m(3, 3) = c;
  return m;
}

Isometry translation_to(const ProjectivePoint& q) {
  const ProjectivePoint p = normalize(q);
  Isometry m;
  m(0, 0) = p.x0;  m(0, 1) = p.x1;  m(0, 2) = p.x2;  m(0, 3) = p.x3;
  m(1, 0) = -p.x1; m(1, 1) = p.x0;  m(1, 2) = p.x3;  m(1, 3) = -p.x2;
  m(2, 0) = p.x2;  m(2, 1) = p.x3;  m(2, 2) = p.x0;  m(2, 3) = p.x1;
  m(3, 0) = p.x3;  m(3, 1) = -p.x2; m(3, 2) = -p.x1; m(3, 3) = p.x0;
  return m;
}

Isometry translation_to_inverse(const ProjectivePoint& q) {
  const ProjectivePoint p = normalize(q);
  Isometry m;
  m(0, 0) = p.x0;  m(0, 1) = -p.x1; m(0, 2) = -p.x2; m(0, 3) = -p.x3;
  m(1, 0) = p.x1;  m(1, 1) = p.x0;  m(1, 2) = -p.x3; m(1, 3) = p.x2;
  m(2, 0) = -p.x2; m(2, 1) = -p.x3; m(2, 2) = p.x0;  m(2, 3) = -p.x1;
  m(3, 0) = -p.x3; m(3, 1) = p.x2;  m(3, 2) = p.x1;  m(3, 3) = p.x0;
  return m;
}

Isometry rotation_about_origin_fibre(double omega) {
  const double c = std::cos(omega), s = std::sin(omega);
  Isometry m = Mat4::identity();
  m(2, 2) = c;  m(2, 3) = s;
  m(3, 2) = -s; m(3, 3) = c;
  return m;
}

Isometry rotation_about_fibre(const ProjectivePoint& x, double omega) {
  const ProjectivePoint p = normalize(x);
  return translation_to_inverse(p) * rotation_about_origin_fibre(omega) *
         translation_to(p);
}

Isometry rotation_about_base_axis_point(double r, double omega) {
  const double sh2 = std::sinh(r) * std::sinh(r);
  const double ch2 = std::cosh(r) * std::cosh(r);
  const double s2r = 0.5 * std::sinh(2.0 * r);
  const double c = std::cos(omega), s = std::sin(omega);
  Isometry m;
  m(0, 0) = 1.0 + sh2 - sh2 * c;
  m(0, 1) = sh2 * s;
  m(0, 2) = s2r - s2r * c;
  m(0, 3) = -s2r * s;
  m(1, 0) = -sh2 * s;
  m(1, 1) = 1.0 + sh2 - sh2 * c;
  m(1, 2) = -s2r * s;
  m(1, 3) = -s2r + s2r * c;
  m(2, 0) = -s2r + s2r * c;
  m(2, 1) = -s2r * s;
  m(2, 2) = 1.0 - ch2 + ch2 * c;
  m(2, 3) = ch2 * s;
  m(3, 0) = -s2r * s;
  m(3, 1) = s2r - s2r * c;
  m(3, 2) = -ch2 * s;
  m(3, 3) = 1.0 - ch2 + ch2 * c;
  return m;
}

ProjectivePoint foot_point(const ProjectivePoint& x) {
  if (!(form_value(x) < 0.0)) throw NonInteriorPoint("foot_point: point not interior");
  return {x.x0 * x.x0 + x.x1 * x.x1, 0.0, x.x0 * x.x2 - x.x1 * x.x3,
          x.x0 * x.x3 + x.x1 * x.x2};
}

MetricTensor metric_at(double r) {
  if (r < 0.0) throw NegativeRadius("metric_at: r < 0");
  const double sh2 = std::sinh(r) * std::sinh(r);
  const double ch2 = std::cosh(r) * std::cosh(r);
  MetricTensor t;
  t.g[0][0] = 1.0;
  t.g[1][1] = sh2 * (sh2 + ch2);
  t.g[1][2] = t.g[2][1] = sh2;
  t.g[2][2] = 1.0;
  return t;
}

double volume_element(double r) {
  if (r < 0.0) throw NegativeRadius("volume_element: r < 0");
  return 0.5 * std::sinh(2.0 * r);
}

double isometry_residual(const Isometry& m0) {
  // Scale so that row 0 has form value -1, then check the quadratic and
  // orthogonality conditions on rows 0 and 2.
  auto row_form = [](const Isometry& m, int i, int j) {
    return -m(i, 0) * m(j, 0) - m(i, 1) * m(j, 1) + m(i, 2) * m(j, 2) +
           m(i, 3) * m(j, 3);
  };
  const double f00 = row_form(m0, 0, 0);
  if (!(f00 < 0.0)) return std::numeric_limits<double>::infinity();
  const Isometry m = m0 * (1.0 / std::sqrt(-f00));
  double res = 0.0;
  res = std::max(res, std::fabs(row_form(m, 0, 0) + 1.0));
  res = std::max(res, std::fabs(row_form(m, 2, 2) - 1.0));
  res = std::max(res, std::fabs(row_form(m, 0, 2)));
  res = std::max(res, std::fabs(-m(0, 0) * m(2, 1) + m(0, 1) * m(2, 0) -
                                m(0, 2) * m(2, 3) + m(0, 3) * m(2, 2)));
  return res;
}

}  // namespace sl2r
