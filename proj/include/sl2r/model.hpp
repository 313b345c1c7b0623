#pragma once

#include <array>
#include <cmath>

#include "sl2r/mat4.hpp"

namespace sl2r {

// Homogeneous coordinates (x0; x1; x2; x3) on the projective sphere.
// Interior points of the model satisfy -x0^2 - x1^2 + x2^2 + x3^2 < 0;
// tuples equal up to a positive scalar denote the same point.
struct ProjectivePoint {
  double x0 = 1.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;

  ProjectivePoint operator*(const Mat4& m) const {
    ProjectivePoint r;
    r.x0 = x0 * m(0, 0) + x1 * m(1, 0) + x2 * m(2, 0) + x3 * m(3, 0);
    r.x1 = x0 * m(0, 1) + x1 * m(1, 1) + x2 * m(2, 1) + x3 * m(3, 1);
    r.x2 = x0 * m(0, 2) + x1 * m(1, 2) + x2 * m(2, 2) + x3 * m(3, 2);
    r.x3 = x0 * m(0, 3) + x1 * m(1, 3) + x2 * m(2, 3) + x3 * m(3, 3);
    return r;
  }
};

inline ProjectivePoint origin() { return {1.0, 0.0, 0.0, 0.0}; }

// Value of the defining quadratic form; negative for interior points.
inline double form_value(const ProjectivePoint& p) {
  return -p.x0 * p.x0 - p.x1 * p.x1 + p.x2 * p.x2 + p.x3 * p.x3;
}

// Fibre-adapted coordinates: r >= 0 radial, theta polar angle, phi the
// fibre coordinate (unrestricted real on the universal cover).
struct HyperboloidCoords {
  double r = 0.0, theta = 0.0, phi = 0.0;
};

// Inhomogeneous model coordinates x = x1/x0, y = x2/x0, z = x3/x0.
struct EuclideanModelPoint {
  double x = 0.0, y = 0.0, z = 0.0;
};

// Isometries act on row vectors on the right and are defined up to a
// positive scalar.
using Isometry = Mat4;

// Metric tensor in hyperboloid coordinates (r, theta, phi).
struct MetricTensor {
  std::array<std::array<double, 3>, 3> g{};
  double det() const;
};

ProjectivePoint normalize(const ProjectivePoint& p);

HyperboloidCoords to_hyperboloid(const ProjectivePoint& p);
ProjectivePoint from_hyperboloid(const HyperboloidCoords& h);

EuclideanModelPoint to_euclidean(const ProjectivePoint& p);
ProjectivePoint from_euclidean(const EuclideanModelPoint& e);

// Coordinate change from a unit-determinant 2x2 real matrix [d b; c a].
ProjectivePoint sl2_to_point(double a, double b, double c, double d,
                             double det_tol = 1e-10);

// One-parameter group of fibre translations S(phi).
Isometry fibre_translation(double phi);

// Translation carrying the origin to p, and its inverse.
Isometry translation_to(const ProjectivePoint& p);
Isometry translation_to_inverse(const ProjectivePoint& p);

// Rotation by omega about the fibre line through the origin.
Isometry rotation_about_origin_fibre(double omega);

// Rotation by omega about the fibre line through x (conjugation by the
// translation carrying x to the origin).
Isometry rotation_about_fibre(const ProjectivePoint& x, double omega);

// Explicit rotation matrix about the fibre through (cosh r, 0, sinh r, 0).
Isometry rotation_about_base_axis_point(double r, double omega);

// Intersection of the fibre through x with the base plane x1 = 0.
ProjectivePoint foot_point(const ProjectivePoint& x);

MetricTensor metric_at(double r);
double volume_element(double r);  // = 1/2 sinh(2r) = sqrt(det g)

// (1.5)-style structural residual of an isometry matrix after scale
// normalization; near zero for genuine isometries.
double isometry_residual(const Isometry& m);

}  // namespace sl2r
