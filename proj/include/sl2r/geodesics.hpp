#pragma once

#include <vector>

#include "sl2r/model.hpp"

namespace sl2r {

// Unit-speed geodesic from the origin: arc length s, longitude lambda,
// altitude alpha.
struct GeodesicParams {
  double s = 0.0;
  double lambda = 0.0;
  double alpha = 0.0;
};

enum class GeodesicRegime { H2Like, Light, FibreLike };

GeodesicRegime classify_regime(double alpha);

// Closed-form geodesic coordinates at arc length s together with the
// analytic partial derivatives needed by the distance solver and the
// ball-volume Jacobian. theta is continued across arctan branch cuts so
// the curve stays smooth in s; negative alpha is handled by the mirror
// symmetry (r, theta, phi)(s, -alpha) = (r, -theta, -phi)(s, alpha).
struct GeodesicEval {
  double r, theta, phi;
  double r_s, r_alpha;
  double theta_s, theta_alpha;
  double phi_s, phi_alpha;
};

GeodesicEval geodesic_eval(double s, double alpha);

// Coordinates only; throws NegativeArcLength for s < 0.
HyperboloidCoords geodesic_closed_form(double s, double alpha);

// Model embedding of the geodesic point with longitude lambda.
EuclideanModelPoint geodesic_point(const GeodesicParams& g);

// |d(r,phi)/d(s,alpha)| of the closed forms.
double jacobian_J(double s, double alpha);

// --- Geodesic ODE (independent cross-check of the closed forms) -----------

// Integration state: coordinates and their s-derivatives.
struct GeodesicState {
  double r, theta, phi;
  double r_dot, theta_dot, phi_dot;
};

GeodesicState geodesic_ode_rhs(const GeodesicState& y);

// One embedded Dormand-Prince step; returns the 5th-order solution and a
// local error estimate through err_out.
GeodesicState geodesic_ode_step(const GeodesicState& y, double h, double* err_out);

// Adaptive integration from s_begin to s_end with local error <= tol.
GeodesicState integrate_ode(const GeodesicState& initial, double s_begin,
                            double s_end, double tol);

// Convenience: integrate the geodesic with altitude alpha from the origin,
// bootstrapped off the r = 0 coordinate singularity by one short
// closed-form step.
GeodesicState integrate_from_origin(double alpha, double s_end, double tol,
                                    double bootstrap = 1e-4);

// --- Distance solver -------------------------------------------------------

struct DistanceResult {
  double d = 0.0;
  GeodesicParams geodesic;
  double residual = 0.0;
  int branches_found = 1;  // >1 flags multiple scan-detected solutions
};

// Minimal geodesic arc length from the origin; requires |phi_P| < pi/2.
DistanceResult distance_from_origin(const ProjectivePoint& p,
                                    double residual_tol = 1e-10);

double distance(const ProjectivePoint& p1, const ProjectivePoint& p2);

}  // namespace sl2r
