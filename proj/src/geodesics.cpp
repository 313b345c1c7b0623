#include "sl2r/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "sl2r/errors.hpp"

namespace sl2r {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Entire-function helpers shared by all three Table-regime rows, as
// functions of u = cos(2 alpha):
//   f1 = sinh(s sqrt(u)) / sqrt(u)   (= sin(s w)/w for u = -w^2)
//   f2 = cosh(s sqrt(u))             (= cos(s w))
//   f3 = tanh(s sqrt(u)) / sqrt(u)   (= tan(s w)/w)
// together with the u-derivatives of f1, f3 and the arctan branch index
// n_branch picked up by f3 past the poles of tan.
struct Helpers {
  double f1, f2, f3, f1u, f3u;
  double n_branch;
};

Helpers eval_helpers(double s, double u) {
  Helpers h{};
  const double x2 = u * s * s;
  if (std::fabs(x2) < 1e-6) {
    // series about the light direction (removable 0/0)
    h.f1 = s * (1.0 + x2 / 6.0 + x2 * x2 / 120.0);
    h.f2 = 1.0 + x2 / 2.0 + x2 * x2 / 24.0;
    h.f3 = s * (1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0);
    h.f1u = s * s * s * (1.0 / 6.0 + x2 / 60.0 + x2 * x2 / 1680.0);
    h.f3u = s * s * s * (-1.0 / 3.0 + 4.0 * x2 / 15.0 - 17.0 * x2 * x2 / 105.0);
    h.n_branch = 0.0;
  } else if (u > 0.0) {
    const double w = std::sqrt(u);
    const double x = s * w;
    h.f1 = std::sinh(x) / w;
    h.f2 = std::cosh(x);
    h.f3 = std::tanh(x) / w;
    h.f1u = (s * h.f2 - h.f1) / (2.0 * u);
    h.f3u = (s / (h.f2 * h.f2) - h.f3) / (2.0 * u);
    h.n_branch = 0.0;
  } else {
    const double w = std::sqrt(-u);
    const double x = s * w;
    h.f2 = std::cos(x);
    if (std::fabs(h.f2) < 1e-14) h.f2 = h.f2 < 0.0 ? -1e-14 : 1e-14;
    h.n_branch = std::floor(x / kPi + 0.5);
    h.f1 = std::sin(x) / w;
    h.f3 = std::tan(x - h.n_branch * kPi) / w;
    h.f1u = (s * h.f2 - h.f1) / (2.0 * u);
    h.f3u = (s / (h.f2 * h.f2) - h.f3) / (2.0 * u);
  }
  return h;
}

GeodesicEval eval_nonneg(double s, double alpha) {
  const double u = std::cos(2.0 * alpha);
  const double c = std::cos(alpha);
  const double n = std::sin(alpha);
  const double du = -2.0 * std::sin(2.0 * alpha);
  const Helpers h = eval_helpers(s, u);

  GeodesicEval e{};
  const double A = c * h.f1;
  const double cosh_r = std::sqrt(1.0 + A * A);
  e.r = std::asinh(A);
  const double B = n * h.f3;
  e.theta = -(std::atan(B) + h.n_branch * kPi);
  e.phi = 2.0 * n * s + e.theta;

  const double A_s = c * h.f2;
  const double A_a = -n * h.f1 + c * h.f1u * du;
  e.r_s = A_s / cosh_r;
  e.r_alpha = A_a / cosh_r;

  const double B_s = n / (h.f2 * h.f2);
  const double B_a = c * h.f3 + n * h.f3u * du;
  const double den = 1.0 + B * B;
  e.theta_s = -B_s / den;
  e.theta_alpha = -B_a / den;
  e.phi_s = 2.0 * n + e.theta_s;
  e.phi_alpha = 2.0 * c * s + e.theta_alpha;
  return e;
}

}  // namespace

GeodesicRegime classify_regime(double alpha) {
  const double a = std::fabs(alpha);
  if (a == kPi / 4.0) return GeodesicRegime::Light;
  return a < kPi / 4.0 ? GeodesicRegime::H2Like : GeodesicRegime::FibreLike;
}

GeodesicEval geodesic_eval(double s, double alpha) {
  if (s < 0.0) throw NegativeArcLength("geodesic_eval: s < 0");
  if (alpha >= 0.0) return eval_nonneg(s, alpha);
  GeodesicEval e = eval_nonneg(s, -alpha);
  e.theta = -e.theta;
  e.phi = -e.phi;
  e.theta_s = -e.theta_s;
  e.phi_s = -e.phi_s;
  e.r_alpha = -e.r_alpha;
  // theta_alpha, phi_alpha keep their sign: d/dalpha (-f(-alpha)) = f'(-alpha)
  return e;
}

HyperboloidCoords geodesic_closed_form(double s, double alpha) {
  const GeodesicEval e = geodesic_eval(s, alpha);
  return {e.r, e.theta, e.phi};
}

EuclideanModelPoint geodesic_point(const GeodesicParams& g) {
  const GeodesicEval e = geodesic_eval(g.s, g.alpha);
  if (std::fabs(e.phi) >= kPi / 2.0)
    throw ChartOverflow("geodesic_point: |phi| >= pi/2");
  const double arg = e.theta - e.phi + g.lambda;
  const double m = std::tanh(e.r) / std::cos(e.phi);
  return {std::tan(e.phi), m * std::cos(arg), m * std::sin(arg)};
}

double jacobian_J(double s, double alpha) {
  const GeodesicEval e = geodesic_eval(s, alpha);
  return std::fabs(e.r_s * e.phi_alpha - e.r_alpha * e.phi_s);
}

// --- ODE -------------------------------------------------------------------

GeodesicState geodesic_ode_rhs(const GeodesicState& y) {
  const double r = y.r;
  const double s2 = std::sinh(2.0 * r);
  const double sh = std::sinh(r);
  GeodesicState d{};
  d.r = y.r_dot;
  d.theta = y.theta_dot;
  d.phi = y.phi_dot;
  d.r_dot = s2 * y.theta_dot * y.phi_dot +
            0.5 * (std::sinh(4.0 * r) - s2) * y.theta_dot * y.theta_dot;
  d.phi_dot = 2.0 * y.r_dot * std::tanh(r) * (2.0 * sh * sh * y.theta_dot + y.phi_dot);
  d.theta_dot = -2.0 * y.r_dot / s2 *
                ((3.0 * std::cosh(2.0 * r) - 1.0) * y.theta_dot + 2.0 * y.phi_dot);
  return d;
}

namespace {

inline void axpy(double a, const GeodesicState& x, GeodesicState& y) {
  y.r += a * x.r;
  y.theta += a * x.theta;
  y.phi += a * x.phi;
  y.r_dot += a * x.r_dot;
  y.theta_dot += a * x.theta_dot;
  y.phi_dot += a * x.phi_dot;
}

}  // namespace

GeodesicState geodesic_ode_step(const GeodesicState& y, double h, double* err_out) {
  // Dormand-Prince 5(4) embedded pair.
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2;
  (void)c3;
  (void)c4;
  (void)c5;

  const GeodesicState k1 = geodesic_ode_rhs(y);
  GeodesicState t = y;
  axpy(h * a21, k1, t);
  const GeodesicState k2 = geodesic_ode_rhs(t);
  t = y;
  axpy(h * a31, k1, t);
  axpy(h * a32, k2, t);
  const GeodesicState k3 = geodesic_ode_rhs(t);
  t = y;
  axpy(h * a41, k1, t);
  axpy(h * a42, k2, t);
  axpy(h * a43, k3, t);
  const GeodesicState k4 = geodesic_ode_rhs(t);
  t = y;
  axpy(h * a51, k1, t);
  axpy(h * a52, k2, t);
  axpy(h * a53, k3, t);
  axpy(h * a54, k4, t);
  const GeodesicState k5 = geodesic_ode_rhs(t);
  t = y;
  axpy(h * a61, k1, t);
  axpy(h * a62, k2, t);
  axpy(h * a63, k3, t);
  axpy(h * a64, k4, t);
  axpy(h * a65, k5, t);
  const GeodesicState k6 = geodesic_ode_rhs(t);

  GeodesicState out = y;
  axpy(h * b1, k1, out);
  axpy(h * b3, k3, out);
  axpy(h * b4, k4, out);
  axpy(h * b5, k5, out);
  axpy(h * b6, k6, out);
  const GeodesicState k7 = geodesic_ode_rhs(out);

  if (err_out) {
    GeodesicState err{};
    axpy(h * e1, k1, err);
    axpy(h * e3, k3, err);
    axpy(h * e4, k4, err);
    axpy(h * e5, k5, err);
    axpy(h * e6, k6, err);
    axpy(h * e7, k7, err);
    *err_out = std::max({std::fabs(err.r), std::fabs(err.theta), std::fabs(err.phi),
                         std::fabs(err.r_dot), std::fabs(err.theta_dot),
                         std::fabs(err.phi_dot)});
  }
  return out;
}

GeodesicState integrate_ode(const GeodesicState& initial, double s_begin,
                            double s_end, double tol) {
  if (initial.r <= 0.0)
    throw SingularStart("integrate_ode: start at r = 0 needs the series bootstrap");
  GeodesicState y = initial;
  double s = s_begin;
  const double span = s_end - s_begin;
  if (span <= 0.0) return y;
  double h = std::min(0.01, span);
  while (s < s_end) {
    h = std::min(h, s_end - s);
    if (h < 1e-14 * std::max(1.0, std::fabs(span)))
      throw StepSizeUnderflow("integrate_ode: step size underflow");
    double err = 0.0;
    const GeodesicState y_new = geodesic_ode_step(y, h, &err);
    if (err <= tol) {
      s += h;
      y = y_new;
    }
    const double fac = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
    h *= std::clamp(fac, 0.2, 5.0);
  }
  return y;
}

GeodesicState integrate_from_origin(double alpha, double s_end, double tol,
                                    double bootstrap) {
  const double s0 = std::min(bootstrap, s_end);
  const GeodesicEval e = geodesic_eval(s0, alpha);
  GeodesicState y{e.r, e.theta, e.phi, e.r_s, e.theta_s, e.phi_s};
  if (s_end <= s0) return y;
  return integrate_ode(y, s0, s_end, tol);
}

// --- Distance solver ---------------------------------------------------------

namespace {

double wrap_pi(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  a -= kPi;
  if (a <= -kPi) a = kPi;
  return a;
}

struct Candidate {
  double s, alpha, lambda, residual;
};

// Damped Newton on F(s, alpha) = (r - rP, phi - phiP).
bool refine(double rP, double phiP, double s, double alpha, double tol,
            Candidate* out) {
  double res = 1e300;
  for (int it = 0; it < 80; ++it) {
    s = std::max(s, 1e-12);
    alpha = std::clamp(alpha, -1e-3, kPi / 2.0 + 1e-3);
    const GeodesicEval e = geodesic_eval(s, std::fabs(alpha));
    const double fr = e.r - rP;
    const double fp = e.phi - phiP;
    res = std::max(std::fabs(fr), std::fabs(fp));
    if (res <= tol) {
      out->s = s;
      out->alpha = std::fabs(alpha);
      out->residual = res;
      return true;
    }
    const double det = e.r_s * e.phi_alpha - e.r_alpha * e.phi_s;
    if (std::fabs(det) < 1e-300) return false;
    const double ds = (fr * e.phi_alpha - fp * e.r_alpha) / det;
    const double da = (e.r_s * fp - e.phi_s * fr) / det;
    double lam = 1.0;
    while (lam > 1e-6) {
      const double s2 = std::max(s - lam * ds, 1e-12);
      const double a2 = std::clamp(alpha - lam * da, 0.0, kPi / 2.0);
      const GeodesicEval e2 = geodesic_eval(s2, a2);
      if (std::fabs(e2.r - rP) + std::fabs(e2.phi - phiP) <
          std::fabs(fr) + std::fabs(fp)) {
        s = s2;
        alpha = a2;
        break;
      }
      lam *= 0.5;
    }
    if (lam <= 1e-6) return false;
  }
  return false;
}

// s with r(s, alpha) = rP on the given branch of the fibre-like arch
// (branch 0: ascending, branch 1: descending); H2-like/light geodesics
// only have branch 0.
bool radial_solve(double rP, double alpha, int branch, double* s_out) {
  const double u = std::cos(2.0 * alpha);
  const double c = std::cos(alpha);
  if (c < 1e-15) return false;
  const double arg = std::sinh(rP) / c;  // target for f1
  if (std::fabs(u) < 1e-12) {
    if (branch != 0) return false;
    *s_out = arg;  // f1 ~ s at the light direction
    return true;
  }
  if (u > 0.0) {
    if (branch != 0) return false;
    const double w = std::sqrt(u);
    *s_out = std::asinh(arg * w) / w;
    return true;
  }
  const double w = std::sqrt(-u);
  const double aw = arg * w;
  if (aw > 1.0) return false;
  const double x1 = std::asin(aw);
  *s_out = branch == 0 ? x1 / w : (kPi - x1) / w;
  return true;
}

}  // namespace

DistanceResult distance_from_origin(const ProjectivePoint& p, double residual_tol) {
  const HyperboloidCoords hc = to_hyperboloid(p);
  double rP = hc.r, thetaP = hc.theta, phiP = hc.phi;
  const bool mirrored = phiP < 0.0;
  if (mirrored) {
    phiP = -phiP;
    thetaP = -thetaP;
  }
  if (phiP >= kPi / 2.0)
    throw OutOfChart("distance_from_origin: |phi_P| >= pi/2");

  DistanceResult res;
  if (phiP < 1e-14) {  // radial geodesic in the base plane
    res.d = rP;
    res.geodesic = {rP, wrap_pi(mirrored ? -thetaP : thetaP), 0.0};
    return res;
  }
  if (rP < 1e-14) {  // fibre geodesic
    res.d = phiP;
    res.geodesic = {phiP, 0.0, mirrored ? -kPi / 2.0 : kPi / 2.0};
    return res;
  }

  // Coarse scan over alpha, two radial branches; Newton on sign changes.
  constexpr int kScan = 129;
  std::vector<Candidate> sols;
  double best_residual = 1e300;
  for (int branch = 0; branch < 2; ++branch) {
    bool have_prev = false;
    double prev_a = 0.0, prev_s = 0.0, prev_g = 0.0;
    for (int i = 0; i < kScan; ++i) {
      const double a = 1e-9 + (kPi / 2.0 - 2e-9) * i / (kScan - 1);
      double s0;
      if (!radial_solve(rP, a, branch, &s0) || s0 > 60.0) {
        // branch boundary: try refining off the last valid sample
        if (have_prev && std::fabs(prev_g) < 1.0) {
          Candidate cand{};
          if (refine(rP, phiP, prev_s, prev_a, residual_tol, &cand)) sols.push_back(cand);
        }
        have_prev = false;
        continue;
      }
      const GeodesicEval e = geodesic_eval(s0, a);
      const double g = e.phi - phiP;
      best_residual = std::min(best_residual, std::fabs(g));
      if (have_prev && prev_g * g <= 0.0) {
        Candidate cand{};
        if (refine(rP, phiP, 0.5 * (prev_s + s0), 0.5 * (prev_a + a), residual_tol,
                   &cand))
          sols.push_back(cand);
      }
      have_prev = true;
      prev_a = a;
      prev_s = s0;
      prev_g = g;
    }
  }

  if (sols.empty()) {
    std::ostringstream msg;
    msg << "distance_from_origin: no convergence, best |phi| residual "
        << best_residual;
    throw NoConvergence(msg.str());
  }

  // Deduplicate and pick the minimal arc length.
  std::sort(sols.begin(), sols.end(),
            [](const Candidate& a, const Candidate& b) { return a.s < b.s; });
  int distinct = 1;
  for (size_t i = 1; i < sols.size(); ++i)
    if (sols[i].s - sols[i - 1].s > 1e-7) ++distinct;
  const Candidate& best = sols.front();

  const GeodesicEval e = geodesic_eval(best.s, best.alpha);
  double lambda = thetaP - e.theta;
  double alpha = best.alpha;
  if (mirrored) {
    lambda = -lambda;
    alpha = -alpha;
  }
  res.d = best.s;
  res.geodesic = {best.s, wrap_pi(lambda), alpha};
  res.residual = best.residual;
  res.branches_found = distinct;
  return res;
}

double distance(const ProjectivePoint& p1, const ProjectivePoint& p2) {
  return distance_from_origin(p2 * translation_to_inverse(p1)).d;
}

}  // namespace sl2r
