#include "sl2r/tiling.hpp"

#include <cmath>
#include <sstream>

#include "sl2r/errors.hpp"

namespace sl2r {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_valid(const TilingParams& params, const char* where) {
  if (!params_valid(params)) {
    std::ostringstream msg;
    msg << where << ": (p,q) = (" << params.p << "," << params.q
        << ") violates q > 2p/(p-2)";
    throw InvalidParams(msg.str());
  }
}

// Residual of m against the identity up to positive scale.
double identity_residual(const Mat4& m) {
  const Mat4 id = Mat4::identity();
  if (proportional(m, id, 1e-6)) {
    const double c = proportionality_factor(m, id);
    double dev = 0.0;
    for (int i = 0; i < 16; ++i)
      dev = std::max(dev, std::fabs(m.a[i] - c * id.a[i]));
    return dev / m.max_abs();
  }
  return 1.0;
}

}  // namespace

bool params_valid(const TilingParams& params) {
  if (params.p < 3 || params.q < 1) return false;
  return static_cast<double>(params.q) * (params.p - 2) > 2.0 * params.p;
}

double vertex_radius(const TilingParams& params) {
  require_valid(params, "vertex_radius");
  const double t = std::tan(kPi / params.p) * std::tan(kPi / params.q);
  return std::sqrt((1.0 - t) / (1.0 + t));
}

double prism_height(const TilingParams& params) {
  require_valid(params, "prism_height");
  return kPi - 2.0 * kPi / params.p - 2.0 * kPi / params.q;
}

PrismData build_generators(const TilingParams& params) {
  require_valid(params, "build_generators");
  PrismData d;
  d.params = params;
  d.b = vertex_radius(params);
  d.Phi = prism_height(params);

  const double r_v = std::atanh(d.b);
  for (int k = 0; k < params.p; ++k)
    d.vertices.push_back(
        from_hyperboloid({r_v, 2.0 * kPi * k / params.p, 0.0}));

  d.gen_a = rotation_about_origin_fibre(2.0 * kPi / params.p);
  const Isometry s_phi = fibre_translation(d.Phi);
  bool fixed = false;
  for (const double sign : {+1.0, -1.0}) {
    // A_1 sits on the base axis theta = 0, so the closed-form rotation
    // matrix applies directly (fewer roundings than conjugating).
    const Isometry cand =
        rotation_about_base_axis_point(r_v, sign * 2.0 * kPi / params.q);
    const Isometry ab = d.gen_a * cand;
    if (proportional(ab * ab, s_phi, 1e-9)) {
      d.gen_b = cand;
      fixed = true;
      break;
    }
  }
  if (!fixed)
    throw ConventionFailure(
        "build_generators: neither rotation sign gives (ab)^2 = S(Phi)");

  d.screw_s = d.gen_b * d.gen_a * d.gen_b;
  const Isometry ab = d.gen_a * d.gen_b;
  d.tau = ab * ab;

  d.f0_foot = half_screw_axis(d);
  // closed form for the symmetry point of the side curve; the nullspace
  // value matches but artanh amplifies its ~1e-13 rounding badly when
  // the vertex is far out
  d.r_H = 0.5 * std::atanh(std::tanh(2.0 * r_v) * std::cos(kPi / params.p));
  return d;
}

PresentationReport verify_presentation(const PrismData& d, double tol) {
  PresentationReport report;
  const Mat4 a = d.gen_a, b = d.gen_b;
  const Mat4 ai = a.inverse(), bi = b.inverse();
  const Mat4 s = d.screw_s, si = s.inverse();

  auto check_identity = [&](const std::string& word, const Mat4& m) {
    RelatorCheck c;
    c.word = word;
    c.residual = identity_residual(m);
    c.pass = c.residual <= tol;
    report.relators.push_back(c);
  };
  // Words that close up only modulo the fibre centre: report the
  // fibre-translation shift they realize and check against it.
  auto check_fibre = [&](const std::string& word, const Mat4& m, double shift) {
    RelatorCheck c;
    c.word = word;
    c.phi_shift = shift;
    const Mat4 expected = fibre_translation(shift);
    double dev = 1.0;
    if (proportional(m, expected, 1e-6)) {
      const double f = proportionality_factor(m, expected);
      dev = 0.0;
      for (int i = 0; i < 16; ++i)
        dev = std::max(dev, std::fabs(m.a[i] - f * expected.a[i]));
      dev /= m.max_abs();
    }
    c.residual = dev;
    c.pass = c.residual <= tol;
    report.relators.push_back(c);
  };

  check_identity("a^p", a.power(d.params.p));
  check_identity("b^q", b.power(static_cast<int>(d.params.q)));
  check_identity("a s a^-1 s^-1", a * s * ai * si);
  check_fibre("b a b s^-1", b * a * b * si, 0.0);  // s = bab by construction
  const Mat4 ab = a * b;
  const Mat4 ba = b * a;
  check_fibre("(ab)^2", ab * ab, d.Phi);
  check_fibre("(ba)^2", ba * ba, d.Phi);
  // abab a^-1 b^-1 a^-1 b^-1 = abab (baba)^-1, i.e. abab = baba.
  check_identity("abab (baba)^-1", (ab * ab) * (ba * ba).inverse());
  check_identity("tau a tau^-1 a^-1", d.tau * a * d.tau.inverse() * ai);
  check_identity("tau b tau^-1 b^-1", d.tau * b * d.tau.inverse() * bi);

  report.all_pass = true;
  for (const RelatorCheck& c : report.relators) report.all_pass &= c.pass;
  return report;
}

ProjectivePoint half_screw_axis(const PrismData& d) {
  const Mat4 m = (d.gen_a * d.gen_b) - fibre_translation(d.Phi / 2.0);
  // Row vectors X with X m = 0 <=> m^T X^T = 0.
  const auto basis = nullspace(m.transposed());
  // The invariant set is a full fibre line, so the nullspace is the
  // 2-plane spanned by it; a single vector can appear at reduced rank
  // tolerance. Anything else means the half-screw relation failed.
  if (basis.empty() || basis.size() > 2)
    throw DegenerateNullspace("half_screw_axis: nullspace dimension " +
                              std::to_string(basis.size()));
  ProjectivePoint x{basis[0][0], basis[0][1], basis[0][2], basis[0][3]};
  if (!(form_value(x) < 0.0) && basis.size() == 2) {
    x = {basis[0][0] + basis[1][0], basis[0][1] + basis[1][1],
         basis[0][2] + basis[1][2], basis[0][3] + basis[1][3]};
  }
  if (!(form_value(x) < 0.0))
    throw DegenerateNullspace("half_screw_axis: no interior null vector");
  return normalize(foot_point(x));
}

RadialCurve base_curve(const PrismData& d, int n_samples) {
  const double p = d.params.p;
  const double r_v = std::atanh(d.b);
  // computed from the vertex rather than from r_H: tanh(2 r(0)) must hit
  // tanh(2 r_v) exactly even when the vertex is near the ideal boundary
  const double t2H = std::tanh(2.0 * r_v) * std::cos(kPi / p);

  RadialCurve curve;
  curve.theta_start = -2.0 * kPi / p;
  curve.theta_end = 0.0;
  curve.r_of_theta = [t2H, p](double theta) {
    const double c = std::cos(theta + kPi / p);
    return 0.5 * std::atanh(std::min(t2H / c, 1.0 - 1e-15));
  };

  // Sanity checks: endpoints land on the vertices (compared in tanh
  // space, where the test is well conditioned), the midpoint is H, and
  // r is monotone on each half of the arc.
  const double r_end = curve.r_of_theta(0.0);
  if (std::fabs(std::tanh(2.0 * r_end) - std::tanh(2.0 * r_v)) > 1e-12)
    throw EndpointMismatch("base_curve: endpoint misses the vertex");
  if (std::fabs(curve.r_of_theta(-kPi / p) - d.r_H) > 1e-9)
    throw EndpointMismatch("base_curve: midpoint is not H");
  const int n = std::max(n_samples, 8);
  double prev = curve.r_of_theta(-kPi / p);
  for (int i = 1; i <= n; ++i) {
    const double theta = -kPi / p + (kPi / p) * i / n;
    const double r = curve.r_of_theta(theta);
    if (r < prev - 1e-12)
      throw NonMonotoneAngle("base_curve: radius not monotone from H");
    prev = r;
  }
  return curve;
}

double prism_volume(const PrismData& d, const QuadratureSpec& spec) {
  const RadialCurve curve = base_curve(d);
  return d.params.p * sector_volume(curve, d.Phi, spec);
}

}  // namespace sl2r
