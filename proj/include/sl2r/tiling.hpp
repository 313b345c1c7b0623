#pragma once

#include <string>
#include <vector>

#include "sl2r/model.hpp"
#include "sl2r/volumes.hpp"

namespace sl2r {

// Parameters of the prism tiling group pq2_1: a p-rotation about the
// origin's fibre and a q-rotation about a vertex fibre. Valid whenever
// q > 2p / (p - 2), p >= 3.
struct TilingParams {
  int p = 3;
  long long q = 7;  // wide so the q -> infinity limit can be probed
};

bool params_valid(const TilingParams& params);

// b = tanh(vertex distance) of the regular base figure.
double vertex_radius(const TilingParams& params);

// Fibre height Phi = pi - 2 pi/p - 2 pi/q of the prism.
double prism_height(const TilingParams& params);

struct PrismData {
  TilingParams params;
  double b = 0.0;    // tanh of the vertex distance
  double Phi = 0.0;  // prism height
  std::vector<ProjectivePoint> vertices;  // A_1 ... A_p, A_1 at theta = 0
  Isometry gen_a;   // p-rotation about the origin fibre
  Isometry gen_b;   // q-rotation about the A_1 fibre
  Isometry screw_s; // s = b a b
  Isometry tau;     // (ab)^2, a fibre translation by Phi
  ProjectivePoint f0_foot;  // H, foot point of the half-screw axis
  double r_H = 0.0;         // hyperboloid radius of H
};

// Assembles generators and fixed data; the rotation sign of gen_b is the
// one that makes (ab)^2 a fibre translation by Phi.
PrismData build_generators(const TilingParams& params);

struct RelatorCheck {
  std::string word;
  double residual = 0.0;   // deviation from identity (or from S(phi_shift))
  double phi_shift = 0.0;  // fibre translation picked up on the cover
  bool pass = false;
};

struct PresentationReport {
  std::vector<RelatorCheck> relators;
  bool all_pass = false;
};

// Checks each relator of the group presentation up to positive scale;
// words equal to a pure fibre translation on the universal cover are
// reported with their phi-shift instead of failed.
PresentationReport verify_presentation(const PrismData& d, double tol = 1e-10);

// Foot point H of the invariant fibre of the half-screw ab, from the left
// nullspace of (ab - S(Phi/2)).
ProjectivePoint half_screw_axis(const PrismData& d);

// Side curve of the base figure between the vertices at theta = -2 pi/p
// and theta = 0, as r(theta). The curve is the geodesic of the quotient
// metric dr^2 + sinh^2 r cosh^2 r dtheta^2 induced on the base plane by
// projecting along fibres (the side surface is fibred, so its base curve
// is invariant under the half-screw and symmetric about H):
//   tanh(2 r(theta)) * cos(theta + pi/p) = tanh(2 r_H).
// n_samples only sizes the sanity-check sampling.
RadialCurve base_curve(const PrismData& d, int n_samples = 64);

// p times the sector volume over one side curve with height Phi.
double prism_volume(const PrismData& d, const QuadratureSpec& spec = {});

}  // namespace sl2r
