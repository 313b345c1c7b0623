#pragma once

#include <cstdint>
#include <functional>

#include "sl2r/quadrature.hpp"

namespace sl2r {

// Ball volume: the double integral of the volume element in geodesic
// coordinates, split at the light direction alpha = pi/4.
double ball_volume(double rho, const QuadratureSpec& spec = {});

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Independent Monte-Carlo check: rejection sampling of the volume element
// over a bounding box in (r, theta, phi) with membership decided by the
// distance solver. Deterministic for a fixed seed, including when batches
// run on several threads.
McEstimate ball_volume_mc_oracle(double rho, long long n_samples, std::uint64_t seed,
                                 int threads = 0);

// Radius as a function of polar angle over [theta_start, theta_end].
struct RadialCurve {
  double theta_start = 0.0;
  double theta_end = 0.0;
  std::function<double(double)> r_of_theta;
};

// Volume of the sector-like solid of fibre height Phi over the base
// region {0 <= r <= r(theta)}: Phi * integral of (cosh 2r - 1)/4 dtheta.
double sector_volume(const RadialCurve& curve, double Phi,
                     const QuadratureSpec& spec = {});

}  // namespace sl2r
