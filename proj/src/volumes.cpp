#include "sl2r/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "sl2r/errors.hpp"
#include "sl2r/geodesics.hpp"
#include "sl2r/model.hpp"

namespace sl2r {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double ball_volume(double rho, const QuadratureSpec& spec) {
  if (rho < 0.0 || rho >= kPi / 2.0)
    throw RadiusOutOfRange("ball_volume: need 0 <= rho < pi/2");
  if (rho == 0.0) return 0.0;

  // Inner alpha-integral tolerances one decade tighter than the outer.
  QuadratureSpec inner = spec;
  inner.abs_tol = spec.abs_tol * 0.1;
  inner.rel_tol = spec.rel_tol * 0.1;

  auto integrand = [](double s, double alpha) {
    const GeodesicEval e = geodesic_eval(s, alpha);
    const double jac = std::fabs(e.r_s * e.phi_alpha - e.r_alpha * e.phi_s);
    return 0.5 * std::sinh(2.0 * e.r) * jac;
  };
  auto shell = [&](double s) {
    return integrate([&](double a) { return integrand(s, a); }, 0.0, kPi / 4.0,
                     inner) +
           integrate([&](double a) { return integrand(s, a); }, kPi / 4.0,
                     kPi / 2.0, inner);
  };
  return 4.0 * kPi * integrate(shell, 0.0, rho, spec);
}

McEstimate ball_volume_mc_oracle(double rho, long long n_samples, std::uint64_t seed,
                                 int threads) {
  if (rho < 0.0 || rho >= kPi / 2.0)
    throw RadiusOutOfRange("ball_volume_mc_oracle: need 0 <= rho < pi/2");
  McEstimate out;
  if (rho == 0.0 || n_samples <= 0) return out;

  // Bounding box in (r, theta, phi); r <= s along any geodesic, so the
  // ball fits in r <= rho, and |phi| <= rho on the reachable set.
  const double box = rho * (2.0 * kPi) * (2.0 * rho);
  constexpr long long kBatch = 1 << 14;
  const long long n_batches = (n_samples + kBatch - 1) / kBatch;

  struct BatchSums {
    double w = 0.0, w2 = 0.0;
  };
  std::vector<BatchSums> sums(static_cast<size_t>(n_batches));

  auto run_batch = [&](long long b) {
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ull * (b + 1)));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const long long lo = b * kBatch;
    const long long hi = std::min(n_samples, lo + kBatch);
    BatchSums s;
    for (long long i = lo; i < hi; ++i) {
      const double r = rho * uni(rng);
      const double theta = 2.0 * kPi * uni(rng);
      const double phi = rho * (2.0 * uni(rng) - 1.0);
      double w = 0.0;
      try {
        const ProjectivePoint p = from_hyperboloid({r, theta, phi});
        if (distance_from_origin(p).d <= rho) w = 0.5 * std::sinh(2.0 * r);
      } catch (const Error&) {
        // unreachable sample counts as outside
      }
      s.w += w;
      s.w2 += w * w;
    }
    sums[static_cast<size_t>(b)] = s;
  };

  int n_threads = threads > 0 ? threads
                              : static_cast<int>(std::max(
                                    1u, std::thread::hardware_concurrency()));
  n_threads = static_cast<int>(
      std::min<long long>(n_threads, n_batches));
  if (n_threads <= 1) {
    for (long long b = 0; b < n_batches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&, t] {
        for (long long b = t; b < n_batches; b += n_threads) run_batch(b);
      });
    for (auto& th : pool) th.join();
  }

  double sw = 0.0, sw2 = 0.0;
  for (const BatchSums& s : sums) {
    sw += s.w;
    sw2 += s.w2;
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sw / n;
  const double var = std::max(0.0, sw2 / n - mean * mean);
  out.estimate = box * mean;
  out.std_error = box * std::sqrt(var / n);
  return out;
}

double sector_volume(const RadialCurve& curve, double Phi,
                     const QuadratureSpec& spec) {
  if (!(Phi > 0.0) || !curve.r_of_theta || !(curve.theta_start < curve.theta_end))
    throw InvalidParams("sector_volume: invalid height or curve");
  auto f = [&](double theta) {
    const double r = curve.r_of_theta(theta);
    return 0.25 * (std::cosh(2.0 * r) - 1.0);
  };

  // Side curves of near-ideal base figures have an O(sqrt(1 - b))-wide
  // boundary layer at the vertex angles, so integrate over panels that
  // shrink dyadically into both endpoints instead of one global panel.
  const double a = curve.theta_start, b = curve.theta_end;
  const double half = 0.5 * (b - a);
  constexpr int kLevels = 46;  // innermost width ~ 1.4e-14 * (b - a)
  QuadratureSpec panel = spec;
  panel.abs_tol = spec.abs_tol / (4.0 * kLevels);
  panel.rel_tol = spec.rel_tol / 4.0;
  double sum = 0.0;
  double w = half;
  for (int k = 0; k < kLevels; ++k) {
    sum += integrate(f, a + w / 2.0, a + w, panel);
    sum += integrate(f, b - w, b - w / 2.0, panel);
    w /= 2.0;
  }
  // leftover slivers at the very endpoints contribute O(1e-11) at most;
  // a single non-adaptive panel each is plenty
  QuadratureSpec single = panel;
  single.abs_tol = 1.0;
  sum += integrate(f, a, a + w, single);
  sum += integrate(f, b - w, b, single);
  return Phi * sum;
}

}  // namespace sl2r
