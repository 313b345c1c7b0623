#pragma once

#include <functional>

namespace sl2r {

enum class QuadratureRule { GaussLegendre, AdaptiveSimpson };

struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  int max_subdivisions = 48;
  QuadratureRule rule = QuadratureRule::GaussLegendre;
  int nodes = 16;  // Gauss-Legendre points per panel
};

// Adaptive integral of f over [a, b] to the spec's tolerances.
// Throws QuadratureFailure when max_subdivisions is exhausted and
// InvalidParams for a malformed spec.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

}  // namespace sl2r
