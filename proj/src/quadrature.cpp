#include "sl2r/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "sl2r/errors.hpp"

namespace sl2r {

namespace {

struct GLRule {
  std::vector<double> x, w;  // nodes and weights on [-1, 1]
};

// Nodes from Newton iteration on P_n, seeded by the Chebyshev estimate.
GLRule make_gl_rule(int n) {
  GLRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.x[i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GLRule& gl_rule(int n) {
  static std::map<int, GLRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gl_rule(n)).first;
  return it->second;
}

double gl_panel(const std::function<double(double)>& f, double a, double b,
                const GLRule& rule) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (size_t i = 0; i < rule.x.size(); ++i)
    sum += rule.w[i] * f(mid + half * rule.x[i]);
  return half * sum;
}

struct Budget {
  int left;
};

// Compare one panel against its two halves; recurse on disagreement.
double adaptive_gl(const std::function<double(double)>& f, double a, double b,
                   double whole, const GLRule& rule, double tol, Budget& budget) {
  const double mid = 0.5 * (a + b);
  const double l = gl_panel(f, a, mid, rule);
  const double r = gl_panel(f, mid, b, rule);
  const double err = std::fabs(l + r - whole);
  if (err <= tol) return l + r;
  if (--budget.left < 0)
    throw QuadratureFailure("integrate: subdivision budget exhausted");
  return adaptive_gl(f, a, mid, l, rule, 0.5 * tol, budget) +
         adaptive_gl(f, mid, b, r, rule, 0.5 * tol, budget);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        Budget& budget) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (std::fabs(err) <= 15.0 * tol) return left + right + err / 15.0;
  if (--budget.left < 0)
    throw QuadratureFailure("integrate: subdivision budget exhausted");
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, budget) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, budget);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.nodes < 2 ||
      spec.max_subdivisions < 1)
    throw InvalidParams("integrate: malformed quadrature spec");
  if (a == b) return 0.0;
  const double sign = a < b ? 1.0 : -1.0;
  if (sign < 0.0) std::swap(a, b);

  Budget budget{1 << std::min(spec.max_subdivisions, 24)};
  double result;
  if (spec.rule == QuadratureRule::GaussLegendre) {
    const GLRule& rule = gl_rule(spec.nodes);
    const double whole = gl_panel(f, a, b, rule);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(whole));
    result = adaptive_gl(f, a, b, whole, rule, tol, budget);
  } else {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(whole));
    result = adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, budget);
  }
  return sign * result;
}

}  // namespace sl2r
