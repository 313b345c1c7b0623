#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace sl2r {

// 4x4 real matrix acting on row coordinate vectors on the right:
// composition "g then h" is the product g * h.
struct Mat4 {
  std::array<double, 16> a{};

  double& operator()(int i, int j) { return a[4 * i + j]; }
  double operator()(int i, int j) const { return a[4 * i + j]; }

  static Mat4 identity() {
    Mat4 m;
    m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = 1.0;
    return m;
  }

  Mat4 operator*(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        const double v = (*this)(i, k);
        if (v == 0.0) continue;
        for (int j = 0; j < 4; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }

  Mat4 operator-(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }

  Mat4 operator*(double s) const {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.a[i] = a[i] * s;
    return r;
  }

  Mat4 transposed() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
  }

  Mat4 inverse() const;
  Mat4 power(int n) const;
};

// True when a == c * b for some c > 0, entrywise within tol * max|a|.
bool proportional(const Mat4& a, const Mat4& b, double tol = 1e-10);

// Scale factor c minimizing nothing fancy: a ~ c*b read off at b's
// largest-magnitude entry. Caller checks proportional() first.
double proportionality_factor(const Mat4& a, const Mat4& b);

// Basis of the right nullspace {x : m * x = 0}, columns as 4-vectors.
// rank_tol is relative to the largest entry of m.
std::vector<std::array<double, 4>> nullspace(const Mat4& m, double rank_tol = 1e-9);

}  // namespace sl2r
