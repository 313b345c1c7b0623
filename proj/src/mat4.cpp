#include "sl2r/mat4.hpp"

#include <algorithm>
#include <cmath>

#include "sl2r/errors.hpp"

namespace sl2r {

Mat4 Mat4::inverse() const {
  // Gauss-Jordan with partial pivoting.
  std::array<std::array<double, 8>, 4> w{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) w[i][j] = (*this)(i, j);
    w[i][4 + i] = 1.0;
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::fabs(w[r][col]) > std::fabs(w[piv][col])) piv = r;
    if (std::fabs(w[piv][col]) < 1e-300) throw Error("Mat4::inverse: singular matrix");
    std::swap(w[piv], w[col]);
    const double d = w[col][col];
    for (int j = 0; j < 8; ++j) w[col][j] /= d;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = w[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < 8; ++j) w[r][j] -= f * w[col][j];
    }
  }
  Mat4 inv;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv(i, j) = w[i][4 + j];
  return inv;
}

Mat4 Mat4::power(int n) const {
  Mat4 base = n >= 0 ? *this : inverse();
  unsigned e = static_cast<unsigned>(n >= 0 ? n : -n);
  Mat4 r = Mat4::identity();
  while (e) {
    if (e & 1u) r = r * base;
    base = base * base;
    e >>= 1u;
  }
  return r;
}

double proportionality_factor(const Mat4& a, const Mat4& b) {
  int idx = 0;
  for (int i = 1; i < 16; ++i)
    if (std::fabs(b.a[i]) > std::fabs(b.a[idx])) idx = i;
  return a.a[idx] / b.a[idx];
}

bool proportional(const Mat4& a, const Mat4& b, double tol) {
  const double scale = a.max_abs();
  if (scale == 0.0) return b.max_abs() == 0.0;
  const double c = proportionality_factor(a, b);
  if (!(c > 0.0)) return false;
  double dev = 0.0;
  for (int i = 0; i < 16; ++i) dev = std::max(dev, std::fabs(a.a[i] - c * b.a[i]));
  return dev <= tol * scale;
}

std::vector<std::array<double, 4>> nullspace(const Mat4& m, double rank_tol) {
  // Row-reduce a working copy with full pivoting on columns tracked by
  // permutation, then read null vectors off the free columns.
  std::array<std::array<double, 4>, 4> w{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w[i][j] = m(i, j);
  const double tol = rank_tol * std::max(m.max_abs(), 1e-300);

  std::array<int, 4> col_of = {0, 1, 2, 3};  // col_of[k] = original column in slot k
  int rank = 0;
  for (int step = 0; step < 4; ++step) {
    // largest remaining pivot
    int pr = -1, pc = -1;
    double best = tol;
    for (int r = rank; r < 4; ++r)
      for (int c = rank; c < 4; ++c)
        if (std::fabs(w[r][c]) > best) {
          best = std::fabs(w[r][c]);
          pr = r;
          pc = c;
        }
    if (pr < 0) break;
    std::swap(w[pr], w[rank]);
    for (int r = 0; r < 4; ++r) std::swap(w[r][pc], w[r][rank]);
    std::swap(col_of[pc], col_of[rank]);
    const double d = w[rank][rank];
    for (int c = rank; c < 4; ++c) w[rank][c] /= d;
    for (int r = 0; r < 4; ++r) {
      if (r == rank) continue;
      const double f = w[r][rank];
      if (f == 0.0) continue;
      for (int c = rank; c < 4; ++c) w[r][c] -= f * w[rank][c];
    }
    ++rank;
  }

  std::vector<std::array<double, 4>> basis;
  for (int free = rank; free < 4; ++free) {
    std::array<double, 4> v{};
    v[col_of[free]] = 1.0;
    for (int r = 0; r < rank; ++r) v[col_of[r]] = -w[r][free];
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    for (double& x : v) x /= n;
    basis.push_back(v);
  }
  return basis;
}

}  // namespace sl2r
