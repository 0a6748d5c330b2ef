#pragma once

// Small dense linear algebra: exact (Rational) elimination for ranks, null
// spaces and determinants; partial-pivoting solves for BigReal.

#include "qgamma/scalars.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qgamma {

template <typename S>
using Matrix = std::vector<std::vector<S>>;

/// Row-reduced echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix<Rational>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && sgn(m[p][col]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Matrix<Rational> m) { return rref(m).size(); }

/// Basis of {v : m v = 0}.
inline std::vector<std::vector<Rational>> null_space(Matrix<Rational> m, std::size_t cols) {
  std::vector<std::vector<Rational>> basis;
  if (m.empty()) {
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<Rational> v(cols, Rational(0));
      v[j] = 1;
      basis.push_back(v);
    }
    return basis;
  }
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(v);
  }
  return basis;
}

inline Rational determinant(Matrix<Rational> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && sgn(m[p][col]) == 0) ++p;
    if (p == n) return Rational(0);
    if (p != col) {
      std::swap(m[p], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

inline Matrix<Rational> transpose(const Matrix<Rational>& m) {
  if (m.empty()) return {};
  Matrix<Rational> t(m[0].size(), std::vector<Rational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

/// Solves a x = b by Gaussian elimination with partial pivoting.
inline std::vector<BigReal> solve(Matrix<BigReal> a, std::vector<BigReal> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[p][col])) p = r;
    if (a[p][col].is_zero()) throw std::domain_error("singular linear system");
    std::swap(a[p], a[col]);
    std::swap(b[p], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const BigReal f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<BigReal> x(n);
  for (std::size_t i = n; i-- > 0;) {
    BigReal acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

/// Cholesky test for positive definiteness.
inline bool positive_definite(const Matrix<BigReal>& a) {
  const std::size_t n = a.size();
  Matrix<BigReal> l(n, std::vector<BigReal>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      BigReal s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s.sign() <= 0) return false;
        l[i][i] = sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return true;
}

}  // namespace qgamma
