#pragma once

// Truncated power series in one nilpotent variable, and dense polynomials in
// several nilpotent variables x_1..x_r with x_i^n = 0.

#include "qgamma/scalars.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace qgamma {

/// Precision of a scalar, for building new scalars of the same kind.
inline Precision scalar_precision(const Rational&) { return Precision(64); }
inline Precision scalar_precision(const BigReal& x) { return x.precision(); }
inline Precision scalar_precision(const BigComplex& z) { return z.precision(); }

/// Series a_0 + a_1 x + ... + a_{N-1} x^{N-1} modulo x^N.
template <typename S>
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(std::size_t order, Precision p) : prec_(p), c_(order, from_rational<S>(Rational(0), p)) {}
  TruncSeries(std::vector<S> coeffs, Precision p) : prec_(p), c_(std::move(coeffs)) {}

  static TruncSeries constant(const S& a, std::size_t order, Precision p) {
    TruncSeries s(order, p);
    if (order) s.c_[0] = a;
    return s;
  }
  /// a + b x
  static TruncSeries linear(const S& a, const S& b, std::size_t order, Precision p) {
    TruncSeries s = constant(a, order, p);
    if (order > 1) s.c_[1] = b;
    return s;
  }

  std::size_t order() const { return c_.size(); }
  Precision precision() const { return prec_; }
  const S& operator[](std::size_t k) const { return c_[k]; }
  S& operator[](std::size_t k) { return c_[k]; }
  const std::vector<S>& coeffs() const { return c_; }

  TruncSeries& operator+=(const TruncSeries& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  TruncSeries& operator*=(const S& a) {
    for (auto& x : c_) x *= a;
    return *this;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(TruncSeries a, const S& s) { return a *= s; }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check(b);
    const std::size_t N = a.order();
    TruncSeries r(N, std::max(a.prec_, b.prec_));
    for (std::size_t i = 0; i < N; ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; i + j < N; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

  /// Multiplicative inverse; requires an invertible constant term.
  TruncSeries inverse() const {
    if (c_.empty() || is_zero(c_[0])) throw std::domain_error("series not invertible");
    const std::size_t N = order();
    TruncSeries r(N, prec_);
    S inv0 = from_rational<S>(Rational(1), prec_);
    inv0 /= c_[0];
    r.c_[0] = inv0;
    for (std::size_t k = 1; k < N; ++k) {
      S acc = from_rational<S>(Rational(0), prec_);
      for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
      r.c_[k] = -(acc * inv0);
    }
    return r;
  }

  /// exp of a series with zero constant term.
  TruncSeries exp_nilpotent() const {
    if (!c_.empty() && !is_zero(c_[0])) throw std::domain_error("exp needs zero constant term");
    const std::size_t N = order();
    // e' = a' e, solved coefficientwise
    TruncSeries e(N, prec_);
    if (!N) return e;
    e.c_[0] = from_rational<S>(Rational(1), prec_);
    for (std::size_t k = 1; k < N; ++k) {
      S acc = from_rational<S>(Rational(0), prec_);
      for (std::size_t j = 1; j <= k; ++j) acc += (c_[j] * e.c_[k - j]) * from_rational<S>(Rational(static_cast<long>(j)), prec_);
      acc *= from_rational<S>(Rational(1, static_cast<long>(k)), prec_);
      e.c_[k] = acc;
    }
    return e;
  }

  /// log of a series with constant term 1.
  TruncSeries log_unipotent() const {
    const S one = from_rational<S>(Rational(1), prec_);
    if (c_.empty() || !is_zero(c_[0] - one)) throw std::domain_error("log needs constant term 1");
    const std::size_t N = order();
    // l' = a'/a
    TruncSeries l(N, prec_);
    for (std::size_t k = 1; k < N; ++k) {
      S acc = c_[k] * from_rational<S>(Rational(static_cast<long>(k)), prec_);
      for (std::size_t j = 1; j < k; ++j) acc -= (l.c_[j] * c_[k - j]) * from_rational<S>(Rational(static_cast<long>(j)), prec_);
      acc *= from_rational<S>(Rational(1, static_cast<long>(k)), prec_);
      l.c_[k] = acc;
    }
    return l;
  }

  TruncSeries pow(unsigned long e) const {
    TruncSeries result = constant(from_rational<S>(Rational(1), prec_), order(), prec_);
    TruncSeries base = *this;
    while (e) {
      if (e & 1UL) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  bool is_zero_series() const {
    return std::all_of(c_.begin(), c_.end(), [](const S& x) { return is_zero(x); });
  }

 private:
  void check(const TruncSeries& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("series order mismatch");
  }

  Precision prec_{};
  std::vector<S> c_;
};

/// Dense polynomial in r variables modulo (x_1^n, ..., x_r^n).
/// Coefficient of x^e is stored at index sum_i e_i n^{r-1-i}.
template <typename S>
class NilpotentPoly {
 public:
  NilpotentPoly() = default;
  NilpotentPoly(int vars, int n, Precision p) : r_(vars), n_(n), prec_(p) {
    if (vars < 1 || n < 1) throw std::invalid_argument("bad nilpotent polynomial shape");
    std::size_t size = 1;
    for (int i = 0; i < vars; ++i) size *= static_cast<std::size_t>(n);
    c_.assign(size, from_rational<S>(Rational(0), p));
  }

  static NilpotentPoly constant(const S& a, int vars, int n, Precision p) {
    NilpotentPoly q(vars, n, p);
    q.c_[0] = a;
    return q;
  }
  /// a * x_i
  static NilpotentPoly variable(int i, const S& a, int vars, int n, Precision p) {
    NilpotentPoly q(vars, n, p);
    if (n > 1) {
      std::vector<int> e(static_cast<std::size_t>(vars), 0);
      e[static_cast<std::size_t>(i)] = 1;
      q.at(e) = a;
    }
    return q;
  }

  int vars() const { return r_; }
  int nil_order() const { return n_; }
  Precision precision() const { return prec_; }
  std::size_t size() const { return c_.size(); }

  std::size_t index(const std::vector<int>& e) const {
    std::size_t idx = 0;
    for (int i = 0; i < r_; ++i) idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(e[static_cast<std::size_t>(i)]);
    return idx;
  }
  std::vector<int> exponent(std::size_t idx) const {
    std::vector<int> e(static_cast<std::size_t>(r_));
    for (int i = r_ - 1; i >= 0; --i) {
      e[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(n_));
      idx /= static_cast<std::size_t>(n_);
    }
    return e;
  }
  const S& at(const std::vector<int>& e) const { return c_[index(e)]; }
  S& at(const std::vector<int>& e) { return c_[index(e)]; }
  const S& operator[](std::size_t i) const { return c_[i]; }
  S& operator[](std::size_t i) { return c_[i]; }

  NilpotentPoly& operator+=(const NilpotentPoly& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  NilpotentPoly& operator-=(const NilpotentPoly& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  NilpotentPoly& operator*=(const S& a) {
    for (auto& x : c_) x *= a;
    return *this;
  }
  friend NilpotentPoly operator+(NilpotentPoly a, const NilpotentPoly& b) { return a += b; }
  friend NilpotentPoly operator-(NilpotentPoly a, const NilpotentPoly& b) { return a -= b; }
  friend NilpotentPoly operator*(NilpotentPoly a, const S& s) { return a *= s; }

  friend NilpotentPoly operator*(const NilpotentPoly& a, const NilpotentPoly& b) {
    a.check(b);
    NilpotentPoly out(a.r_, a.n_, std::max(a.prec_, b.prec_));
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (!is_zero(b.c_[j])) nz.push_back(j);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      const auto ei = a.exponent(i);
      for (std::size_t j : nz) {
        const auto ej = b.exponent(j);
        std::size_t idx = 0;
        bool alive = true;
        for (int v = 0; v < a.r_ && alive; ++v) {
          const int s = ei[static_cast<std::size_t>(v)] + ej[static_cast<std::size_t>(v)];
          if (s >= a.n_) alive = false;
          idx = idx * static_cast<std::size_t>(a.n_) + static_cast<std::size_t>(s);
        }
        if (alive) out.c_[idx] += a.c_[i] * b.c_[j];
      }
    }
    return out;
  }
  NilpotentPoly& operator*=(const NilpotentPoly& o) { return *this = *this * o; }

  /// exp of a polynomial with zero constant term.
  NilpotentPoly exp_nilpotent() const {
    if (!is_zero(c_[0])) throw std::domain_error("exp needs zero constant term");
    NilpotentPoly result = constant(from_rational<S>(Rational(1), prec_), r_, n_, prec_);
    NilpotentPoly term = result;
    const int top = r_ * (n_ - 1);
    for (int k = 1; k <= top; ++k) {
      term = term * *this;
      term *= from_rational<S>(Rational(1, k), prec_);
      result += term;
    }
    return result;
  }

  /// Substitutes a permutation of the variables: x_i -> x_{perm[i]}.
  NilpotentPoly permuted(const std::vector<int>& perm) const {
    NilpotentPoly out(r_, n_, prec_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (is_zero(c_[i])) continue;
      const auto e = exponent(i);
      std::vector<int> f(e.size());
      for (std::size_t v = 0; v < e.size(); ++v) f[static_cast<std::size_t>(perm[v])] = e[v];
      out.at(f) = c_[i];
    }
    return out;
  }

  /// Embeds a one-variable series in variable i.
  static NilpotentPoly from_series(const TruncSeries<S>& s, int i, int vars, int n, Precision p) {
    NilpotentPoly q(vars, n, p);
    std::vector<int> e(static_cast<std::size_t>(vars), 0);
    for (int k = 0; k < n && k < static_cast<int>(s.order()); ++k) {
      e[static_cast<std::size_t>(i)] = k;
      q.at(e) = s[static_cast<std::size_t>(k)];
    }
    return q;
  }

 private:
  void check(const NilpotentPoly& o) const {
    if (o.r_ != r_ || o.n_ != n_) throw std::invalid_argument("nilpotent polynomial shape mismatch");
  }

  int r_ = 0;
  int n_ = 0;
  Precision prec_{};
  std::vector<S> c_;
};

/// Vandermonde product prod_{i<j} (x_i - x_j).
template <typename S>
NilpotentPoly<S> vandermonde(int vars, int n, Precision p) {
  auto one = from_rational<S>(Rational(1), p);
  auto result = NilpotentPoly<S>::constant(one, vars, n, p);
  for (int i = 0; i < vars; ++i)
    for (int j = i + 1; j < vars; ++j)
      result *= NilpotentPoly<S>::variable(i, one, vars, n, p) - NilpotentPoly<S>::variable(j, one, vars, n, p);
  return result;
}

/// Iterates all permutations of {0..k-1} with their signs.
inline void for_each_permutation(int k, const std::function<void(const std::vector<int>&, int)>& fn) {
  std::vector<int> perm(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
  do {
    int inversions = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    fn(perm, inversions % 2 ? -1 : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace qgamma
