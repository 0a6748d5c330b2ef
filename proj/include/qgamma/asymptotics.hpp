#pragma once

// Large-t limits of the normalized J-function, Apery ratios on the kernel of
// c1, and growth rates of quantum periods.

#include "qgamma/jfunction.hpp"
#include "qgamma/linalg.hpp"
#include "qgamma/ring.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgamma {

struct ExtrapolationConfig {
  std::vector<BigReal> t_grid;  // increasing
  int k = 6;                    // polynomial order in 1/t
  int digits = 50;

  /// k+1 equally spaced points on [t_max/2, t_max].
  static ExtrapolationConfig uniform(const BigReal& t_max, int k, int digits) {
    if (k < 1) throw std::invalid_argument("extrapolation order must be positive");
    ExtrapolationConfig cfg;
    cfg.k = k;
    cfg.digits = digits;
    const Precision p = Precision::digits(digits);
    const BigReal lo = BigReal(t_max, p) / 2L;
    for (int j = 0; j <= k; ++j) cfg.t_grid.push_back(lo + (BigReal(t_max, p) - lo) * BigReal(make_rational(j, k), p));
    return cfg;
  }

  void validate() const {
    if (k < 1 || static_cast<int>(t_grid.size()) < k + 1) throw std::invalid_argument("need at least k+1 grid points");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      if (!(t_grid[i] > 0.0)) throw std::invalid_argument("grid points must be positive");
      if (i && !(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
    }
    if (digits < 15) throw std::invalid_argument("precision must be at least 15 digits");
  }
};

/// Value at x = 0 of the interpolating polynomial through (xs, ys).
inline BigReal neville_at_zero(const std::vector<BigReal>& xs, std::vector<BigReal> ys) {
  const std::size_t n = xs.size();
  if (n == 0 || ys.size() != n) throw std::invalid_argument("neville needs matching nonempty data");
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i) ys[i] = (xs[i + m] * ys[i] - xs[i] * ys[i + 1]) / (xs[i + m] - xs[i]);
  return ys[0];
}

struct AsymptoticClass {
  GradedVector<BigReal> value;
  GradedVector<BigReal> error;  // |order k - order k-1| per component
  BigReal max_error;
};

/// lim J(t)/<[pt], J(t)> by Neville extrapolation in 1/t over the grid.
template <typename S>
AsymptoticClass principal_asymptotic_class(const JSeries<S>& J, const ExtrapolationConfig& cfg) {
  cfg.validate();
  const Precision p = Precision::digits(cfg.digits);
  const auto& grid = cfg.t_grid;
  const std::size_t use = static_cast<std::size_t>(cfg.k) + 1;
  const std::size_t first = grid.size() - use;
  const int size = J.ring->size();
  std::vector<std::vector<BigReal>> samples(static_cast<std::size_t>(size));
  std::vector<BigReal> xs;
  const BigReal tail_tol = tenth_power(cfg.digits - 5, p);
  for (std::size_t g = first; g < grid.size(); ++g) {
    const BigReal t(grid[g], p);
    auto ev = evaluate_j(J, BigComplex(t), BigReal(0L, p), p);
    const BigReal G = ev.value[0].re;
    if (G.is_zero()) throw std::domain_error("<[pt], J(t)> vanishes on the grid");
    if (!ev.converged || !(ev.tail_estimate < tail_tol * abs(G)))
      throw std::domain_error("J-series truncated too early for t = " + t.to_string(6));
    for (int i = 0; i < size; ++i) samples[static_cast<std::size_t>(i)].push_back(ev.value[i].re / G);
    xs.push_back(BigReal(1L, p) / t);
  }
  AsymptoticClass out{GradedVector<BigReal>::zero(J.ring, p), GradedVector<BigReal>::zero(J.ring, p), BigReal(0L, p)};
  const std::vector<BigReal> xs_low(xs.begin() + 1, xs.end());
  for (int i = 0; i < size; ++i) {
    const auto& ys = samples[static_cast<std::size_t>(i)];
    out.value[i] = neville_at_zero(xs, ys);
    const BigReal low = neville_at_zero(xs_low, std::vector<BigReal>(ys.begin() + 1, ys.end()));
    out.error[i] = abs(out.value[i] - low);
    out.max_error = max(out.max_error, out.error[i]);
  }
  return out;
}

struct GammaIVerdict {
  bool pass = false;
  AsymptoticClass limit;
  GradedVector<BigReal> target;
  std::vector<BigReal> component_errors;  // |limit - target|
  int worst_component = 0;
  BigReal worst_error;
};

template <typename S>
GammaIVerdict gamma_I_verdict(const JSeries<S>& J, const ExtrapolationConfig& cfg, const GradedVector<BigReal>& target, const BigReal& tol) {
  GammaIVerdict v;
  v.limit = principal_asymptotic_class(J, cfg);
  v.target = target;
  const Precision p = Precision::digits(cfg.digits);
  v.worst_error = BigReal(0L, p);
  for (int i = 0; i < target.size(); ++i) {
    BigReal e = abs(v.limit.value[i] - target[i]);
    if (e > v.worst_error) {
      v.worst_error = e;
      v.worst_component = i;
    }
    v.component_errors.push_back(e);
  }
  v.pass = v.worst_error < tol;
  return v;
}

/// Compares against the Gamma class of the ring carrying J.
template <typename S>
GammaIVerdict gamma_I_verdict(const JSeries<S>& J, const ExtrapolationConfig& cfg, const ConstantTable& C, const BigReal& tol) {
  return gamma_I_verdict(J, cfg, gamma_class(J.ring, C), tol);
}

// ---------------------------------------------------------------- Apery

/// Matrix of c1 cup: column j holds c1 * e_j.
inline Matrix<Rational> c1_matrix(const RingPtr& R) {
  const auto n = static_cast<std::size_t>(R->size());
  Matrix<Rational> m(n, std::vector<Rational>(n, Rational(0)));
  const auto c1 = first_chern(R);
  for (std::size_t j = 0; j < n; ++j) {
    auto col = cup(c1, GradedVector<Rational>::basis_vector(R, static_cast<int>(j), Precision()));
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col[static_cast<int>(i)];
  }
  return m;
}

/// Homology classes alpha with c1 cap alpha = 0, in dual-basis coordinates.
inline std::vector<HomologyVector> kernel_c1(const RingPtr& R) {
  const auto n = static_cast<std::size_t>(R->size());
  std::vector<HomologyVector> out;
  for (auto& v : null_space(transpose(c1_matrix(R)), n)) {
    // scale to a primitive integer vector
    Integer den = 1;
    for (const auto& q : v) den = lcm(den, Integer(q.get_den()));
    Integer g = 0;
    for (auto& q : v) {
      q *= Rational(den);
      g = gcd(g, Integer(q.get_num()));
    }
    if (g != 0)
      for (auto& q : v) q /= Rational(g);
    out.push_back({R, v});
  }
  return out;
}

inline bool in_kernel_c1(const HomologyVector& a) {
  const auto m = c1_matrix(a.ring);
  for (std::size_t j = 0; j < m.size(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += a.coeffs[i] * m[i][j];
    if (sgn(s) != 0) return false;
  }
  return true;
}

/// One Aitken delta-squared pass.
inline std::vector<BigReal> aitken(const std::vector<BigReal>& x) {
  std::vector<BigReal> out;
  for (std::size_t i = 0; i + 2 < x.size(); ++i) {
    BigReal den = x[i + 2] - x[i + 1] * 2L + x[i];
    if (den.is_zero()) {
      out.push_back(x[i + 2]);
      continue;
    }
    BigReal d = x[i + 1] - x[i];
    out.push_back(x[i] - d * d / den);
  }
  return out;
}

struct AperyResult {
  std::vector<int> n;               // the indices k, with degree d = r k
  std::vector<BigReal> ratios;      // <alpha, J_{rk}> / <[pt], J_{rk}>
  std::vector<BigReal> accelerated; // Aitken pass over the ratios
  std::optional<BigReal> target;    // <alpha, Gamma>
};

template <typename S>
AperyResult apery_ratio(const JSeries<S>& J, const HomologyVector& alpha, int N, Precision p) {
  if (!same_ring(alpha.ring, J.ring)) throw std::invalid_argument("alpha lives on a different ring");
  if (!in_kernel_c1(alpha)) throw std::invalid_argument("alpha is not annihilated by c1");
  if (N < 1 || J.r * N > J.D) throw std::invalid_argument("J-series too short for the requested Apery index");
  AperyResult out;
  for (int k = 1; k <= N; ++k) {
    const auto& Jd = J[J.r * k];
    BigReal num(0L, p);
    for (int i = 0; i < Jd.size(); ++i)
      if (sgn(alpha.coeffs[static_cast<std::size_t>(i)]) != 0) num += to_real(Jd[i], p) * BigReal(alpha.coeffs[static_cast<std::size_t>(i)], p);
    const BigReal den = to_real(Jd[0], p);
    if (den.is_zero()) throw std::domain_error("<[pt], J_d> vanishes");
    out.n.push_back(k);
    out.ratios.push_back(num / den);
  }
  out.accelerated = aitken(out.ratios);
  return out;
}

/// <alpha, Gamma_F>.
inline BigReal apery_target(const HomologyVector& alpha, const ConstantTable& C) {
  return pair_homology(alpha, gamma_class(alpha.ring, C));
}

// ---------------------------------------------------------------- growth

struct GrowthEstimate {
  BigReal raw;        // ((rN)! G_{rN})^{1/(rN)}
  BigReal corrected;  // exp(L) from b_k = r k L + beta log k + c on the last three k
  int terms = 0;
};

inline GrowthEstimate growth_rate(const QuantumPeriod& G, Precision p = Precision::digits(30)) {
  const int r = G.r;
  std::vector<int> ks;
  std::vector<BigReal> bs;
  for (std::size_t d = 1; d < G.G.size(); ++d) {
    if (static_cast<int>(d) % r || sgn(G.G[d]) == 0) continue;
    const Rational c = G.G[d] * Rational(factorial(d));
    ks.push_back(static_cast<int>(d) / r);
    bs.push_back(log(abs(BigReal(c, p))));
  }
  if (ks.size() < 5) throw std::invalid_argument("growth_rate needs at least five nonzero coefficients");
  GrowthEstimate out;
  out.terms = static_cast<int>(ks.size());
  const std::size_t last = ks.size() - 1;
  out.raw = exp(bs[last] / static_cast<long>(r * ks[last]));
  Matrix<BigReal> A;
  std::vector<BigReal> b;
  for (std::size_t i = last - 2; i <= last; ++i) {
    const BigReal k(static_cast<long>(ks[i]), p);
    A.push_back({k * static_cast<long>(r), log(k), BigReal(1L, p)});
    b.push_back(bs[i]);
  }
  out.corrected = exp(solve(A, b)[0]);
  return out;
}

}  // namespace qgamma
