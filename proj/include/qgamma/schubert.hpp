#pragma once

// Grassmannian Gr(r,n): Schubert calculus, the spectrum of c1 at q = 1, the
// abelian/non-abelian J-function, and the Eguchi-Hori-Xiong mirror.
//
// Cohomology is modelled on symmetric functions in x_1..x_r, the Chern roots
// of the dual tautological bundle, so sigma_mu = s_mu(x).

#include "qgamma/jfunction.hpp"
#include "qgamma/laurent.hpp"
#include "qgamma/ring.hpp"
#include "qgamma/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgamma {

/// Weakly decreasing, always padded to r parts.
using Partition = std::vector<int>;

inline void check_grassmannian(int r, int n) {
  if (r < 1 || r > n - 1) throw std::invalid_argument("Gr(r,n) needs 1 <= r <= n-1");
}

inline int partition_size(const Partition& mu) { return std::accumulate(mu.begin(), mu.end(), 0); }

inline std::string partition_label(const Partition& mu) {
  if (partition_size(mu) == 0) return "1";
  const bool wide = std::any_of(mu.begin(), mu.end(), [](int x) { return x > 9; });
  std::string s = "s";
  bool first = true;
  for (int x : mu) {
    if (x == 0) break;
    if (wide && !first) s += ",";
    s += std::to_string(x);
    first = false;
  }
  return s;
}

/// Partitions in the r x w box, by size, then reverse lexicographic.
inline std::vector<Partition> box_partitions(int r, int w) {
  std::vector<Partition> out;
  Partition cur(static_cast<std::size_t>(r));
  std::function<void(int, int)> rec = [&](int i, int bound) {
    if (i == r) {
      out.push_back(cur);
      return;
    }
    for (int v = bound; v >= 0; --v) {
      cur[static_cast<std::size_t>(i)] = v;
      rec(i + 1, v);
    }
  };
  rec(0, w);
  std::stable_sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) { return partition_size(a) < partition_size(b); });
  return out;
}

/// Pieri: sigma_mu * h_k as the horizontal strips of size k in the box.
inline std::vector<Partition> pieri(const Partition& mu, int k, int w) {
  std::vector<Partition> out;
  const int r = static_cast<int>(mu.size());
  Partition lam = mu;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == r) {
      if (left == 0) out.push_back(lam);
      return;
    }
    const int top = std::min(i == 0 ? w : mu[static_cast<std::size_t>(i - 1)], mu[static_cast<std::size_t>(i)] + left);
    for (int v = mu[static_cast<std::size_t>(i)]; v <= top; ++v) {
      lam[static_cast<std::size_t>(i)] = v;
      rec(i + 1, left - (v - mu[static_cast<std::size_t>(i)]));
    }
    lam[static_cast<std::size_t>(i)] = mu[static_cast<std::size_t>(i)];
  };
  rec(0, k);
  return out;
}

/// sigma_mu * sigma_nu in the r x w box, expanding sigma_nu by Jacobi-Trudi
/// in the h's and applying Pieri repeatedly.
inline std::map<Partition, Integer> lr_product(const Partition& mu, const Partition& nu, int w) {
  const int r = static_cast<int>(mu.size());
  if (static_cast<int>(nu.size()) != r) throw std::invalid_argument("partitions of different lengths");
  std::map<Partition, Integer> total;
  for_each_permutation(r, [&](const std::vector<int>& perm, int sign) {
    std::vector<int> hs;
    for (int i = 0; i < r; ++i) {
      const int k = nu[static_cast<std::size_t>(i)] - i + perm[static_cast<std::size_t>(i)];
      if (k < 0) return;
      if (k > 0) hs.push_back(k);
    }
    std::map<Partition, Integer> state{{mu, Integer(1)}};
    for (int k : hs) {
      std::map<Partition, Integer> next;
      for (const auto& [lam, c] : state)
        for (const auto& nl : pieri(lam, k, w)) next[nl] += c;
      state = std::move(next);
    }
    for (const auto& [lam, c] : state) total[lam] += sign * c;
  });
  for (auto it = total.begin(); it != total.end();) it = sgn(it->second) == 0 ? total.erase(it) : std::next(it);
  return total;
}

namespace detail {
inline std::map<Partition, int> partition_index(const std::vector<Partition>& parts) {
  std::map<Partition, int> idx;
  for (std::size_t i = 0; i < parts.size(); ++i) idx[parts[i]] = static_cast<int>(i);
  return idx;
}

/// Coefficients of x^{lambda+delta} in an antisymmetric polynomial.
template <typename S>
GradedVector<S> extract_antisymmetric(const NilpotentPoly<S>& g, const RingPtr& R, const std::vector<Partition>& parts, Precision p) {
  auto out = GradedVector<S>::zero(R, p);
  const int r = g.vars();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<int> e(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) e[static_cast<std::size_t>(j)] = parts[i][static_cast<std::size_t>(j)] + r - 1 - j;
    out[static_cast<int>(i)] = g.at(e);
  }
  return out;
}

/// e^{a x_i} in variable i.
template <typename S>
NilpotentPoly<S> exp_variable(int i, const S& a, int r, int n, Precision p) {
  return NilpotentPoly<S>::variable(i, a, r, n, p).exp_nilpotent();
}
}  // namespace detail

/// Symmetric polynomial in the Chern roots, written in the Schubert basis
/// of R = schubert_ring(r, n).
template <typename S>
GradedVector<S> symmetric_to_schubert(const NilpotentPoly<S>& f, const RingPtr& R, int r, int n, Precision p) {
  if (f.vars() != r || f.nil_order() != n) throw std::invalid_argument("polynomial shape does not match Gr(r,n)");
  return detail::extract_antisymmetric(f * vandermonde<S>(r, n, p), R, box_partitions(r, n - r), p);
}

inline RingPtr schubert_ring(int r, int n) {
  check_grassmannian(r, n);
  const int w = n - r;
  const auto parts = box_partitions(r, w);
  const auto idx = detail::partition_index(parts);
  const auto N = parts.size();
  CohomologyRing R;
  R.name = "Gr(" + std::to_string(r) + "," + std::to_string(n) + ")";
  R.dimension = r * w;
  for (const auto& mu : parts) R.basis.push_back({partition_label(mu), partition_size(mu)});
  R.cup_table.assign(N, std::vector<SparseTerms>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) {
      SparseTerms terms;
      for (const auto& [lam, c] : lr_product(parts[i], parts[j], w)) terms.emplace_back(idx.at(lam), Rational(c));
      R.cup_table[i][j] = terms;
      R.cup_table[j][i] = terms;
    }
  R.integral.assign(N, Rational(0));
  R.integral[N - 1] = 1;
  R.c1.assign(N, Rational(0));
  R.c1[1] = n;
  R.fano_index = n;
  R.chTF.assign(N, Rational(0));
  auto shell = std::make_shared<CohomologyRing>(R);

  // ch(TF) = ch(S^v) ch(Q) = n sum e^{x_i} - sum_{i,j} e^{x_i - x_j}
  const Precision p;
  NilpotentPoly<Rational> ch(r, n, p);
  for (int i = 0; i < r; ++i) {
    ch += detail::exp_variable(i, Rational(1), r, n, p) * Rational(n);
    for (int j = 0; j < r; ++j) {
      if (i == j) {
        ch -= NilpotentPoly<Rational>::constant(Rational(1), r, n, p);
        continue;
      }
      auto diff = NilpotentPoly<Rational>::variable(i, Rational(1), r, n, p) - NilpotentPoly<Rational>::variable(j, Rational(1), r, n, p);
      ch -= diff.exp_nilpotent();
    }
  }
  shell->chTF = symmetric_to_schubert(ch, shell, r, n, p).coeffs();
  return shell;
}

/// Partition labelling basis element i of a Schubert ring.
inline Partition schubert_partition(int r, int n, int i) { return box_partitions(r, n - r).at(static_cast<std::size_t>(i)); }

inline int schubert_index(int r, int n, const Partition& mu) {
  const auto parts = box_partitions(r, n - r);
  auto it = std::find(parts.begin(), parts.end(), mu);
  if (it == parts.end()) throw std::out_of_range("partition outside the box");
  return static_cast<int>(it - parts.begin());
}

/// E_mu = S^mu(S^v), with ch = s_mu(e^{x_1}, ..., e^{x_r}) via Jacobi-Trudi.
inline KClass schur_bundle(const RingPtr& R, int r, int n, const Partition& mu) {
  if (static_cast<int>(mu.size()) != r) throw std::invalid_argument("partition must have r parts");
  const Precision p;
  const int top = mu.empty() ? 0 : mu.front() + r;
  // h_k(e^x) from power sums: k h_k = sum_{i=1}^k p_i h_{k-i}
  std::vector<NilpotentPoly<Rational>> ps(static_cast<std::size_t>(top) + 1, NilpotentPoly<Rational>(r, n, p));
  for (int k = 1; k <= top; ++k)
    for (int j = 0; j < r; ++j) ps[static_cast<std::size_t>(k)] += detail::exp_variable(j, Rational(k), r, n, p);
  std::vector<NilpotentPoly<Rational>> h(static_cast<std::size_t>(top) + 1, NilpotentPoly<Rational>(r, n, p));
  h[0] = NilpotentPoly<Rational>::constant(Rational(1), r, n, p);
  for (int k = 1; k <= top; ++k) {
    NilpotentPoly<Rational> acc(r, n, p);
    for (int i = 1; i <= k; ++i) acc += ps[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(k - i)];
    h[static_cast<std::size_t>(k)] = acc * Rational(1, k);
  }
  NilpotentPoly<Rational> s(r, n, p);
  for_each_permutation(r, [&](const std::vector<int>& perm, int sign) {
    auto term = NilpotentPoly<Rational>::constant(Rational(sign), r, n, p);
    for (int i = 0; i < r; ++i) {
      const int k = mu[static_cast<std::size_t>(i)] - i + perm[static_cast<std::size_t>(i)];
      if (k < 0) return;
      term *= h[static_cast<std::size_t>(k)];
    }
    s += term;
  });
  std::string label = "E(";
  for (int i = 0; i < r; ++i) label += (i ? "," : "") + std::to_string(mu[static_cast<std::size_t>(i)]);
  return KClass(R, symmetric_to_schubert(s, R, r, n, p), label + ")");
}

/// chi(E_mu, E_nu) = det binom(n-1+k_j-l_i, n-1), l = mu+delta, k = nu+delta.
inline Rational euler_matrix_grassmann(const Partition& mu, const Partition& nu, int r, int n) {
  check_grassmannian(r, n);
  if (static_cast<int>(mu.size()) != r || static_cast<int>(nu.size()) != r) throw std::invalid_argument("partitions must have r parts");
  Matrix<Rational> m(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(r)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const long l = mu[static_cast<std::size_t>(i)] + r - 1 - i;
      const long k = nu[static_cast<std::size_t>(j)] + r - 1 - j;
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(polynomial_binomial(k - l, static_cast<unsigned long>(n - 1)));
    }
  return determinant(m);
}

// ---------------------------------------------------------------- Satake

/// Wedge monomials x^{k_1} ^ ... ^ x^{k_r}, keyed by strictly decreasing k.
using AntiSymmetricElement = std::map<std::vector<int>, BigComplex>;

/// x^{k_1} ^ ... ^ x^{k_r} -> sigma_mu with mu_i = k_i - (r - i).
inline GradedVector<BigComplex> satake_map(const AntiSymmetricElement& a, const RingPtr& R, int r, int n, Precision p) {
  check_grassmannian(r, n);
  auto out = GradedVector<BigComplex>::zero(R, p);
  for (const auto& [k, c] : a) {
    if (static_cast<int>(k.size()) != r) throw std::invalid_argument("wedge monomial has the wrong length");
    Partition mu(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
      const int ki = k[static_cast<std::size_t>(i)];
      if (ki < 0 || ki > n - 1) throw std::out_of_range("wedge exponent outside 0..n-1");
      if (i > 0 && ki >= k[static_cast<std::size_t>(i - 1)]) throw std::invalid_argument("wedge exponents must strictly decrease");
      mu[static_cast<std::size_t>(i)] = ki - (r - 1 - i);
    }
    out[schubert_index(r, n, mu)] += c;
  }
  return out;
}

// ---------------------------------------------------------------- spectrum

struct GrassmannSpectrum {
  std::vector<std::vector<int>> tuples;   // K = (k_1 > ... > k_r)
  std::vector<BigComplex> eigenvalues;    // v_K, aligned with tuples
  BigReal T;
  BigReal T_closed;                       // n sin(pi r/n) / sin(pi/n)
  std::vector<std::vector<int>> maximizers;
  bool maximizers_consecutive = false;
  PropertyOReport property_o;
};

inline bool cyclically_consecutive(const std::vector<int>& K, int n) {
  const int r = static_cast<int>(K.size());
  for (int s = 0; s < n; ++s) {
    bool all = true;
    for (int j = 0; j < r && all; ++j) all = std::find(K.begin(), K.end(), (s + j) % n) != K.end();
    if (all) return true;
  }
  return false;
}

/// v_K = xi (v_{k_1} + ... + v_{k_r}), v_k = n e^{-2 pi i k/n}, xi = e^{pi i (r-1)/n}.
inline GrassmannSpectrum grassmann_spectrum(int r, int n, const ConstantTable& C) {
  check_grassmannian(r, n);
  const Precision p = C.precision();
  const BigComplex xi = BigComplex::polar(C.pi() * BigReal(make_rational(r - 1, n), p));
  GrassmannSpectrum out;
  std::vector<int> K(static_cast<std::size_t>(r));
  std::function<void(int, int)> rec = [&](int i, int bound) {
    if (i == r) {
      BigComplex s(0L, p);
      for (int k : K) s += BigComplex::polar(-(C.pi() * BigReal(make_rational(2 * k, n), p))) * static_cast<long>(n);
      out.tuples.push_back(K);
      out.eigenvalues.push_back(xi * s);
      return;
    }
    for (int v = bound; v >= r - 1 - i; --v) {
      K[static_cast<std::size_t>(i)] = v;
      rec(i + 1, v - 1);
    }
  };
  rec(0, n - 1);
  const BigReal tol = C.tolerance(15);
  out.property_o = property_o_report(out.eigenvalues, n, tol);
  out.T = out.property_o.T;
  out.T_closed = sin(C.pi() * BigReal(make_rational(r, n), p)) / sin(C.pi() / static_cast<long>(n)) * static_cast<long>(n);
  out.maximizers_consecutive = true;
  for (std::size_t i = 0; i < out.tuples.size(); ++i)
    if (abs(abs(out.eigenvalues[i]) - out.T) < tol) {
      out.maximizers.push_back(out.tuples[i]);
      out.maximizers_consecutive = out.maximizers_consecutive && cyclically_consecutive(out.tuples[i], n);
    }
  return out;
}

// ---------------------------------------------------------------- J-function

struct BcfkResult {
  JSeries<BigReal> J;
  BigReal imaginary_residue;  // max |Im J_d,i| / max |J_d|, over d
};

/// J-function of Gr(r,n) from r copies of the J-function of P^{n-1}:
/// e^{-pi i (r-1) sigma_1} [prod_{i<j}(x_i - x_j + m_i - m_j) prod_i xi^{n(x_i+m_i)} P_{m_i}(x_i) / Delta]
/// summed over (m_1..m_r) with sum m_i = d/n, where P_m(x) = prod_{k=1}^m (x+k)^{-n}.
inline BcfkResult bcfk_j_series(int r, int n, int D, int digits) {
  check_grassmannian(r, n);
  if (D < 0) throw std::invalid_argument("negative truncation order");
  const auto C = make_constants(std::max(digits, 15), 4);
  const Precision p = C.precision();
  const RingPtr R = schubert_ring(r, n);
  const auto parts = box_partitions(r, n - r);
  const int M = D / n;
  using CP = NilpotentPoly<BigComplex>;

  // P_m in each variable
  std::vector<std::vector<CP>> Pv(static_cast<std::size_t>(r));
  {
    const Precision q;
    auto running = TruncSeries<Rational>::constant(Rational(1), static_cast<std::size_t>(n), q);
    std::vector<TruncSeries<Rational>> Pm;
    for (int m = 0; m <= M; ++m) {
      if (m > 0) running *= TruncSeries<Rational>::linear(Rational(m), Rational(1), static_cast<std::size_t>(n), q).inverse().pow(static_cast<unsigned long>(n));
      Pm.push_back(running);
    }
    for (int i = 0; i < r; ++i)
      for (int m = 0; m <= M; ++m) {
        std::vector<BigComplex> c;
        for (const auto& x : Pm[static_cast<std::size_t>(m)].coeffs()) c.push_back(BigComplex(x, p));
        Pv[static_cast<std::size_t>(i)].push_back(CP::from_series(TruncSeries<BigComplex>(c, p), i, r, n, p));
      }
  }
  const BigComplex one(1L, p);
  const BigReal phase = C.pi() * static_cast<long>(r - 1);
  // prod_i xi^{n x_i} = prod_i e^{pi i (r-1) x_i}
  auto xphase = CP::constant(one, r, n, p);
  for (int i = 0; i < r; ++i) xphase *= detail::exp_variable(i, BigComplex(BigReal(0L, p), phase), r, n, p);
  auto unphase = convert<BigComplex>(first_chern(R), p);
  unphase *= BigComplex(BigReal(0L, p), -phase / static_cast<long>(n));
  const auto untwist = exp_nilpotent(unphase);

  BcfkResult out;
  out.J.ring = R;
  out.J.D = D;
  out.J.r = n;
  out.J.log_class = first_chern(R);
  out.J.coeffs.assign(static_cast<std::size_t>(D) + 1, GradedVector<BigReal>::zero(R, p));
  out.imaginary_residue = BigReal(0L, p);

  std::vector<int> comp(static_cast<std::size_t>(r));
  for (int m = 0; m <= M; ++m) {
    CP sum(r, n, p);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == r - 1) {
        comp[static_cast<std::size_t>(i)] = left;
        BigComplex ph(1L, p);
        for (int c : comp) ph *= BigComplex::polar(phase * static_cast<long>(c));
        auto term = CP::constant(ph, r, n, p);
        for (int a = 0; a < r; ++a) {
          term *= Pv[static_cast<std::size_t>(a)][static_cast<std::size_t>(comp[static_cast<std::size_t>(a)])];
          for (int b = a + 1; b < r; ++b) {
            auto f = CP::variable(a, one, r, n, p) - CP::variable(b, one, r, n, p) +
                     CP::constant(BigComplex(static_cast<long>(comp[static_cast<std::size_t>(a)] - comp[static_cast<std::size_t>(b)]), p), r, n, p);
            term *= f;
          }
        }
        sum += term;
        return;
      }
      for (int v = 0; v <= left; ++v) {
        comp[static_cast<std::size_t>(i)] = v;
        rec(i + 1, left - v);
      }
    };
    rec(0, m);
    auto Jd = cup(untwist, detail::extract_antisymmetric(sum * xphase, R, parts, p));
    BigReal big(0L, p), imag(0L, p);
    for (int i = 0; i < Jd.size(); ++i) {
      big = max(big, abs(Jd[i]));
      imag = max(imag, abs(Jd[i].im));
    }
    if (!big.is_zero()) out.imaginary_residue = max(out.imaginary_residue, imag / big);
    out.J.coeffs[static_cast<std::size_t>(n * m)] = real_part(Jd);
  }
  if (!(out.imaginary_residue < C.tolerance(12)))
    throw std::logic_error("Grassmannian J-function has an imaginary part " + out.imaginary_residue.to_string(5));
  return out;
}

// ---------------------------------------------------------------- mirror

/// Eguchi-Hori-Xiong mirror on the r x (n-r) ladder, X_{i,j} at index
/// (i-1)(n-r) + (j-1): X_{1,1} + sum of arrow ratios + 1/X_{r,n-r}.
inline LaurentPolynomial ehx_mirror(int r, int n) {
  check_grassmannian(r, n);
  const int w = n - r;
  const int m = r * w;
  auto at = [w](int i, int j) { return static_cast<std::size_t>((i - 1) * w + (j - 1)); };
  LaurentPolynomial W(m);
  auto ratio = [&](std::size_t up, std::size_t down) {
    Exponent e(static_cast<std::size_t>(m), 0);
    e[up] = 1;
    e[down] = -1;
    W.add(e, Rational(1));
  };
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j < w; ++j) ratio(at(i, j + 1), at(i, j));
  for (int j = 1; j <= w; ++j)
    for (int i = 1; i < r; ++i) ratio(at(i + 1, j), at(i, j));
  Exponent first(static_cast<std::size_t>(m), 0);
  first[at(1, 1)] = 1;
  W.add(first, Rational(1));
  Exponent last(static_cast<std::size_t>(m), 0);
  last[at(r, w)] = -1;
  W.add(last, Rational(1));
  return W;
}

inline QuantumPeriod ehx_constant_terms(int r, int n, int N, std::size_t max_terms = 50'000'000) {
  return constant_term_series(ehx_mirror(r, n), N, max_terms);
}

}  // namespace qgamma
