#pragma once

// Truncated J-functions J(t) = e^{L log t} sum_d J_d t^d (L = c1 unless the
// series was transported from another space), quantum periods, quantum
// Lefschetz, and the quintic Picard-Fuchs check.

#include "qgamma/ring.hpp"
#include "qgamma/ring_json.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgamma {

template <typename S>
struct JSeries {
  RingPtr ring;
  int D = 0;           // highest degree kept
  int r = 1;           // Fano index; J_d = 0 unless r | d
  std::vector<GradedVector<S>> coeffs;  // J_0..J_D
  GradedVector<Rational> log_class;     // the class multiplying log t

  const GradedVector<S>& operator[](int d) const { return coeffs[static_cast<std::size_t>(d)]; }
};

/// Quantum period G(t) = sum G_d t^d.
struct QuantumPeriod {
  std::vector<Rational> G;
  int r = 1;
};

/// Tensor product of graded vectors on the factors of tensor_ring(A, B).
template <typename S>
GradedVector<S> tensor_vectors(const GradedVector<S>& a, const GradedVector<S>& b, const RingPtr& AB, Precision p) {
  auto out = GradedVector<S>::zero(AB, p);
  const int nb = b.size();
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) out[i * nb + j] = a[i] * b[j];
  return out;
}

/// J-function of P^{n-1}: J_{nd} = prod_{k=1}^d (h+k)^{-n} mod h^n.
inline JSeries<Rational> j_projective(int n, int D) {
  if (n < 2) throw std::invalid_argument("j_projective needs n >= 2");
  if (D < 0) throw std::invalid_argument("negative truncation order");
  JSeries<Rational> J;
  J.ring = build_projective_ring(n);
  J.D = D;
  J.r = n;
  J.log_class = first_chern(J.ring);
  const Precision p;
  const auto N = static_cast<std::size_t>(n);
  J.coeffs.assign(static_cast<std::size_t>(D) + 1, GradedVector<Rational>::zero(J.ring, p));
  auto running = TruncSeries<Rational>::constant(Rational(1), N, p);
  for (int d = 0; n * d <= D; ++d) {
    if (d > 0) {
      auto factor = TruncSeries<Rational>::linear(Rational(d), Rational(1), N, p).inverse().pow(static_cast<unsigned long>(n));
      running *= factor;
    }
    J.coeffs[static_cast<std::size_t>(n * d)] = GradedVector<Rational>(J.ring, running.coeffs());
  }
  return J;
}

/// J-function of a product: J_d = sum_{d1+d2=d} J1_{d1} (x) J2_{d2}.
template <typename S>
JSeries<S> j_tensor(const JSeries<S>& A, const JSeries<S>& B, Precision p = Precision()) {
  JSeries<S> J;
  J.ring = tensor_ring(A.ring, B.ring);
  J.D = std::min(A.D, B.D);
  J.r = std::gcd(A.r, B.r);
  J.log_class = tensor_vectors(A.log_class, GradedVector<Rational>::unit(B.ring, p), J.ring, p) +
                tensor_vectors(GradedVector<Rational>::unit(A.ring, p), B.log_class, J.ring, p);
  J.coeffs.assign(static_cast<std::size_t>(J.D) + 1, GradedVector<S>::zero(J.ring, p));
  for (int d1 = 0; d1 <= J.D; ++d1) {
    if (A[d1].is_zero_vector()) continue;
    for (int d2 = 0; d1 + d2 <= J.D; ++d2) {
      if (B[d2].is_zero_vector()) continue;
      J.coeffs[static_cast<std::size_t>(d1 + d2)] += tensor_vectors(A[d1], B[d2], J.ring, p);
    }
  }
  return J;
}

/// J-function of P^{n_1-1} x P^{n_2-1} x ...
inline JSeries<Rational> j_product(const std::vector<int>& ns, int D) {
  if (ns.empty()) throw std::invalid_argument("empty product");
  auto J = j_projective(ns.front(), D);
  for (std::size_t i = 1; i < ns.size(); ++i) J = j_tensor(J, j_projective(ns[i], D));
  return J;
}

struct LefschetzResult {
  JSeries<Rational> JY;
  JSeries<Rational> raw;   // before the e^{-c0 t} factor
  Rational c0;             // a! <[pt], J_r> when r - a = 1, else 0
  Rational c0_mirror_map;  // delta_{a,n} a!
  bool c0_consistent = true;
  BigReal T0;
};

/// Restriction i*: H(P^n) -> ambient part of H(Y), dropping h^n.
inline GradedVector<Rational> restrict_to_hypersurface(const GradedVector<Rational>& v, const RingPtr& Y) {
  std::vector<Rational> c(v.coeffs().begin(), v.coeffs().begin() + Y->size());
  return GradedVector<Rational>(Y, std::move(c));
}

/// J_Y(t) = e^{(r-a)h log t - c0 t} sum_k prod_{j=1}^{ak}(ah+j) i*J_{rk} t^{(r-a)k},
/// with e^{-c0 t} multiplied into the series. The Cauchy product is quadratic
/// in D; with apply_shift = false JY is left equal to raw.
inline LefschetzResult quantum_lefschetz(const JSeries<Rational>& JX, int a, Precision p = Precision::digits(50), bool apply_shift = true) {
  const int n = JX.ring->size() - 1;  // JX lives on P^n
  const int r = n + 1;
  if (JX.r != r || JX.ring->dimension != n) throw std::invalid_argument("quantum_lefschetz needs the J-function of P^n");
  if (a <= 0 || a >= r) throw std::invalid_argument("hypersurface degree must satisfy 0 < a < n+1");
  const RingPtr Y = build_hypersurface_ambient_ring(n, a);
  const int index = r - a;
  const int kmax = JX.D / r;
  const Precision q;
  const auto N = static_cast<std::size_t>(Y->size());

  JSeries<Rational> raw;
  raw.ring = Y;
  raw.D = index * kmax;
  raw.r = index;
  raw.log_class = first_chern(Y);
  raw.coeffs.assign(static_cast<std::size_t>(raw.D) + 1, GradedVector<Rational>::zero(Y, q));
  auto twist = TruncSeries<Rational>::constant(Rational(1), N, q);
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0)
      for (int j = a * (k - 1) + 1; j <= a * k; ++j) twist *= TruncSeries<Rational>::linear(Rational(j), Rational(a), N, q);
    auto v = restrict_to_hypersurface(JX[r * k], Y);
    raw.coeffs[static_cast<std::size_t>(index * k)] = cup(GradedVector<Rational>(Y, twist.coeffs()), v);
  }

  LefschetzResult out{raw, raw, Rational(0), Rational(0), true, BigReal(0L, p)};
  if (index == 1) {
    if (JX.D < r) throw std::invalid_argument("quantum_lefschetz needs D >= n+1 to read c0");
    out.c0 = Rational(factorial(static_cast<unsigned long>(a))) * JX[r][0];
  }
  out.c0_mirror_map = (a == n) ? Rational(factorial(static_cast<unsigned long>(a))) : Rational(0);
  out.c0_consistent = out.c0 == out.c0_mirror_map;

  if (apply_shift && sgn(out.c0) != 0) {
    // Cauchy product with e^{-c0 t}
    std::vector<Rational> e(static_cast<std::size_t>(raw.D) + 1);
    e[0] = 1;
    for (int j = 1; j <= raw.D; ++j) e[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(j - 1)] * (-out.c0) / j;
    auto shifted = raw;
    for (int d = 0; d <= raw.D; ++d) {
      auto acc = GradedVector<Rational>::zero(Y, q);
      for (int j = 0; j <= d; ++j) {
        if (raw[d - j].is_zero_vector()) continue;
        acc += raw[d - j] * e[static_cast<std::size_t>(j)];
      }
      shifted.coeffs[static_cast<std::size_t>(d)] = acc;
    }
    out.JY = shifted;
  }
  // (T0/(r-a))^{r-a} = a^a (T_X/r)^r with T_X = r
  out.T0 = pow(BigReal(static_cast<long>(a), p), BigReal(make_rational(a, index), p)) * static_cast<long>(index);
  return out;
}

struct JEvaluation {
  GradedVector<BigComplex> value;
  BigReal tail_estimate;
  bool converged = false;  // terms were decreasing at the truncation order
};

/// e^{L (log|t| + i log_branch)} sum_d J_d t^d at precision p.
template <typename S>
JEvaluation evaluate_j(const JSeries<S>& J, const BigComplex& t, const BigReal& log_branch, Precision p) {
  auto sum = GradedVector<BigComplex>::zero(J.ring, p);
  BigComplex tp(1L, p);
  BigReal last(0L, p), previous(0L, p);
  bool have_last = false, have_previous = false;
  for (int d = 0; d <= J.D; ++d) {
    if (d > 0) tp *= t;
    const auto& c = J[d];
    if (c.is_zero_vector()) continue;
    BigReal mag(0L, p);
    for (int i = 0; i < c.size(); ++i) {
      BigComplex term = to_complex(c[i], p) * tp;
      mag = max(mag, abs(term));
      sum[i] += term;
    }
    previous = last;
    have_previous = have_last;
    last = mag;
    have_last = true;
  }
  BigReal logabs = log(abs(t));
  auto L = convert<BigComplex>(J.log_class, p);
  L *= BigComplex(logabs, log_branch);
  JEvaluation out{cup(exp_nilpotent(L), sum), last * 2L, have_previous && last < previous};
  return out;
}

/// G_d = <[pt], J_d>.
template <typename S>
std::vector<S> point_coefficients(const JSeries<S>& J) {
  std::vector<S> out;
  for (int d = 0; d <= J.D; ++d) out.push_back(J[d][0]);
  return out;
}

inline QuantumPeriod quantum_period(const JSeries<Rational>& J) { return {point_coefficients(J), J.r}; }

struct PicardFuchsReport {
  bool annihilated = true;      // all epsilon residuals vanish
  bool shadow_holds = true;     // the integer recursion at epsilon = 0
  int order = 0;
  std::vector<std::string> residuals;  // per n, the residual as a polynomial in epsilon
};

/// A_n(e) = prod_{j=1}^{5n} (j + 5e) / prod_{j=1}^{n} (j + e)^5 in Q[e]/(e^4).
inline TruncSeries<Rational> quintic_coefficient(int n) {
  const Precision p;
  auto num = TruncSeries<Rational>::constant(Rational(1), 4, p);
  for (int j = 1; j <= 5 * n; ++j) num *= TruncSeries<Rational>::linear(Rational(j), Rational(5), 4, p);
  auto den = TruncSeries<Rational>::constant(Rational(1), 4, p);
  for (int j = 1; j <= n; ++j) den *= TruncSeries<Rational>::linear(Rational(j), Rational(1), 4, p).pow(5);
  return num * den.inverse();
}

/// (5n)!/(n!)^5
inline Integer quintic_integer(int n) {
  Integer den = 1;
  for (int i = 0; i < 5; ++i) den *= factorial(static_cast<unsigned long>(n));
  return factorial(static_cast<unsigned long>(5 * n)) / den;
}

/// Applies theta^4 - 5^5 t^5 (theta+1)(theta+2)(theta+3)(theta+4) to
/// sum_n A_n(e) t^{5n+5e}; the coefficient of t^{5n+5e} is
/// (5n+5e)^4 A_n - 5^5 prod_{j=1}^4 (5(n-1)+j+5e) A_{n-1}.
inline PicardFuchsReport quintic_pf_annihilation(int order) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  const Precision p;
  PicardFuchsReport rep;
  rep.order = order;
  auto prev = quintic_coefficient(0);
  {
    // n = 0: (5e)^4 = 625 e^4 = 0
    auto theta = TruncSeries<Rational>::linear(Rational(0), Rational(5), 4, p).pow(4);
    auto res = theta * prev;
    rep.annihilated = rep.annihilated && res.is_zero_series();
  }
  for (int n = 1; n <= order; ++n) {
    auto cur = quintic_coefficient(n);
    auto lhs = TruncSeries<Rational>::linear(Rational(5 * n), Rational(5), 4, p).pow(4) * cur;
    auto rhs = TruncSeries<Rational>::constant(Rational(3125), 4, p);
    for (int j = 1; j <= 4; ++j) rhs *= TruncSeries<Rational>::linear(Rational(5 * (n - 1) + j), Rational(5), 4, p);
    rhs *= prev;
    auto res = lhs - rhs;
    std::ostringstream os;
    os << "n=" << n << ":";
    for (std::size_t k = 0; k < 4; ++k) os << " " << res[k].get_str();
    rep.residuals.push_back(os.str());
    rep.annihilated = rep.annihilated && res.is_zero_series();

    // epsilon^0 shadow on a_n = (5n)!/(n!)^5
    const Integer an = quintic_integer(n);
    const Integer am = quintic_integer(n - 1);
    Integer lhs0 = Integer(5 * n) * (5 * n) * (5 * n) * (5 * n) * an;
    Integer rhs0 = Integer(3125) * am;
    for (int j = 1; j <= 4; ++j) rhs0 *= 5 * (n - 1) + j;
    rep.shadow_holds = rep.shadow_holds && lhs0 == rhs0 && Rational(an) == cur[0];
    prev = cur;
  }
  return rep;
}

// ---------------------------------------------------------------- export

template <typename S>
nlohmann::json jseries_to_json(const JSeries<S>& J, const std::string& space) {
  nlohmann::json j;
  j["space"] = space;
  j["D"] = J.D;
  j["r"] = J.r;
  j["basis"] = nlohmann::json::array();
  for (const auto& b : J.ring->basis) j["basis"].push_back(b.label);
  auto rows = nlohmann::json::array();
  for (int d = 0; d <= J.D; ++d) {
    auto row = nlohmann::json::array();
    for (int i = 0; i < J[d].size(); ++i) row.push_back(scalar_string(J[d][i]));
    rows.push_back(row);
  }
  j["coefficients"] = rows;
  return j;
}

/// CSV rows "d,G_d,float" for the nonzero coefficients.
inline std::string quantum_period_csv(const QuantumPeriod& G) {
  std::ostringstream os;
  os << "d,G_d,G_d_float\n";
  for (std::size_t d = 0; d < G.G.size(); ++d) {
    if (sgn(G.G[d]) == 0) continue;
    os << d << "," << G.G[d].get_str() << "," << BigReal(G.G[d], Precision::digits(20)).to_string(17) << "\n";
  }
  return os.str();
}

}  // namespace qgamma
