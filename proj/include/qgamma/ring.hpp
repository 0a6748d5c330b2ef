#pragma once

// Finite graded cohomology rings, graded vectors over them, the bracket
// pairing, Gamma and Todd classes, and Riemann-Roch in both factorizations.

#include "qgamma/linalg.hpp"
#include "qgamma/scalars.hpp"
#include "qgamma/series.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgamma {

struct BasisElement {
  std::string label;
  int degree = 0;  // the class lives in H^{2*degree}
};

/// Sparse product of two basis elements: list of (basis index, coefficient).
using SparseTerms = std::vector<std::pair<int, Rational>>;

/// Graded commutative algebra with Poincare data. basis[0] is always the unit.
struct CohomologyRing {
  std::string name;
  int dimension = 0;
  std::vector<BasisElement> basis;
  std::vector<std::vector<SparseTerms>> cup_table;
  std::vector<Rational> integral;
  std::vector<Rational> c1;
  std::vector<Rational> chTF;
  int fano_index = 1;

  int size() const { return static_cast<int>(basis.size()); }
  int degree(int i) const { return basis[static_cast<std::size_t>(i)].degree; }
  int index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
      if (basis[static_cast<std::size_t>(i)].label == label) return i;
    throw std::out_of_range("no basis element '" + label + "' in " + name);
  }
};

using RingPtr = std::shared_ptr<const CohomologyRing>;

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->name != b->name || a->dimension != b->dimension || a->size() != b->size()) return false;
  for (int i = 0; i < a->size(); ++i)
    if (a->basis[static_cast<std::size_t>(i)].label != b->basis[static_cast<std::size_t>(i)].label) return false;
  return true;
}

/// Cohomology element: coefficients over the ring basis.
template <typename S>
class GradedVector {
 public:
  GradedVector() = default;
  GradedVector(RingPtr ring, std::vector<S> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
    if (!ring_ || static_cast<int>(c_.size()) != ring_->size())
      throw std::invalid_argument("coefficient count does not match ring basis");
  }

  static GradedVector zero(RingPtr ring, Precision p) {
    const auto n = static_cast<std::size_t>(ring->size());
    return GradedVector(std::move(ring), std::vector<S>(n, from_rational<S>(Rational(0), p)));
  }
  static GradedVector basis_vector(RingPtr ring, int i, Precision p, const Rational& coeff = Rational(1)) {
    auto v = zero(std::move(ring), p);
    v.c_[static_cast<std::size_t>(i)] = from_rational<S>(coeff, p);
    return v;
  }
  static GradedVector unit(RingPtr ring, Precision p) { return basis_vector(std::move(ring), 0, p); }

  const RingPtr& ring() const { return ring_; }
  int size() const { return static_cast<int>(c_.size()); }
  const S& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  S& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<S>& coeffs() const { return c_; }

  Precision precision() const {
    Precision p(64);
    for (const auto& x : c_) p = std::max(p, scalar_precision(x));
    return p;
  }

  GradedVector& operator+=(const GradedVector& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  GradedVector& operator-=(const GradedVector& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  GradedVector& operator*=(const S& a) {
    for (auto& x : c_) x *= a;
    return *this;
  }
  GradedVector operator-() const {
    GradedVector r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
  friend GradedVector operator*(GradedVector a, const S& s) { return a *= s; }
  friend GradedVector operator*(const S& s, GradedVector a) { return a *= s; }

  /// The part of degree p (class in H^{2p}).
  GradedVector component(int p) const {
    GradedVector r = *this;
    for (int i = 0; i < size(); ++i)
      if (ring_->degree(i) != p) r[i] = from_rational<S>(Rational(0), scalar_precision(r[i]));
    return r;
  }

  bool is_zero_vector() const {
    return std::all_of(c_.begin(), c_.end(), [](const S& x) { return is_zero(x); });
  }

  void check(const GradedVector& o) const {
    if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("ring mismatch");
  }

 private:
  RingPtr ring_;
  std::vector<S> c_;
};

/// Homology element in dual-basis coordinates; pairs degree-matched with cohomology.
struct HomologyVector {
  RingPtr ring;
  std::vector<Rational> coeffs;

  /// The point class: dual to the unit, so it reads off the H^0 component.
  static HomologyVector point(RingPtr r) {
    HomologyVector h{r, std::vector<Rational>(static_cast<std::size_t>(r->size()), Rational(0))};
    h.coeffs[0] = 1;
    return h;
  }
  HomologyVector scaled(const Rational& s) const {
    HomologyVector h = *this;
    for (auto& c : h.coeffs) c *= s;
    return h;
  }
  friend HomologyVector operator+(HomologyVector a, const HomologyVector& b) {
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
    return a;
  }
};

template <typename S>
S pair_homology(const HomologyVector& a, const GradedVector<S>& v) {
  if (!same_ring(a.ring, v.ring())) throw std::invalid_argument("ring mismatch");
  S acc = from_rational<S>(Rational(0), v.precision());
  for (int i = 0; i < v.size(); ++i)
    if (sgn(a.coeffs[static_cast<std::size_t>(i)]) != 0) acc += v[i] * from_rational<S>(a.coeffs[static_cast<std::size_t>(i)], v.precision());
  return acc;
}

/// Rational vector converted to another scalar field.
template <typename T, typename S>
GradedVector<T> convert(const GradedVector<S>& v, Precision p) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (int i = 0; i < v.size(); ++i) {
    if constexpr (std::is_same_v<T, S>) {
      out.push_back(v[i]);
    } else if constexpr (std::is_same_v<T, BigComplex>) {
      out.push_back(to_complex(v[i], p));
    } else if constexpr (std::is_same_v<T, BigReal>) {
      out.push_back(to_real(v[i], p));
    } else {
      static_assert(std::is_same_v<T, S>, "unsupported conversion");
    }
  }
  return GradedVector<T>(v.ring(), std::move(out));
}

/// Real parts of a complex vector.
inline GradedVector<BigReal> real_part(const GradedVector<BigComplex>& v) {
  std::vector<BigReal> out;
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i].re);
  return GradedVector<BigReal>(v.ring(), std::move(out));
}

template <typename S>
GradedVector<S> cup(const GradedVector<S>& a, const GradedVector<S>& b) {
  a.check(b);
  const auto& R = *a.ring();
  const Precision p = std::max(a.precision(), b.precision());
  auto out = GradedVector<S>::zero(a.ring(), p);
  for (int i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (int j = 0; j < b.size(); ++j) {
      if (is_zero(b[j])) continue;
      const S ab = a[i] * b[j];
      for (const auto& [k, c] : R.cup_table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        out[k] += ab * from_rational<S>(c, p);
    }
  }
  return out;
}

template <typename S>
S integrate(const GradedVector<S>& v) {
  const auto& R = *v.ring();
  S acc = from_rational<S>(Rational(0), v.precision());
  for (int i = 0; i < v.size(); ++i)
    if (sgn(R.integral[static_cast<std::size_t>(i)]) != 0) acc += v[i] * from_rational<S>(R.integral[static_cast<std::size_t>(i)], v.precision());
  return acc;
}

/// exp(v) for v with vanishing degree-0 part.
template <typename S>
GradedVector<S> exp_nilpotent(const GradedVector<S>& v) {
  if (!is_zero(v[0])) throw std::domain_error("exp of a class with nonzero degree-0 part");
  const Precision p = v.precision();
  auto result = GradedVector<S>::unit(v.ring(), p);
  auto term = result;
  for (int k = 1; k <= v.ring()->dimension; ++k) {
    term = cup(term, v);
    term *= from_rational<S>(Rational(1, k), p);
    result += term;
  }
  return result;
}

/// Multiplies the degree-p part by w(p).
template <typename S, typename W>
GradedVector<S> scale_by_degree(const GradedVector<S>& v, W w) {
  GradedVector<S> r = v;
  for (int i = 0; i < r.size(); ++i) r[i] *= w(v.ring()->degree(i));
  return r;
}

/// Dual class: (-1)^p on degree p.
template <typename S>
GradedVector<S> dual(const GradedVector<S>& v) {
  const Precision p = v.precision();
  return scale_by_degree(v, [p](int d) { return from_rational<S>(Rational(d % 2 ? -1 : 1), p); });
}

inline GradedVector<Rational> first_chern(const RingPtr& R) { return GradedVector<Rational>(R, R->c1); }
inline GradedVector<Rational> chern_character_tangent(const RingPtr& R) { return GradedVector<Rational>(R, R->chTF); }

/// Power-sum p_k = k! ch_k(TF) of the Chern roots, as a degree-k class.
inline GradedVector<Rational> chern_power_sum(const RingPtr& R, int k) {
  auto ch = chern_character_tangent(R).component(k);
  ch *= Rational(factorial(static_cast<unsigned long>(k)));
  return ch;
}

// ---------------------------------------------------------------- builders

namespace detail {
inline std::string power_label(const std::string& var, int p) {
  if (p == 0) return "1";
  if (p == 1) return var;
  return var + "^" + std::to_string(p);
}

/// Ring Q[h]/(h^n) with integral of h^{n-1} equal to top.
inline CohomologyRing truncated_polynomial_ring(int n, const Rational& top) {
  CohomologyRing R;
  R.dimension = n - 1;
  for (int p = 0; p < n; ++p) R.basis.push_back({power_label("h", p), p});
  R.cup_table.assign(static_cast<std::size_t>(n), std::vector<SparseTerms>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j < n) R.cup_table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = {{i + j, Rational(1)}};
  R.integral.assign(static_cast<std::size_t>(n), Rational(0));
  R.integral[static_cast<std::size_t>(n - 1)] = top;
  return R;
}
}  // namespace detail

/// Projective space P^{n-1}: Q[h]/(h^n).
inline RingPtr build_projective_ring(int n) {
  if (n < 1) throw std::invalid_argument("projective ring needs n >= 1");
  auto R = detail::truncated_polynomial_ring(n, Rational(1));
  R.name = "P^" + std::to_string(n - 1);
  R.c1.assign(static_cast<std::size_t>(n), Rational(0));
  R.chTF.assign(static_cast<std::size_t>(n), Rational(0));
  R.chTF[0] = n - 1;
  if (n > 1) R.c1[1] = n;
  for (int p = 1; p < n; ++p) R.chTF[static_cast<std::size_t>(p)] = Rational(n) / Rational(factorial(static_cast<unsigned long>(p)));
  R.fano_index = n;
  return std::make_shared<const CohomologyRing>(std::move(R));
}

/// Ambient part of a degree-a hypersurface Y in P^n, spanned by powers of h.
inline RingPtr build_hypersurface_ambient_ring(int n, int a) {
  if (n < 2) throw std::invalid_argument("hypersurface needs n >= 2");
  if (a < 1 || a > n) throw std::invalid_argument("hypersurface degree must satisfy 1 <= a <= n");
  auto R = detail::truncated_polynomial_ring(n, Rational(a));
  R.name = "Hyp(" + std::to_string(n) + "," + std::to_string(a) + ")";
  R.c1.assign(static_cast<std::size_t>(n), Rational(0));
  R.c1[1] = n + 1 - a;
  R.chTF.assign(static_cast<std::size_t>(n), Rational(0));
  R.chTF[0] = n - 1;
  Integer apow = a;
  for (int p = 1; p < n; ++p) {
    R.chTF[static_cast<std::size_t>(p)] = Rational(Integer(n + 1) - apow) / Rational(factorial(static_cast<unsigned long>(p)));
    apow *= a;
  }
  R.fano_index = n + 1 - a;
  return std::make_shared<const CohomologyRing>(std::move(R));
}

/// Kunneth product. Basis element (i,j) sits at index i*|R2| + j.
inline RingPtr tensor_ring(const RingPtr& A, const RingPtr& B) {
  CohomologyRing R;
  const int na = A->size();
  const int nb = B->size();
  R.name = A->name + " x " + B->name;
  R.dimension = A->dimension + B->dimension;
  auto idx = [nb](int i, int j) { return i * nb + j; };
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const auto& la = A->basis[static_cast<std::size_t>(i)];
      const auto& lb = B->basis[static_cast<std::size_t>(j)];
      const std::string label = (i == 0 && j == 0) ? "1" : la.label + "⊗" + lb.label;
      R.basis.push_back({label, la.degree + lb.degree});
    }
  const auto N = static_cast<std::size_t>(na * nb);
  R.cup_table.assign(N, std::vector<SparseTerms>(N));
  for (int i1 = 0; i1 < na; ++i1)
    for (int j1 = 0; j1 < nb; ++j1)
      for (int i2 = 0; i2 < na; ++i2)
        for (int j2 = 0; j2 < nb; ++j2) {
          SparseTerms terms;
          for (const auto& [ka, ca] : A->cup_table[static_cast<std::size_t>(i1)][static_cast<std::size_t>(i2)])
            for (const auto& [kb, cb] : B->cup_table[static_cast<std::size_t>(j1)][static_cast<std::size_t>(j2)])
              terms.emplace_back(idx(ka, kb), ca * cb);
          R.cup_table[static_cast<std::size_t>(idx(i1, j1))][static_cast<std::size_t>(idx(i2, j2))] = std::move(terms);
        }
  R.integral.assign(N, Rational(0));
  R.c1.assign(N, Rational(0));
  R.chTF.assign(N, Rational(0));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const auto k = static_cast<std::size_t>(idx(i, j));
      R.integral[k] = A->integral[static_cast<std::size_t>(i)] * B->integral[static_cast<std::size_t>(j)];
    }
  // c1 and ch(TF) add through the units.
  for (int i = 0; i < na; ++i) {
    R.c1[static_cast<std::size_t>(idx(i, 0))] += A->c1[static_cast<std::size_t>(i)];
    R.chTF[static_cast<std::size_t>(idx(i, 0))] += A->chTF[static_cast<std::size_t>(i)];
  }
  for (int j = 0; j < nb; ++j) {
    R.c1[static_cast<std::size_t>(idx(0, j))] += B->c1[static_cast<std::size_t>(j)];
    R.chTF[static_cast<std::size_t>(idx(0, j))] += B->chTF[static_cast<std::size_t>(j)];
  }
  R.fano_index = std::gcd(A->fano_index, B->fano_index);
  return std::make_shared<const CohomologyRing>(std::move(R));
}

/// Product of projective spaces P^{n_1-1} x ... from the list of n_i.
inline RingPtr build_product_ring(const std::vector<int>& ns) {
  if (ns.empty()) throw std::invalid_argument("empty product");
  RingPtr R = build_projective_ring(ns.front());
  for (std::size_t i = 1; i < ns.size(); ++i) R = tensor_ring(R, build_projective_ring(ns[i]));
  return R;
}

// ---------------------------------------------------------------- checks

struct RingCheck {
  bool ok = true;
  std::string failure;
};

/// Exhaustive structural checks: grading, commutativity, associativity,
/// unit, Poincare nondegeneracy, c1 = ch_1, ch_0 = dim, index divides c1.
inline RingCheck check_ring(const RingPtr& Rp) {
  const auto& R = *Rp;
  const int n = R.size();
  auto fail = [](std::string why) { return RingCheck{false, std::move(why)}; };
  if (n == 0 || R.basis[0].degree != 0) return fail("basis[0] must be the degree-0 unit");
  auto prod = [&](int i, int j) {
    auto v = GradedVector<Rational>::basis_vector(Rp, i, Precision());
    return cup(v, GradedVector<Rational>::basis_vector(Rp, j, Precision()));
  };
  for (int i = 0; i < n; ++i) {
    if (prod(0, i).coeffs() != GradedVector<Rational>::basis_vector(Rp, i, Precision()).coeffs()) return fail("unit law");
    for (int j = 0; j < n; ++j) {
      const auto ij = prod(i, j);
      if (ij.coeffs() != prod(j, i).coeffs()) return fail("commutativity");
      for (int k = 0; k < n; ++k)
        if (sgn(ij[k]) != 0 && R.degree(k) != R.degree(i) + R.degree(j)) return fail("grading");
      for (int k = 0; k < n; ++k) {
        auto bk = GradedVector<Rational>::basis_vector(Rp, k, Precision());
        if (cup(ij, bk).coeffs() != cup(GradedVector<Rational>::basis_vector(Rp, i, Precision()), prod(j, k)).coeffs())
          return fail("associativity");
      }
    }
  }
  Matrix<Rational> gram(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = integrate(prod(i, j));
  if (sgn(determinant(gram)) == 0) return fail("Poincare pairing degenerate");
  if (R.chTF[0] != R.dimension) return fail("ch_0(TF) != dim");
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (R.degree(i) == 1 && R.c1[k] != R.chTF[k]) return fail("c1 != ch_1(TF)");
    if (R.degree(i) != 1 && sgn(R.c1[k]) != 0) return fail("c1 not in degree 1");
    if (R.fano_index > 0) {
      Rational q = R.c1[k] / R.fano_index;
      if (q.get_den() != 1) return fail("index does not divide c1");
    }
  }
  return {};
}

// ---------------------------------------------------------------- classes

/// K-theory class through its Chern character.
struct KClass {
  RingPtr ring;
  GradedVector<Rational> ch;
  std::string label;

  KClass(RingPtr r, GradedVector<Rational> c, std::string l = {}) : ring(std::move(r)), ch(std::move(c)), label(std::move(l)) {
    if (ch[0].get_den() != 1) throw std::invalid_argument("ch_0 of a K-class must be an integer");
  }
  friend KClass operator+(const KClass& a, const KClass& b) {
    return KClass(a.ring, a.ch + b.ch, a.label + "+" + b.label);
  }
  KClass dual() const { return KClass(ring, qgamma::dual(ch), label + "^v"); }
};

/// Line bundle with first Chern class `divisor`.
inline KClass line_bundle(const RingPtr& R, const GradedVector<Rational>& divisor, std::string label = {}) {
  return KClass(R, exp_nilpotent(divisor), std::move(label));
}

/// O(k) on a ring generated by a single degree-1 class h = basis[1].
inline KClass line_bundle(const RingPtr& R, long k) {
  auto h = R->size() > 1 ? GradedVector<Rational>::basis_vector(R, 1, Precision(), Rational(k))
                         : GradedVector<Rational>::zero(R, Precision());
  return line_bundle(R, h, "O(" + std::to_string(k) + ")");
}

/// Ch(E) = (2 pi i)^p ch_p(E).
inline GradedVector<BigComplex> modified_chern(const KClass& E, const ConstantTable& C) {
  const Precision p = C.precision();
  BigComplex two_pi_i(BigReal(0L, p), C.pi() * 2L);
  auto v = convert<BigComplex>(E.ch, p);
  return scale_by_degree(v, [&](int d) { return pow(two_pi_i, static_cast<unsigned long>(d)); });
}

/// Gamma class exp(-gamma c1 + sum_{k>=2} (-1)^k (k-1)! zeta(k) ch_k(TF)).
inline GradedVector<BigReal> gamma_class(const RingPtr& R, const ConstantTable& C) {
  const int dim = R->dimension;
  if (dim > C.k_max()) throw std::out_of_range("zeta table too short for this dimension");
  const Precision p = C.precision();
  auto expo = convert<BigReal>(first_chern(R), p);
  expo *= -C.euler_gamma();
  for (int k = 2; k <= dim; ++k) {
    auto ck = convert<BigReal>(chern_character_tangent(R).component(k), p);
    BigReal coeff = C.zeta(k) * BigReal(factorial(static_cast<unsigned long>(k - 1)), p);
    if (k % 2) coeff = -coeff;
    ck *= coeff;
    expo += ck;
  }
  return exp_nilpotent(expo);
}

/// Coefficients a_k of log(x / (1 - e^{-x})) = sum_k a_k x^k, k < order.
inline std::vector<Rational> todd_log_coefficients(int order) {
  const auto N = static_cast<std::size_t>(order);
  std::vector<Rational> g(N);
  // (1 - e^{-x})/x = sum_k (-1)^k x^k / (k+1)!
  for (std::size_t k = 0; k < N; ++k)
    g[k] = Rational(k % 2 ? -1 : 1) / Rational(factorial(static_cast<unsigned long>(k + 1)));
  auto lg = TruncSeries<Rational>(g, Precision()).log_unipotent();
  std::vector<Rational> out(N);
  for (std::size_t k = 0; k < N; ++k) out[k] = -lg[k];
  return out;
}

/// Todd class exp(sum_k a_k p_k) with p_k the Chern-root power sums.
inline GradedVector<Rational> todd_class(const RingPtr& R) {
  const int dim = R->dimension;
  const auto a = todd_log_coefficients(dim + 1);
  auto expo = GradedVector<Rational>::zero(R, Precision());
  for (int k = 1; k <= dim; ++k) {
    auto pk = chern_power_sum(R, k);
    pk *= a[static_cast<std::size_t>(k)];
    expo += pk;
  }
  return exp_nilpotent(expo);
}

/// [a, b) = (2 pi)^{-dim} integral of (e^{pi i c1} e^{pi i mu} a) b.
template <typename A, typename B>
BigComplex pair_bracket(const GradedVector<A>& a, const GradedVector<B>& b, const ConstantTable& C) {
  if (!same_ring(a.ring(), b.ring())) throw std::invalid_argument("ring mismatch");
  const Precision p = C.precision();
  const auto& R = a.ring();
  const int dim = R->dimension;
  auto ac = convert<BigComplex>(a, p);
  auto bc = convert<BigComplex>(b, p);
  // e^{pi i mu} acts on degree q by e^{pi i (q - dim/2)}
  auto twisted = scale_by_degree(ac, [&](int q) {
    BigReal theta = C.pi() * BigReal(make_rational(2 * q - dim, 2), p);
    return BigComplex::polar(theta);
  });
  auto pic1 = convert<BigComplex>(first_chern(R), p);
  pic1 *= BigComplex(BigReal(0L, p), C.pi());
  twisted = cup(exp_nilpotent(pic1), twisted);
  BigComplex value = integrate(cup(twisted, bc));
  value /= pow(C.pi() * 2L, static_cast<long>(dim));
  return value;
}

struct HrrResult {
  Rational chi_exact;     // Todd side over Q
  BigComplex chi_todd;
  BigComplex chi_gamma;
};

/// chi(E1, E2) = integral ch(E1^v) ch(E2) td, exactly.
inline Rational chi_todd(const KClass& E1, const KClass& E2) {
  return integrate(cup(cup(dual(E1.ch), E2.ch), todd_class(E1.ring)));
}

/// Both sides of factorized Riemann-Roch.
inline HrrResult hrr_check(const KClass& E1, const KClass& E2, const ConstantTable& C) {
  if (!same_ring(E1.ring, E2.ring)) throw std::invalid_argument("ring mismatch");
  const Precision p = C.precision();
  HrrResult out;
  out.chi_exact = chi_todd(E1, E2);
  out.chi_todd = BigComplex(out.chi_exact, p);
  auto G = convert<BigComplex>(gamma_class(E1.ring, C), p);
  out.chi_gamma = pair_bracket(cup(G, modified_chern(E1, C)), cup(G, modified_chern(E2, C)), C);
  return out;
}

}  // namespace qgamma
