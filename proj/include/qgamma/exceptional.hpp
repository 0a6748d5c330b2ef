#pragma once

// Asymptotic bases as Gamma-twisted K-classes: Gram matrices under [.,.),
// right and left mutations, and the phase window on P^{n-1}.

#include "qgamma/linalg.hpp"
#include "qgamma/ring.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgamma {

/// O, O(1), ..., O(n-1) on P^{n-1}.
inline std::vector<KClass> beilinson_collection(int n) {
  if (n < 2) throw std::invalid_argument("Beilinson collection needs n >= 2");
  auto R = build_projective_ring(n);
  std::vector<KClass> out;
  for (long k = 0; k < n; ++k) out.push_back(line_bundle(R, k));
  return out;
}

/// chi(E_i, E_j), exactly.
inline Matrix<Rational> chi_matrix(const std::vector<KClass>& E) {
  Matrix<Rational> m(E.size(), std::vector<Rational>(E.size(), Rational(0)));
  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t j = 0; j < E.size(); ++j) m[i][j] = chi_todd(E[i], E[j]);
  return m;
}

/// Gamma Ch(E).
inline GradedVector<BigComplex> asymptotic_class(const KClass& E, const ConstantTable& C) {
  return cup(convert<BigComplex>(gamma_class(E.ring, C), C.precision()), modified_chern(E, C));
}

/// Eigenvalues v_k = n e^{-2 pi i k/n} of c1 on P^{n-1}.
inline BigComplex projective_mark(int n, long k, const ConstantTable& C) {
  const Precision p = C.precision();
  return BigComplex::polar(-(C.pi() * BigReal(make_rational(2 * k, n), p))) * static_cast<long>(n);
}

struct GramMatrix {
  Matrix<BigComplex> values;
  Matrix<Integer> rounded;
  BigReal residual;  // max |value - rounded|
};

inline GramMatrix gram_matrix(const std::vector<GradedVector<BigComplex>>& A, const ConstantTable& C) {
  const Precision p = C.precision();
  GramMatrix g;
  g.residual = BigReal(0L, p);
  for (std::size_t i = 0; i < A.size(); ++i) {
    g.values.emplace_back();
    g.rounded.emplace_back();
    for (std::size_t j = 0; j < A.size(); ++j) {
      BigComplex v = pair_bracket(A[i], A[j], C);
      Integer z = v.re.to_integer_rounded();
      g.residual = max(g.residual, abs(v - BigComplex(Rational(z), p)));
      g.values.back().push_back(std::move(v));
      g.rounded.back().push_back(z);
    }
  }
  return g;
}

inline GramMatrix gram_matrix(const std::vector<KClass>& E, const ConstantTable& C) {
  std::vector<GradedVector<BigComplex>> A;
  for (const auto& e : E) A.push_back(asymptotic_class(e, C));
  return gram_matrix(A, C);
}

// ---------------------------------------------------------------- marked bases

struct MarkedElement {
  std::vector<Integer> coords;  // in the reference classes
  BigComplex mark;
  std::string label;
};

/// Classes stored as integer combinations of a fixed reference collection, so
/// that mutations act exactly and [.,.) comes from the reference Gram matrix.
class MarkedBasis {
 public:
  MarkedBasis(std::vector<GradedVector<BigComplex>> reference, Matrix<Integer> reference_gram, std::vector<BigComplex> marks,
              std::vector<std::string> labels)
      : ref_(std::move(reference)), gram_(std::move(reference_gram)) {
    const std::size_t n = ref_.size();
    if (gram_.size() != n || marks.size() != n || labels.size() != n) throw std::invalid_argument("marked basis data have different lengths");
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Integer> e(n, 0);
      e[i] = 1;
      items_.push_back({std::move(e), std::move(marks[i]), std::move(labels[i])});
    }
  }

  /// Reference classes Gamma Ch(E_i); the Gram matrix is rounded and must be integral.
  static MarkedBasis from_collection(const std::vector<KClass>& E, std::vector<BigComplex> marks, const ConstantTable& C) {
    std::vector<GradedVector<BigComplex>> A;
    std::vector<std::string> labels;
    for (const auto& e : E) {
      A.push_back(asymptotic_class(e, C));
      labels.push_back(e.label);
    }
    auto g = gram_matrix(A, C);
    if (!(g.residual < C.tolerance(10))) throw std::runtime_error("Gram matrix of the collection is not integral");
    MarkedBasis out(std::move(A), g.rounded, std::move(marks), std::move(labels));
    out.sources_ = E;
    return out;
  }

  std::size_t size() const { return items_.size(); }
  const MarkedElement& operator[](std::size_t i) const { return items_.at(i); }
  const std::vector<MarkedElement>& items() const { return items_; }

  /// [A_i, A_j) through the reference Gram matrix.
  Integer pairing(std::size_t i, std::size_t j) const { return pairing(items_.at(i).coords, items_.at(j).coords); }

  Matrix<Integer> exact_gram() const {
    Matrix<Integer> m(size(), std::vector<Integer>(size()));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) m[i][j] = pairing(i, j);
    return m;
  }

  GradedVector<BigComplex> cls(std::size_t i) const { return combination(ref_, items_.at(i).coords, ref_.at(0).precision()); }

  std::vector<GradedVector<BigComplex>> classes() const {
    std::vector<GradedVector<BigComplex>> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(cls(i));
    return out;
  }

  /// Gram matrix of the current classes recomputed from scratch. Long mutation
  /// words produce large coordinates, so when the source K-classes are known the
  /// classes are rebuilt with extra digits to keep the absolute residual at C's level.
  GramMatrix numeric_gram(const ConstantTable& C) const {
    if (sources_.empty()) return gram_matrix(classes(), C);
    Integer big = 1;
    for (const auto& e : items_)
      for (const auto& c : e.coords) big = std::max(big, Integer(abs(c)));
    const int extra = 2 * static_cast<int>(mpz_sizeinbase(big.get_mpz_t(), 10)) + 5;
    const ConstantTable D(C.digits() + extra, C.k_max());
    std::vector<GradedVector<BigComplex>> ref;
    for (const auto& e : sources_) ref.push_back(asymptotic_class(e, D));
    std::vector<GradedVector<BigComplex>> A;
    for (const auto& e : items_) A.push_back(combination(ref, e.coords, D.precision()));
    return gram_matrix(A, D);
  }

  /// (.., A_i, A_{i+1}, ..) -> (.., A_{i+1}, A_i - [A_i, A_{i+1}) A_{i+1}, ..), positions counted from 0.
  MarkedBasis right_mutation(std::size_t i) const {
    check_position(i);
    MarkedBasis out = *this;
    const Integer c = pairing(i, i + 1);
    const auto& a = items_[i];
    const auto& b = items_[i + 1];
    MarkedElement moved{combine(a.coords, b.coords, -c), a.mark, "R(" + a.label + ")"};
    out.items_[i] = b;
    out.items_[i + 1] = std::move(moved);
    return out;
  }

  /// Inverse of right_mutation at i: (.., B_i, B_{i+1}, ..) -> (.., B_{i+1} - [B_i, B_{i+1}) B_i, B_i, ..).
  /// For a right-mutated pair [B_i, B_{i+1}) = -[A_i, A_{i+1}) and this recovers A_i.
  MarkedBasis left_mutation(std::size_t i) const {
    check_position(i);
    MarkedBasis out = *this;
    const Integer c = -pairing(i, i + 1);
    const auto& a = items_[i];
    const auto& b = items_[i + 1];
    std::string label = b.label;
    if (label.size() > 3 && label.rfind("R(", 0) == 0 && label.back() == ')') label = label.substr(2, label.size() - 3);
    else label = "L(" + label + ")";
    MarkedElement moved{combine(b.coords, a.coords, c), b.mark, std::move(label)};
    out.items_[i] = std::move(moved);
    out.items_[i + 1] = a;
    return out;
  }

  const std::vector<GradedVector<BigComplex>>& reference() const { return ref_; }

 private:
  static GradedVector<BigComplex> combination(const std::vector<GradedVector<BigComplex>>& ref, const std::vector<Integer>& c, Precision p) {
    auto v = GradedVector<BigComplex>::zero(ref.at(0).ring(), p);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0) {
        auto t = ref[k];
        t *= BigComplex(Rational(c[k]), p);
        v += t;
      }
    return v;
  }

  Integer pairing(const std::vector<Integer>& x, const std::vector<Integer>& y) const {
    Integer s = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] == 0) continue;
      for (std::size_t l = 0; l < y.size(); ++l)
        if (y[l] != 0) s += x[k] * gram_[k][l] * y[l];
    }
    return s;
  }
  static std::vector<Integer> combine(const std::vector<Integer>& x, const std::vector<Integer>& y, const Integer& c) {
    std::vector<Integer> out(x);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * y[k];
    return out;
  }
  void check_position(std::size_t i) const {
    if (i + 1 >= items_.size()) throw std::out_of_range("mutation position out of range");
  }

  std::vector<GradedVector<BigComplex>> ref_;
  std::vector<KClass> sources_;
  Matrix<Integer> gram_;
  std::vector<MarkedElement> items_;
};

/// An ordering making G upper unitriangular, if one exists.
inline std::optional<std::vector<std::size_t>> unitriangular_order(const Matrix<Integer>& G) {
  const std::size_t n = G.size();
  for (std::size_t i = 0; i < n; ++i)
    if (G[i][i] != 1) return std::nullopt;
  // i must precede j whenever G[i][j] != 0
  std::vector<std::size_t> order, indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && G[i][j] != 0) {
        if (G[j][i] != 0) return std::nullopt;
        ++indeg[j];
      }
  std::vector<bool> used(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n && pick == n; ++i)
      if (!used[i] && indeg[i] == 0) pick = i;
    if (pick == n) return std::nullopt;
    used[pick] = true;
    order.push_back(pick);
    for (std::size_t j = 0; j < n; ++j)
      if (j != pick && G[pick][j] != 0) --indeg[j];
  }
  return order;
}

inline Matrix<Integer> permuted(const Matrix<Integer>& G, const std::vector<std::size_t>& order) {
  Matrix<Integer> out(order.size(), std::vector<Integer>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < order.size(); ++j) out[i][j] = G[order[i]][order[j]];
  return out;
}

/// Signs s with s_i s_j A_ij = B_ij, if any: bases are defined only up to sign.
inline std::optional<std::vector<int>> equal_up_to_signs(const Matrix<Integer>& A, const Matrix<Integer>& B) {
  const std::size_t n = A.size();
  if (B.size() != n) return std::nullopt;
  std::vector<int> s(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (s[root]) continue;
    s[root] = 1;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (A[i][j] == 0 && B[i][j] == 0) continue;
        int need;
        if (A[i][j] == B[i][j]) need = s[i];
        else if (A[i][j] == -B[i][j]) need = -s[i];
        else return std::nullopt;
        if (i == j) {
          if (A[i][i] != B[i][i]) return std::nullopt;
          continue;
        }
        if (!s[j]) {
          s[j] = need;
          stack.push_back(j);
        } else if (s[j] != need) {
          return std::nullopt;
        }
      }
    }
  }
  return s;
}

// ---------------------------------------------------------------- phases

/// im(e^{-i phi} u).
inline BigReal rotated_imaginary(const BigComplex& u, const BigReal& phi) {
  return (u * BigComplex::polar(-phi)).im;
}

/// Indices sorted so that im(e^{-i phi} u) weakly decreases.
inline std::vector<std::size_t> order_by_phase(const std::vector<BigComplex>& u, const BigReal& phi) {
  std::vector<std::size_t> idx(u.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return rotated_imaginary(u[a], phi) > rotated_imaginary(u[b], phi); });
  return idx;
}

struct PairAdmissibility {
  int i = 0, j = 0;
  BigReal im_difference;  // im((u_i - u_j) e^{-i phi})
  bool distinct = false;
};

struct PhaseAssignment {
  int n = 0;
  BigReal phi;
  bool admissible = false;
  std::vector<PairAdmissibility> pairs;
  std::vector<std::pair<long, BigReal>> assigned;  // k with |2 pi k/n + phi|, where F_k = O(k)
  BigReal bound;                                   // pi/2 + pi/n
};

inline PhaseAssignment phase_assignment(int n, const BigReal& phi, const ConstantTable& C) {
  if (n < 2) throw std::invalid_argument("phase assignment needs n >= 2");
  const Precision p = C.precision();
  PhaseAssignment out;
  out.n = n;
  out.phi = BigReal(phi, p);
  out.admissible = true;
  const BigReal tol = C.tolerance(10);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PairAdmissibility pa;
      pa.i = i;
      pa.j = j;
      pa.im_difference = rotated_imaginary(projective_mark(n, i, C) - projective_mark(n, j, C), out.phi);
      pa.distinct = abs(pa.im_difference) > tol;
      out.admissible = out.admissible && pa.distinct;
      out.pairs.push_back(std::move(pa));
    }
  out.bound = C.pi() / 2L + C.pi() / static_cast<long>(n);
  if (!out.admissible) return out;
  const long kmax = n + 1;
  for (long k = -kmax; k <= kmax; ++k) {
    BigReal v = abs(C.pi() * BigReal(make_rational(2 * k, n), p) + out.phi);
    if (v < out.bound) out.assigned.push_back({k, v});
  }
  return out;
}

// ---------------------------------------------------------------- output

inline nlohmann::json gram_to_json(const GramMatrix& g, const std::vector<std::string>& labels = {}) {
  nlohmann::json exact = nlohmann::json::array(), approx = nlohmann::json::array();
  for (std::size_t i = 0; i < g.rounded.size(); ++i) {
    nlohmann::json er = nlohmann::json::array(), ar = nlohmann::json::array();
    for (std::size_t j = 0; j < g.rounded[i].size(); ++j) {
      er.push_back(g.rounded[i][j].get_str());
      ar.push_back({g.values[i][j].re.to_string(20), g.values[i][j].im.to_string(20)});
    }
    exact.push_back(er);
    approx.push_back(ar);
  }
  nlohmann::json j = {{"exact", exact}, {"values", approx}, {"residual", g.residual.to_string(6)}};
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

inline std::string gram_to_csv(const GramMatrix& g, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "row,col,row_label,col_label,exact,re,im\n";
  for (std::size_t i = 0; i < g.rounded.size(); ++i)
    for (std::size_t j = 0; j < g.rounded[i].size(); ++j)
      os << i << ',' << j << ',' << (i < labels.size() ? labels[i] : "") << ',' << (j < labels.size() ? labels[j] : "") << ','
         << g.rounded[i][j].get_str() << ',' << g.values[i][j].re.to_string(20) << ',' << g.values[i][j].im.to_string(20) << '\n';
  return os.str();
}

}  // namespace qgamma
