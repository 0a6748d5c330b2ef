#pragma once

// Laurent polynomials with rational coefficients, used as Landau-Ginzburg
// mirrors: constant-term series, conifold points, Fekete diagnostics and the
// Property O report on a spectrum.

#include "qgamma/jfunction.hpp"
#include "qgamma/linalg.hpp"
#include "qgamma/scalars.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qgamma {

using Exponent = std::vector<int>;

struct ExponentHash {
  std::size_t operator()(const Exponent& e) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int x : e) {
      h ^= static_cast<std::size_t>(static_cast<unsigned int>(x));
      h *= 1099511628211ULL;
    }
    return h;
  }
};

class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  explicit LaurentPolynomial(int vars) : m_(vars) {
    if (vars < 0) throw std::invalid_argument("negative variable count");
  }

  static LaurentPolynomial monomial(Exponent e, const Rational& c) {
    LaurentPolynomial f(static_cast<int>(e.size()));
    f.add(std::move(e), c);
    return f;
  }
  static LaurentPolynomial constant(int vars, const Rational& c) {
    return monomial(Exponent(static_cast<std::size_t>(vars), 0), c);
  }

  int vars() const { return m_; }
  std::size_t size() const { return terms_.size(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  void add(Exponent e, const Rational& c) {
    if (static_cast<int>(e.size()) != m_) throw std::invalid_argument("exponent length mismatch");
    auto& slot = terms_[e];
    slot += c;
    if (sgn(slot) == 0) terms_.erase(e);
  }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coefficient(Exponent(static_cast<std::size_t>(m_), 0)); }

  bool has_positive_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return sgn(t.second) > 0; });
  }
  bool has_nonnegative_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return sgn(t.second) >= 0; });
  }

  std::vector<Exponent> exponents() const {
    std::vector<Exponent> out;
    for (const auto& [e, c] : terms_) out.push_back(e);
    return out;
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    a.check(b);
    LaurentPolynomial out(a.m_);
    Exponent e(static_cast<std::size_t>(a.m_));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add(e, ca * cb);
      }
    return out;
  }

  LaurentPolynomial pow(unsigned long k) const {
    LaurentPolynomial result = constant(m_, Rational(1));
    LaurentPolynomial base = *this;
    while (k) {
      if (k & 1UL) result = result * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.m_ == b.m_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      bool unit = true;
      std::ostringstream mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!unit) mono << "*";
        unit = false;
        mono << "x" << (i + 1);
        if (e[i] != 1) mono << "^" << e[i];
      }
      if (unit) {
        os << c.get_str();
      } else {
        if (c != 1) os << c.get_str() << "*";
        os << mono.str();
      }
    }
    return os.str();
  }

  nlohmann::json to_json() const {
    auto arr = nlohmann::json::array();
    for (const auto& [e, c] : terms_) arr.push_back({{"exponents", e}, {"coefficient", c.get_str()}});
    return nlohmann::json{{"vars", m_}, {"terms", arr}};
  }
  static LaurentPolynomial from_json(const nlohmann::json& j) {
    LaurentPolynomial f(j.at("vars").get<int>());
    for (const auto& t : j.at("terms")) {
      Rational c(t.at("coefficient").get<std::string>(), 10);
      c.canonicalize();
      f.add(t.at("exponents").get<Exponent>(), c);
    }
    return f;
  }

 private:
  void check(const LaurentPolynomial& o) const {
    if (o.m_ != m_) throw std::invalid_argument("Laurent polynomials in different variable counts");
  }

  int m_ = 0;
  std::map<Exponent, Rational> terms_;
};

// ---------------------------------------------------------------- geometry

/// True iff the origin is an interior point of conv(points). Exact: the
/// points must span, and no hyperplane through 0 spanned by points may have
/// all of them on one side.
inline bool origin_in_interior(const std::vector<Exponent>& points) {
  if (points.empty()) return false;
  const std::size_t m = points.front().size();
  if (m == 0) return true;
  Matrix<Rational> all;
  for (const auto& p : points) all.emplace_back(p.begin(), p.end());
  if (rank(all) < m) return false;

  auto one_sided = [&](const std::vector<Rational>& normal) {
    int pos = 0, neg = 0;
    for (const auto& p : points) {
      Rational s = 0;
      for (std::size_t i = 0; i < m; ++i) s += normal[i] * p[i];
      if (sgn(s) > 0) ++pos;
      if (sgn(s) < 0) ++neg;
    }
    return pos == 0 || neg == 0;
  };

  // choose m-1 of the points; if they span a hyperplane, test its normal
  std::vector<std::size_t> pick(m - 1);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) -> bool {
    if (depth == m - 1) {
      Matrix<Rational> sub;
      for (auto idx : pick) sub.emplace_back(points[idx].begin(), points[idx].end());
      if (sub.empty()) {
        return !one_sided(std::vector<Rational>{Rational(1)});
      }
      if (rank(sub) != m - 1) return true;
      auto ns = null_space(sub, m);
      return !one_sided(ns.front());
    }
    for (std::size_t i = from; i < points.size(); ++i) {
      pick[depth] = i;
      if (!rec(depth + 1, i + 1)) return false;
    }
    return true;
  };
  return rec(0, 0);
}

/// Sum of x^b over the rays b, after validation.
inline LaurentPolynomial toric_mirror_from_rays(const std::vector<Exponent>& rays) {
  if (rays.empty()) throw std::invalid_argument("no rays");
  const std::size_t m = rays.front().size();
  LaurentPolynomial f(static_cast<int>(m));
  for (const auto& b : rays) {
    if (b.size() != m) throw std::invalid_argument("rays of different lengths");
    int g = 0;
    for (int x : b) g = std::gcd(g, x);
    if (g != 1) throw std::invalid_argument("ray is not primitive");
    if (sgn(f.coefficient(b)) != 0) throw std::invalid_argument("repeated ray");
    f.add(b, Rational(1));
  }
  if (!origin_in_interior(rays)) throw std::invalid_argument("origin is not interior to the convex hull of the rays");
  return f;
}

/// Rays from a JSON array of equal-length integer arrays.
inline std::vector<Exponent> parse_rays(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("rays must be a nonempty JSON array");
  std::vector<Exponent> rays;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument("each ray must be an array");
    Exponent e;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw std::invalid_argument("ray entries must be integers");
      e.push_back(x.get<int>());
    }
    if (!rays.empty() && e.size() != rays.front().size()) throw std::invalid_argument("rays of different lengths");
    int g = 0;
    for (int x : e) g = std::gcd(g, x);
    if (g != 1) throw std::invalid_argument("ray is not primitive");
    rays.push_back(std::move(e));
  }
  return rays;
}

inline std::vector<Exponent> load_rays(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open rays file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("rays file: ") + e.what());
  }
  return parse_rays(j);
}

// ---------------------------------------------------------------- constant terms

class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(const std::string& what, std::vector<Rational> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<Rational>& partial() const { return partial_; }

 private:
  std::vector<Rational> partial_;
};

/// Const(f^d) for d = 0..N. Powers are accumulated over the integers after
/// clearing denominators, dropping exponents that can no longer return to
/// the origin within the remaining multiplications.
inline std::vector<Rational> constant_terms(const LaurentPolynomial& f, int N, std::size_t max_terms = 50'000'000) {
  if (N < 0) throw std::invalid_argument("negative order");
  const int m = f.vars();
  std::vector<Rational> out(static_cast<std::size_t>(N) + 1, Rational(0));
  out[0] = 1;
  if (f.size() == 0 || N == 0) return out;

  Integer den = 1;
  for (const auto& [e, c] : f.terms()) den = lcm(den, Integer(c.get_den()));
  std::vector<std::pair<Exponent, Integer>> mono;
  for (const auto& [e, c] : f.terms()) mono.emplace_back(e, Integer(c * Rational(den)));

  // functionals: each coordinate and the coordinate sum
  const int L = m + 1;
  auto functional = [m](const Exponent& e, int k) {
    if (k < m) return static_cast<long>(e[static_cast<std::size_t>(k)]);
    long s = 0;
    for (int x : e) s += x;
    return s;
  };
  std::vector<long> lo(static_cast<std::size_t>(L)), hi(static_cast<std::size_t>(L));
  for (int k = 0; k < L; ++k) {
    lo[static_cast<std::size_t>(k)] = hi[static_cast<std::size_t>(k)] = functional(mono.front().first, k);
    for (const auto& [e, c] : mono) {
      lo[static_cast<std::size_t>(k)] = std::min(lo[static_cast<std::size_t>(k)], functional(e, k));
      hi[static_cast<std::size_t>(k)] = std::max(hi[static_cast<std::size_t>(k)], functional(e, k));
    }
    if (lo[static_cast<std::size_t>(k)] > 0 || hi[static_cast<std::size_t>(k)] < 0) return out;  // never returns to 0
  }

  std::unordered_map<Exponent, Integer, ExponentHash> cur, next;
  cur.emplace(Exponent(static_cast<std::size_t>(m), 0), Integer(1));
  Integer scale = 1;
  Exponent e(static_cast<std::size_t>(m));
  for (int d = 1; d <= N; ++d) {
    const long left = N - d;
    next.clear();
    for (const auto& [ea, ca] : cur)
      for (const auto& [eb, cb] : mono) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        bool alive = true;
        for (int k = 0; k < L && alive; ++k) {
          const long v = -functional(e, k);
          alive = v >= left * lo[static_cast<std::size_t>(k)] && v <= left * hi[static_cast<std::size_t>(k)];
        }
        if (!alive) continue;
        next[e] += ca * cb;
      }
    std::swap(cur, next);
    scale *= den;
    auto it = cur.find(Exponent(static_cast<std::size_t>(m), 0));
    if (it != cur.end()) out[static_cast<std::size_t>(d)] = Rational(it->second) / Rational(scale);
    if (cur.size() > max_terms) {
      out.resize(static_cast<std::size_t>(d) + 1);
      throw ResourceLimit("constant-term powering exceeded " + std::to_string(max_terms) + " terms at d=" + std::to_string(d), out);
    }
  }
  return out;
}

/// G_d = Const(f^d)/d! for d = 0..N.
inline QuantumPeriod constant_term_series(const LaurentPolynomial& f, int N, std::size_t max_terms = 50'000'000) {
  auto c = constant_terms(f, N, max_terms);
  QuantumPeriod G;
  int g = 0;
  for (std::size_t d = 0; d < c.size(); ++d) {
    G.G.push_back(c[d] / Rational(factorial(static_cast<unsigned long>(d))));
    if (d > 0 && sgn(c[d]) != 0) g = std::gcd(g, static_cast<int>(d));
  }
  G.r = g ? g : 1;
  return G;
}

// ---------------------------------------------------------------- conifold point

struct ConifoldResult {
  std::vector<BigReal> x_con;
  BigReal T_con;
  int newton_iterations = 0;
  BigReal gradient_norm;
  bool hessian_positive = false;
};

namespace detail {
struct LogValue {
  BigReal f;
  std::vector<BigReal> grad;
  Matrix<BigReal> hess;
};

/// f(e^u) with its gradient and Hessian in u.
inline LogValue log_coordinates_eval(const LaurentPolynomial& f, const std::vector<BigReal>& u, Precision p, bool second) {
  const auto m = static_cast<std::size_t>(f.vars());
  LogValue out{BigReal(0L, p), std::vector<BigReal>(m, BigReal(0L, p)), {}};
  if (second) out.hess.assign(m, std::vector<BigReal>(m, BigReal(0L, p)));
  for (const auto& [b, c] : f.terms()) {
    BigReal s(0L, p);
    for (std::size_t i = 0; i < m; ++i) s += u[i] * static_cast<long>(b[i]);
    BigReal w = exp(s) * BigReal(c, p);
    out.f += w;
    for (std::size_t i = 0; i < m; ++i) {
      if (!b[i]) continue;
      out.grad[i] += w * static_cast<long>(b[i]);
      if (second)
        for (std::size_t j = 0; j < m; ++j)
          if (b[j]) out.hess[i][j] += w * static_cast<long>(b[i] * b[j]);
    }
  }
  return out;
}
}  // namespace detail

/// Minimum of f on the positive orthant by damped Newton in u = log x.
inline ConifoldResult conifold_point(const LaurentPolynomial& f, const BigReal& tol, Precision p,
                                     std::optional<std::vector<BigReal>> start = std::nullopt, int max_iter = 200) {
  if (f.size() == 0 || !f.has_positive_coefficients()) throw std::invalid_argument("conifold point needs positive coefficients");
  const auto m = static_cast<std::size_t>(f.vars());
  // a constant term does not move the minimizer
  std::vector<Exponent> support;
  for (const auto& e : f.exponents())
    if (std::any_of(e.begin(), e.end(), [](int x) { return x != 0; })) support.push_back(e);
  if (!origin_in_interior(support)) throw std::invalid_argument("origin is not interior to the Newton polytope");

  std::vector<BigReal> u = start ? *start : std::vector<BigReal>(m, BigReal(0L, p));
  if (u.size() != m) throw std::invalid_argument("starting point has the wrong dimension");
  ConifoldResult res;
  auto norm = [&](const std::vector<BigReal>& g) {
    BigReal s(0L, p);
    for (const auto& x : g) s += x * x;
    return sqrt(s);
  };
  for (int it = 0;; ++it) {
    auto v = detail::log_coordinates_eval(f, u, p, true);
    res.gradient_norm = norm(v.grad);
    res.newton_iterations = it;
    if (res.gradient_norm < tol) {
      res.T_con = v.f;
      res.hessian_positive = positive_definite(v.hess);
      break;
    }
    if (it >= max_iter) throw std::runtime_error("conifold Newton iteration did not converge");
    std::vector<BigReal> rhs;
    for (const auto& g : v.grad) rhs.push_back(-g);
    auto step = solve(v.hess, rhs);
    BigReal lambda(1L, p);
    std::vector<BigReal> trial(m);
    for (int halvings = 0;; ++halvings) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = u[i] + lambda * step[i];
      auto fv = detail::log_coordinates_eval(f, trial, p, false).f;
      if (!(fv > v.f) || halvings > 60) break;
      lambda /= 2L;
    }
    u = trial;
  }
  for (const auto& x : u) res.x_con.push_back(exp(x));
  return res;
}

/// Laurent polynomial together with a constant to subtract: the mirror is f - shift.
struct ShiftedLaurent {
  LaurentPolynomial f;
  Rational shift;

  LaurentPolynomial shifted() const { return f - LaurentPolynomial::constant(f.vars(), shift); }
};

/// Mirror of a degree-d hypersurface in P^n in the variables
/// x_1..x_{n-d}, y_{n-d+1}..y_{n-1} (y_n = 1):
/// (y_{n-d+1}+...+y_{n-1}+1)^d / (x_1..x_{n-d} y_{n-d+1}..y_{n-1}) + x_1 + ... + x_{n-d},
/// with shift delta_{n,d} d!.
inline ShiftedLaurent przyjalkowski_model(int n, int d) {
  if (n < 1 || d < 1 || d > n) throw std::invalid_argument("przyjalkowski model needs 1 <= d <= n");
  const int nx = n - d;
  const int ny = d - 1;
  const int m = nx + ny;
  LaurentPolynomial base(m);
  Exponent denom(static_cast<std::size_t>(m), -1);
  base.add(denom, Rational(1));
  LaurentPolynomial ysum = LaurentPolynomial::constant(m, Rational(1));
  for (int j = 0; j < ny; ++j) {
    Exponent e(static_cast<std::size_t>(m), 0);
    e[static_cast<std::size_t>(nx + j)] = 1;
    ysum.add(e, Rational(1));
  }
  LaurentPolynomial f = base * ysum.pow(static_cast<unsigned long>(d));
  for (int i = 0; i < nx; ++i) {
    Exponent e(static_cast<std::size_t>(m), 0);
    e[static_cast<std::size_t>(i)] = 1;
    f.add(e, Rational(1));
  }
  return {f, d == n ? Rational(factorial(static_cast<unsigned long>(d))) : Rational(0)};
}

// ---------------------------------------------------------------- Fekete

struct FeketeReport {
  std::vector<BigReal> alpha;  // alpha_k = log Const(f^{rk}) / (rk), k = 1..N
  bool supermultiplicative = true;
  std::vector<std::pair<int, int>> violations;  // (a, b) with a + b <= N
  bool hypothesis_violated = false;
  std::string verdict;
  BigReal limit_estimate;
};

/// Checks Const(g^{a+b}) >= Const(g^a) Const(g^b) for all a + b <= total on
/// the raw sequence c_d = Const(g^d).
inline std::vector<std::pair<int, int>> supermultiplicativity_violations(const std::vector<Rational>& c, int total) {
  std::vector<std::pair<int, int>> bad;
  if (total >= static_cast<int>(c.size())) throw std::invalid_argument("not enough constant terms");
  for (int a = 0; a <= total; ++a)
    for (int b = a; a + b <= total; ++b)
      if (c[static_cast<std::size_t>(a + b)] < c[static_cast<std::size_t>(a)] * c[static_cast<std::size_t>(b)]) bad.emplace_back(a, b);
  return bad;
}

inline FeketeReport fekete_limit(const LaurentPolynomial& f, int r, int N, Precision p = Precision::digits(30)) {
  if (r < 1 || N < 1) throw std::invalid_argument("fekete_limit needs r >= 1 and N >= 1");
  if (!f.has_nonnegative_coefficients()) throw std::invalid_argument("fekete_limit needs nonnegative coefficients");
  const auto c = constant_terms(f, r * N);
  std::vector<Rational> sub;
  for (int k = 0; k <= N; ++k) sub.push_back(c[static_cast<std::size_t>(r * k)]);
  FeketeReport rep;
  for (int k = 1; k <= N; ++k) {
    const auto& ck = sub[static_cast<std::size_t>(k)];
    if (sgn(ck) == 0) {
      rep.hypothesis_violated = true;
      rep.alpha.push_back(BigReal(0L, p));
      continue;
    }
    rep.alpha.push_back(log(BigReal(ck, p)) / static_cast<long>(r * k));
  }
  rep.violations = supermultiplicativity_violations(sub, N);
  rep.supermultiplicative = rep.violations.empty();
  rep.limit_estimate = rep.alpha.back();
  if (rep.hypothesis_violated)
    rep.verdict = "hypothesis violated";
  else
    rep.verdict = rep.supermultiplicative ? "supermultiplicative" : "not supermultiplicative";
  return rep;
}

// ---------------------------------------------------------------- Property O

struct PropertyOReport {
  BigReal T;
  int multiplicity_of_T = 0;
  bool simple = false;           // T itself is an eigenvalue of multiplicity one
  bool roots_of_unity = false;   // every eigenvalue of modulus T is zeta T with zeta^r = 1
  bool satisfied = false;
  std::vector<BigComplex> on_circle;
};

inline PropertyOReport property_o_report(const std::vector<BigComplex>& spectrum, int r, const BigReal& tol) {
  if (spectrum.empty()) throw std::invalid_argument("empty spectrum");
  if (r < 1) throw std::invalid_argument("Fano index must be positive");
  const Precision p = spectrum.front().precision();
  PropertyOReport rep;
  rep.T = BigReal(0L, p);
  for (const auto& u : spectrum) rep.T = max(rep.T, abs(u));
  const BigComplex Tc(rep.T);
  rep.roots_of_unity = true;
  for (const auto& u : spectrum) {
    if (abs(u - Tc) < tol) ++rep.multiplicity_of_T;
    if (abs(abs(u) - rep.T) < tol) {
      rep.on_circle.push_back(u);
      BigComplex z = pow(u / Tc, static_cast<unsigned long>(r));
      if (!(abs(z - BigComplex(1L, p)) < tol)) rep.roots_of_unity = false;
    }
  }
  rep.simple = rep.multiplicity_of_T == 1;
  rep.satisfied = rep.simple && rep.roots_of_unity;
  return rep;
}

}  // namespace qgamma
