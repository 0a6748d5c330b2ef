#pragma once

// Mirror integrals over the positive real orthant, central charges of O, and
// the Laplace-transform form of quantum Lefschetz.

#include "qgamma/jfunction.hpp"
#include "qgamma/laurent.hpp"
#include "qgamma/ring.hpp"

#include <json.hpp>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgamma {

struct QuadratureConfig {
  double h0 = 0.5;      // initial step in log coordinates
  double tol = 1e-12;   // relative agreement of successive grids
  int digits = 30;
  int max_halvings = 8;
  int max_dim = 3;
};

struct QuadratureResult {
  BigReal value;
  BigReal change;  // |I_h - I_{h/2}| at the accepted step
  double h = 0;
  double L = 0;    // farthest coordinate offset visited from the minimizer
  long nodes = 0;
};

namespace detail {

struct SliceSum {
  BigReal sum;
  BigReal min_phase;
};

/// Trapezoid sum of e^{-phase} over c + h Z^m, walking each coordinate outward
/// from c. The phase is convex, so its minimum over a slice is convex in the
/// remaining coordinates; a walk stops once that minimum exceeds `cut` and grows.
class ConvexTrapezoid {
 public:
  ConvexTrapezoid(std::function<BigReal(const std::vector<BigReal>&)> phase, std::vector<BigReal> c, double h, double cut, Precision p)
      : phase_(std::move(phase)), c_(std::move(c)), h_(h, p), cut_(cut), p_(p), u_(c_) {}

  BigReal run() { return slice(0).sum * pow(h_, static_cast<long>(c_.size())); }
  long nodes() const { return nodes_; }
  double extent() const { return static_cast<double>(reach_) * h_.to_double(); }

 private:
  static constexpr long kMaxSteps = 4000;

  SliceSum slice(std::size_t d) {
    if (d == c_.size()) {
      ++nodes_;
      BigReal ph = phase_(u_);
      return {exp(-ph), ph};
    }
    SliceSum out{BigReal(0L, p_), BigReal(0L, p_)};
    bool first = true;
    BigReal centre(0L, p_);
    for (int dir : {1, -1}) {
      BigReal prev = centre;
      for (long k = dir > 0 ? 0 : -1; std::labs(k) < kMaxSteps; k += dir) {
        u_[d] = c_[d] + h_ * k;
        auto s = slice(d + 1);
        out.sum += s.sum;
        if (first || s.min_phase < out.min_phase) out.min_phase = s.min_phase;
        reach_ = std::max(reach_, std::labs(k));
        const bool stop = !first && s.min_phase > cut_ && s.min_phase > prev;
        if (first) centre = s.min_phase;
        first = false;
        prev = s.min_phase;
        if (stop) break;
        if (std::labs(k) + 1 >= kMaxSteps) throw std::runtime_error("integrand does not decay along a coordinate");
      }
      u_[d] = c_[d];
    }
    return out;
  }

  std::function<BigReal(const std::vector<BigReal>&)> phase_;
  std::vector<BigReal> c_;
  BigReal h_;
  double cut_;
  Precision p_;
  std::vector<BigReal> u_;
  long nodes_ = 0;
  long reach_ = 0;
};

}  // namespace detail

/// Integral of e^{-f(x)/z} dx_1/x_1 ... dx_m/x_m over the positive orthant.
inline QuadratureResult oscillatory_integral(const LaurentPolynomial& f, const BigReal& z, const QuadratureConfig& q = {}) {
  const int m = f.vars();
  if (m < 1) throw std::invalid_argument("oscillatory integral needs at least one variable");
  if (m > q.max_dim) throw std::invalid_argument("oscillatory integral limited to " + std::to_string(q.max_dim) + " variables");
  if (!(z > 0.0)) throw std::invalid_argument("z must be positive");
  if (!(q.h0 > 0) || !(q.tol > 0)) throw std::invalid_argument("bad quadrature configuration");
  const Precision p = Precision::digits(q.digits);
  // positivity and interiority are checked here as well
  auto con = conifold_point(f, tenth_power(q.digits / 2, p), p);
  std::vector<BigReal> c;
  for (const auto& x : con.x_con) c.push_back(log(x));

  std::vector<std::pair<std::vector<long>, BigReal>> terms;
  for (const auto& [b, coeff] : f.terms()) terms.push_back({std::vector<long>(b.begin(), b.end()), BigReal(coeff, p)});
  const BigReal zz(z, p);
  auto fval = [&](const std::vector<BigReal>& u) {
    BigReal s(0L, p);
    for (const auto& [b, coeff] : terms) {
      BigReal e(0L, p);
      for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i]) e += u[i] * b[i];
      s += coeff * exp(e);
    }
    return s;
  };
  const BigReal fmin = fval(c);
  auto phase = [&](const std::vector<BigReal>& u) { return (fval(u) - fmin) / zz; };
  const double cut = std::log(1.0 / q.tol) + 2.0 * m * std::log(10.0) + 10.0;

  QuadratureResult res;
  const BigReal scale = exp(-fmin / zz);
  auto level = [&](double h) {
    detail::ConvexTrapezoid T(phase, c, h, cut, p);
    BigReal v = T.run();
    res.nodes += T.nodes();
    res.L = std::max(res.L, T.extent());
    return v;
  };
  double h = q.h0;
  BigReal prev = level(h);
  for (int k = 0; k < q.max_halvings; ++k) {
    h /= 2;
    BigReal cur = level(h);
    BigReal change = abs(cur - prev);
    prev = cur;
    if (change < abs(cur) * BigReal(q.tol, p)) {
      res.value = cur * scale;
      res.change = change * scale;
      res.h = h;
      return res;
    }
  }
  throw std::runtime_error("quadrature refinement did not converge");
}

/// Mirror of P^{N-1}: x_1 + ... + x_{N-1} + 1/(x_1 ... x_{N-1}).
inline LaurentPolynomial projective_mirror(int N) {
  if (N < 2) throw std::invalid_argument("projective mirror needs N >= 2");
  std::vector<Exponent> rays;
  for (int i = 0; i < N - 1; ++i) {
    Exponent e(static_cast<std::size_t>(N - 1), 0);
    e[static_cast<std::size_t>(i)] = 1;
    rays.push_back(e);
  }
  rays.push_back(Exponent(static_cast<std::size_t>(N - 1), -1));
  return toric_mirror_from_rays(rays);
}

struct CentralCharge {
  BigComplex Z;
  BigReal imaginary_residue;  // |Im Z| / scale of J(e^{pi i} t)
};

/// Z(O) = (2 pi i)^dim [J(e^{pi i} t), Gamma).
template <typename S>
CentralCharge central_charge_structure_sheaf(const JSeries<S>& J, const GradedVector<BigReal>& Gamma, const BigReal& t,
                                             const ConstantTable& C) {
  if (!same_ring(J.ring, Gamma.ring())) throw std::invalid_argument("Gamma lives on a different ring");
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  const Precision p = C.precision();
  auto ev = evaluate_j(J, BigComplex(-BigReal(t, p)), C.pi(), p);
  BigReal scale(1L, p);
  for (int i = 0; i < ev.value.size(); ++i) scale = max(scale, abs(ev.value[i]));
  if (!ev.converged || !(ev.tail_estimate < C.tolerance(12) * scale))
    throw std::domain_error("J-series truncated too early for t = " + t.to_string(6));
  const int dim = J.ring->dimension;
  BigComplex Z = pair_bracket(ev.value, Gamma, C) * pow(BigComplex(BigReal(0L, p), C.pi() * 2L), static_cast<unsigned long>(dim));
  const BigReal residue = abs(Z.im) / (scale * pow(C.pi() * 2L, static_cast<long>(dim)));
  if (!(residue < C.tolerance(12))) throw std::runtime_error("central charge has an imaginary part " + Z.im.to_string(6));
  return {Z, residue};
}

// ---------------------------------------------------------------- Laplace

/// 1/Gamma(1 + a h) = exp(gamma a h - sum_{k>=2} (-1)^k zeta(k) (a h)^k / k) on the ring of h.
inline GradedVector<BigReal> inverse_gamma_of_h(const RingPtr& R, int a, const ConstantTable& C) {
  const Precision p = C.precision();
  auto h = GradedVector<BigReal>::basis_vector(R, 1, p);
  auto hk = GradedVector<BigReal>::unit(R, p);
  auto expo = GradedVector<BigReal>::zero(R, p);
  for (int k = 1; k < R->size(); ++k) {
    hk = cup(hk, h);
    BigReal c = pow(BigReal(static_cast<long>(a), p), static_cast<long>(k));
    if (k == 1) {
      c *= C.euler_gamma();
    } else {
      c = c * C.zeta(k) / static_cast<long>(k);
      if (k % 2 == 0) c = -c;
    }
    auto term = hk;
    term *= c;
    expo += term;
  }
  return exp_nilpotent(expo);
}

struct LaplaceReport {
  GradedVector<BigReal> lhs;  // J_Y(u^{a/(r-a)})
  GradedVector<BigReal> rhs;  // Laplace transform side
  std::vector<BigReal> abs_diff;
  std::vector<BigReal> rel_diff;
  BigReal max_rel_diff;
  bool pass = false;
  double h = 0;
  double s_min = 0, s_max = 0;
  long nodes = 0;
};

/// Both sides of J_Y(t = u^{a/(r-a)}) = e^{-c0 t}/(Gamma(1+ah) u) int_0^oo i*J_X(q^{a/r}) e^{-q/u} dq.
inline LaplaceReport laplace_lefschetz_check(const JSeries<Rational>& JX, int a, const BigReal& u, double tol, const ConstantTable& C) {
  const Precision p = C.precision();
  const int n = JX.ring->dimension;
  const int r = n + 1;
  if (a <= 0 || a >= r) throw std::invalid_argument("hypersurface degree must satisfy 0 < a < n+1");
  if (!(u > 0.0)) throw std::invalid_argument("u must be positive");
  // the transform is dominated by q ~ u; J_X grows like e^{r q^{a/r}}
  if (!(BigReal(u, p) * static_cast<long>(r) < 1.0)) throw std::invalid_argument("u too large for the Laplace integral to be resolved");
  const BigReal uu(u, p);
  const int index = r - a;
  const BigReal t = pow(uu, BigReal(make_rational(a, index), p));

  // left side: series of Y, shifted, with enough terms for small t
  JSeries<Rational> JXs = JX;
  JXs.D = std::min(JX.D, r * 40);
  JXs.coeffs.resize(static_cast<std::size_t>(JXs.D) + 1);
  auto ql = quantum_lefschetz(JXs, a, p);
  auto left = evaluate_j(ql.JY, BigComplex(t), BigReal(0L, p), p);
  if (!left.converged) throw std::domain_error("J_Y series did not converge at t");
  LaplaceReport rep;
  rep.lhs = real_part(left.value);
  const RingPtr Y = ql.JY.ring;

  // right side: q = u e^s, dq = q ds
  const double ud = u.to_double();
  const double need = std::log(1.0 / tol) + 15.0;
  double s_max = 0;
  while (std::exp(s_max) - s_max - r * std::pow(ud * std::exp(s_max), static_cast<double>(a) / r) < need) s_max += 0.5;
  const double s_min = -(need + n * std::log(need + 10.0));
  rep.s_min = s_min;
  rep.s_max = s_max;
  auto integrand = [&](double s, GradedVector<BigReal>& acc, const BigReal& w) {
    const BigReal sb(s, p);
    const BigReal q = uu * exp(sb);
    const BigReal tau = pow(q, BigReal(make_rational(a, r), p));
    auto ev = evaluate_j(JX, BigComplex(tau), BigReal(0L, p), p);
    if (!ev.converged) throw std::domain_error("J_X series too short for the Laplace integral");
    const BigReal weight = w * q * exp(-exp(sb));  // e^{-q/u} = e^{-e^s}
    for (int i = 0; i < Y->size(); ++i) acc[i] += ev.value[i].re * weight;
    ++rep.nodes;
  };
  auto trapezoid = [&](double h) {
    auto acc = GradedVector<BigReal>::zero(Y, p);
    const long K = static_cast<long>(std::ceil((s_max - s_min) / h));
    for (long k = 0; k <= K; ++k) integrand(s_min + h * static_cast<double>(k), acc, BigReal(h, p));
    return acc;
  };
  auto ginv = inverse_gamma_of_h(Y, a, C);
  const BigReal factor = exp(-BigReal(ql.c0, p) * t) / uu;
  auto assemble = [&](const GradedVector<BigReal>& I) {
    auto v = cup(ginv, I);
    v *= factor;
    return v;
  };

  double h = 0.25;
  auto prev = assemble(trapezoid(h));
  for (int k = 0;; ++k) {
    if (k > 8) throw std::runtime_error("Laplace quadrature did not converge");
    h /= 2;
    auto cur = assemble(trapezoid(h));
    BigReal worst(0L, p);
    for (int i = 0; i < cur.size(); ++i) worst = max(worst, abs(cur[i] - prev[i]) / max(abs(cur[i]), tenth_power(C.digits() - 5, p)));
    prev = cur;
    if (worst < BigReal(tol * 1e-2, p)) break;
  }
  rep.rhs = prev;
  rep.h = h;
  rep.max_rel_diff = BigReal(0L, p);
  for (int i = 0; i < Y->size(); ++i) {
    BigReal d = abs(rep.lhs[i] - rep.rhs[i]);
    rep.abs_diff.push_back(d);
    BigReal rel = rep.lhs[i].is_zero() ? d : d / abs(rep.lhs[i]);
    rep.rel_diff.push_back(rel);
    rep.max_rel_diff = max(rep.max_rel_diff, rel);
  }
  rep.pass = rep.max_rel_diff < tol;
  return rep;
}

inline nlohmann::json laplace_report_json(const LaplaceReport& r) {
  auto vec = [](const std::vector<BigReal>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(x.to_string(20));
    return a;
  };
  return {{"identity", "laplace_lefschetz"},
          {"lhs", vec(r.lhs.coeffs())},
          {"rhs", vec(r.rhs.coeffs())},
          {"abs_diff", vec(r.abs_diff)},
          {"rel_diff", vec(r.rel_diff)},
          {"grid_params", {{"h", r.h}, {"s_min", r.s_min}, {"s_max", r.s_max}, {"nodes", r.nodes}}}};
}

}  // namespace qgamma
