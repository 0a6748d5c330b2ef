#include "qgamma/laurent.hpp"
#include "qgamma/jfunction.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace qgamma;

namespace {

LaurentPolynomial p_mirror(int n) {
  std::vector<Exponent> rays;
  for (int i = 0; i < n - 1; ++i) {
    Exponent e(static_cast<std::size_t>(n - 1), 0);
    e[static_cast<std::size_t>(i)] = 1;
    rays.push_back(e);
  }
  rays.push_back(Exponent(static_cast<std::size_t>(n - 1), -1));
  return toric_mirror_from_rays(rays);
}

// (3n)!/(n!)^3 by the multinomial theorem
Integer multinomial3(int n) {
  const Integer f = factorial(static_cast<unsigned long>(n));
  return factorial(static_cast<unsigned long>(3 * n)) / (f * f * f);
}

}  // namespace

TEST(Laurent, Arithmetic) {
  auto f = p_mirror(3);
  EXPECT_EQ(f.size(), 3U);
  EXPECT_EQ(f.pow(5), f.pow(2) * f.pow(3));
  auto g = LaurentPolynomial::monomial({1, -2}, Rational(1, 3)) + LaurentPolynomial::constant(2, Rational(2));
  EXPECT_EQ(f * g, g * f);
  EXPECT_EQ((f * g) * f, f * (g * f));
  EXPECT_EQ((f - f).size(), 0U);
  EXPECT_EQ(LaurentPolynomial::from_json(g.to_json()), g);
  EXPECT_EQ(f.pow(0).constant_term(), 1);
}

TEST(Laurent, ToricMirrors) {
  auto p1 = toric_mirror_from_rays({{1}, {-1}});
  EXPECT_EQ(p1.to_string(), "x1^-1 + x1");
  EXPECT_EQ(p_mirror(3).coefficient({-1, -1}), 1);
  EXPECT_THROW(toric_mirror_from_rays({{1}, {2}}), std::invalid_argument);
  EXPECT_THROW(toric_mirror_from_rays({{2, 0}, {0, 1}, {-1, -1}}), std::invalid_argument);
  EXPECT_THROW(toric_mirror_from_rays({{1, 0}, {0, 1}, {-1, 0}}), std::invalid_argument);  // origin on the boundary
  EXPECT_TRUE(origin_in_interior({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
  EXPECT_FALSE(origin_in_interior({{1, 0}, {0, 1}, {1, 1}}));
  EXPECT_FALSE(origin_in_interior({{1, 1}, {-1, -1}}));
  auto rays = parse_rays(nlohmann::json::parse("[[1,0],[-1,0],[0,1],[0,-1]]"));
  EXPECT_EQ(toric_mirror_from_rays(rays).size(), 4U);
  EXPECT_THROW(parse_rays(nlohmann::json::parse("[[2,0],[0,1],[-1,-1]]")), std::invalid_argument);
  EXPECT_THROW(parse_rays(nlohmann::json::parse("[[1,0],[0]]")), std::invalid_argument);
}

TEST(ConstantTerms, ClosedForms) {
  auto c = constant_terms(p_mirror(2), 60);
  for (int n = 0; n <= 30; ++n)
    EXPECT_EQ(c[static_cast<std::size_t>(2 * n)], Rational(binomial(static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n))));
  EXPECT_EQ(c[4], 6);
  auto c3 = constant_terms(p_mirror(3), 36);
  for (int n = 0; n <= 12; ++n) EXPECT_EQ(c3[static_cast<std::size_t>(3 * n)], Rational(multinomial3(n)));
  EXPECT_EQ(c3[1], 0);
  EXPECT_EQ(c3[2], 0);
  // no way back to the origin: every constant term beyond degree 0 vanishes
  auto c0 = constant_terms(LaurentPolynomial::monomial({1, 1}, Rational(1)) + LaurentPolynomial::monomial({1, 0}, Rational(1)), 5);
  for (int d = 1; d <= 5; ++d) EXPECT_EQ(c0[static_cast<std::size_t>(d)], 0);
  // rational and negative coefficients go through the integer scaling
  auto h = LaurentPolynomial::monomial({1}, Rational(1, 2)) + LaurentPolynomial::monomial({-1}, Rational(-3));
  auto ch = constant_terms(h, 6);
  for (int d = 0; d <= 6; ++d) EXPECT_EQ(ch[static_cast<std::size_t>(d)], h.pow(static_cast<unsigned long>(d)).constant_term()) << d;
}

TEST(ConstantTerms, MatchProjectiveJFunction) {
  for (int n = 2; n <= 4; ++n) {
    auto G = constant_term_series(p_mirror(n), 5 * n);
    auto J = quantum_period(j_projective(n, 5 * n));
    EXPECT_EQ(G.G, J.G) << n;
    EXPECT_EQ(G.r, n);
  }
}

TEST(ConstantTerms, ResourceLimit) {
  try {
    constant_terms(p_mirror(4), 40, 50);
    FAIL() << "expected a resource abort";
  } catch (const ResourceLimit& e) {
    EXPECT_FALSE(e.partial().empty());
    EXPECT_EQ(e.partial()[0], 1);
  }
}

TEST(Conifold, ProjectiveAndPrzyjalkowski) {
  const Precision p = Precision::digits(40);
  const BigReal tol = tenth_power(30, p);
  for (int n = 2; n <= 5; ++n) {
    auto res = conifold_point(p_mirror(n), tol, p);
    EXPECT_TRUE(abs(res.T_con - BigReal(static_cast<long>(n), p)) < tenth_power(25, p)) << n;
    for (const auto& x : res.x_con) EXPECT_TRUE(abs(x - BigReal(1L, p)) < tenth_power(25, p));
    EXPECT_TRUE(res.hessian_positive);
    EXPECT_TRUE(res.gradient_norm < tol);
  }
  auto cubic = przyjalkowski_model(3, 3);
  EXPECT_EQ(cubic.f.vars(), 2);
  EXPECT_EQ(cubic.shift, 6);
  EXPECT_TRUE(cubic.f.has_nonnegative_coefficients());
  for (const auto& [e, c] : cubic.f.terms()) EXPECT_EQ(c.get_den(), 1);
  auto res = conifold_point(cubic.f, tol, p);
  EXPECT_TRUE(abs(res.T_con - BigReal(cubic.shift, p) - BigReal(21L, p)) < tenth_power(25, p));
  // (n+1-d) d^{d/(n+1-d)} for the quadric in P^3 and the cubic threefold in P^4
  auto quad = przyjalkowski_model(3, 2);
  EXPECT_EQ(quad.shift, 0);
  EXPECT_TRUE(abs(conifold_point(quad.f, tol, p).T_con - BigReal(4L, p)) < tenth_power(25, p));
  auto cub3 = przyjalkowski_model(4, 3);
  EXPECT_TRUE(abs(conifold_point(cub3.f, tol, p).T_con - pow(BigReal(3L, p), BigReal(Rational(3, 2), p)) * 2L) < tenth_power(25, p));
  EXPECT_THROW(przyjalkowski_model(3, 4), std::invalid_argument);
  EXPECT_THROW(conifold_point(LaurentPolynomial::monomial({1}, Rational(1)) + LaurentPolynomial::monomial({2}, Rational(1)), tol, p), std::invalid_argument);
  EXPECT_THROW(conifold_point(LaurentPolynomial::monomial({1}, Rational(1)) + LaurentPolynomial::monomial({-1}, Rational(-1)), tol, p), std::invalid_argument);
}

TEST(Conifold, StartingPointIndependence) {
  const Precision p = Precision::digits(30);
  const BigReal tol = tenth_power(22, p);
  auto f = przyjalkowski_model(4, 2).f;
  auto base = conifold_point(f, tol, p);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<BigReal> u;
    for (int i = 0; i < f.vars(); ++i) u.emplace_back(dist(rng), p);
    auto res = conifold_point(f, tol, p, u);
    EXPECT_TRUE(abs(res.T_con - base.T_con) < tenth_power(20, p));
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_TRUE(abs(res.x_con[i] - base.x_con[i]) < tenth_power(10, p));
  }
}

TEST(Przyjalkowski, LinearAndCubicPeriods) {
  // d = 1 is the P^{n-1} mirror
  auto lin = przyjalkowski_model(4, 1);
  EXPECT_EQ(constant_term_series(lin.f, 12).G, quantum_period(j_projective(4, 12)).G);
  // cubic surface: Const(L^k) = (3k)!/(k!)^3 and the shifted model gives the Lefschetz period
  auto cubic = przyjalkowski_model(3, 3);
  auto raw = constant_terms(cubic.f, 8);
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(raw[static_cast<std::size_t>(k)], Rational(multinomial3(k)));
  auto shifted = constant_term_series(cubic.shifted(), 8);
  auto lef = quantum_lefschetz(j_projective(4, 40), 3);
  for (int d = 0; d <= 8; ++d) EXPECT_EQ(shifted.G[static_cast<std::size_t>(d)], lef.JY[d][0]) << d;
}

TEST(Fekete, ProjectiveMirrors) {
  auto rep = fekete_limit(p_mirror(2), 2, 20);
  EXPECT_TRUE(rep.supermultiplicative);
  EXPECT_FALSE(rep.hypothesis_violated);
  EXPECT_EQ(rep.alpha.size(), 20U);
  EXPECT_LT(std::abs(rep.limit_estimate.to_double() - std::log(2.0)), 0.1);
  for (std::size_t k = 1; k < rep.alpha.size(); ++k) EXPECT_TRUE(rep.alpha[k] > rep.alpha[k - 1]);
  auto rep3 = fekete_limit(p_mirror(3), 3, 12);
  EXPECT_TRUE(rep3.supermultiplicative);
  EXPECT_LT(std::abs(rep3.limit_estimate.to_double() - std::log(3.0)), 0.15);
  // r = 1 on x + 1/x sees the odd zeros
  auto bad = fekete_limit(p_mirror(2), 1, 5);
  EXPECT_TRUE(bad.hypothesis_violated);
  EXPECT_EQ(bad.verdict, "hypothesis violated");
  auto v = supermultiplicativity_violations({Rational(1), Rational(2), Rational(3)}, 2);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0], std::make_pair(1, 1));
}

TEST(PropertyO, Reports) {
  auto C = make_constants(30, 4);
  const Precision p = C.precision();
  std::vector<BigComplex> p2;
  for (int k = 0; k < 3; ++k) p2.push_back(BigComplex::polar(-(C.pi() * BigReal(make_rational(2 * k, 3), p))) * 3L);
  auto rep = property_o_report(p2, 3, C.tolerance(15));
  EXPECT_TRUE(rep.satisfied);
  EXPECT_EQ(rep.on_circle.size(), 3U);
  auto bad = property_o_report({BigComplex(1L, p), BigComplex(-2L, p)}, 1, C.tolerance(15));
  EXPECT_FALSE(bad.simple);
  EXPECT_FALSE(bad.satisfied);
  auto twice = property_o_report({BigComplex(2L, p), BigComplex(2L, p)}, 1, C.tolerance(15));
  EXPECT_FALSE(twice.simple);
  // index 1 forbids the eigenvalue -T
  auto opp = property_o_report({BigComplex(2L, p), BigComplex(-2L, p)}, 1, C.tolerance(15));
  EXPECT_TRUE(opp.simple);
  EXPECT_FALSE(opp.roots_of_unity);
}
