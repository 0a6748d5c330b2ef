#include "qgamma/asymptotics.hpp"
#include "qgamma/laurent.hpp"
#include "qgamma/schubert.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qgamma;

namespace {

bool close(const BigReal& a, const BigReal& b, double tol) { return abs(a - b) < BigReal(tol, a.precision()); }

}  // namespace

TEST(Neville, ReproducesPolynomials) {
  const Precision p = Precision::digits(30);
  std::vector<BigReal> xs, ys;
  for (int i = 1; i <= 5; ++i) {
    BigReal x = BigReal(1L, p) / static_cast<long>(i + 3);
    xs.push_back(x);
    ys.push_back(BigReal(7L, p) - x * 3L + x * x * x * 2L);  // degree 3
  }
  EXPECT_TRUE(close(neville_at_zero(xs, ys), BigReal(7L, p), 1e-25));
  auto cfg = ExtrapolationConfig::uniform(BigReal(40L, p), 6, 30);
  ASSERT_EQ(cfg.t_grid.size(), 7U);
  EXPECT_TRUE(close(cfg.t_grid.front(), BigReal(20L, p), 1e-25));
  EXPECT_TRUE(close(cfg.t_grid.back(), BigReal(40L, p), 1e-25));
  cfg.t_grid[2] = cfg.t_grid[1];
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(PrincipalClass, P1AndScaling) {
  auto C = make_constants(50, 8);
  auto J = j_projective(2, 400);
  auto cfg = ExtrapolationConfig::uniform(BigReal(40L, C.precision()), 6, 50);
  auto A = principal_asymptotic_class(J, cfg);
  EXPECT_TRUE(close(A.value[0], BigReal(1L, C.precision()), 1e-40));
  EXPECT_TRUE(close(A.value[1], -(C.euler_gamma() * 2L), 1e-6));
  EXPECT_TRUE(A.max_error < BigReal(1e-5, C.precision()));
  auto J3 = J;
  for (auto& c : J3.coeffs) c *= Rational(3);
  auto B = principal_asymptotic_class(J3, cfg);
  EXPECT_TRUE(close(A.value[1], B.value[1], 1e-30));
  // too short a series is refused
  EXPECT_THROW(principal_asymptotic_class(j_projective(2, 40), cfg), std::domain_error);
}

TEST(PrincipalClass, P2GammaConjecture) {
  auto C = make_constants(50, 8);
  const Precision p = C.precision();
  auto J = j_projective(3, 600);
  auto cfg = ExtrapolationConfig::uniform(BigReal(40L, p), 6, 50);
  auto v = gamma_I_verdict(J, cfg, C, BigReal(1e-5, p));
  EXPECT_TRUE(v.pass) << v.worst_error.to_string(5);
  const BigReal g = C.euler_gamma();
  EXPECT_TRUE(close(v.limit.value[1], -(g * 3L), 1e-5));
  EXPECT_TRUE(close(v.limit.value[2], g * g * BigReal(4.5, p) + C.zeta(2) * BigReal(1.5, p), 1e-5));
  // order k+1 moves the answer by less than the reported error at order k
  auto cfg7 = ExtrapolationConfig::uniform(BigReal(40L, p), 7, 50);
  auto A7 = principal_asymptotic_class(J, cfg7);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(abs(A7.value[i] - v.limit.value[i]) < v.limit.error[i] * 2L + BigReal(1e-12, p));

  // negative control: gamma replaced by 0.6
  auto wrong = GradedVector<BigReal>::unit(J.ring, p);
  const BigReal g6(0.6, p);
  wrong[1] = -(g6 * 3L);
  wrong[2] = g6 * g6 * BigReal(4.5, p) + C.zeta(2) * BigReal(1.5, p);
  EXPECT_FALSE(gamma_I_verdict(J, cfg, wrong, BigReal(1e-4, p)).pass);
}

TEST(PrincipalClass, P3) {
  auto C = make_constants(50, 8);
  auto J = j_projective(4, 600);
  auto cfg = ExtrapolationConfig::uniform(BigReal(40L, C.precision()), 6, 50);
  auto v = gamma_I_verdict(J, cfg, C, BigReal(1e-3, C.precision()));
  EXPECT_TRUE(v.pass) << v.worst_error.to_string(5);
  EXPECT_TRUE(close(v.limit.value[1], -(C.euler_gamma() * 4L), 1e-4));
}

TEST(PrincipalClass, CubicSurface) {
  auto C = make_constants(50, 8);
  const Precision p = C.precision();
  // e^{-c0 t} is a scalar factor and cancels in J/<[pt],J>, so the unshifted series is used
  auto res = quantum_lefschetz(j_projective(4, 4 * 800), 3, p, false);
  EXPECT_EQ(res.c0, 6);
  auto cfg = ExtrapolationConfig::uniform(BigReal(12L, p), 6, 50);
  auto v = gamma_I_verdict(res.raw, cfg, C, BigReal(1e-3, p));
  EXPECT_TRUE(v.pass) << v.worst_error.to_string(5);
  // Gamma_Y = i* Gamma_X / Gamma(1 + 3h) on the ambient part
  auto GX = gamma_class(build_projective_ring(4), C);
  // 1/Gamma(1+x) = exp(gamma x - sum_{k>=2} (-1)^k zeta(k) x^k / k); here x = 3h, h^3 = 0
  TruncSeries<BigReal> lg(3, p);
  lg[1] = C.euler_gamma() * 3L;
  lg[2] = -(C.zeta(2) * 9L / 2L);
  auto e = lg.exp_nilpotent();
  auto GY = GradedVector<BigReal>(res.JY.ring, std::vector<BigReal>{GX[0], GX[1], GX[2]});
  auto E = GradedVector<BigReal>(res.JY.ring, e.coeffs());
  auto target = cup(GY, E);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(close(target[i], v.target[i], 1e-40));
}

TEST(KernelC1, Examples) {
  for (int n = 2; n <= 5; ++n) {
    auto K = kernel_c1(build_projective_ring(n));
    ASSERT_EQ(K.size(), 1U);
    EXPECT_EQ(K[0].coeffs, HomologyVector::point(K[0].ring).coeffs);
  }
  auto point = kernel_c1(build_projective_ring(1));
  ASSERT_EQ(point.size(), 1U);
  auto R = schubert_ring(2, 5);
  auto K = kernel_c1(R);
  ASSERT_EQ(K.size(), 2U);
  bool saw_point = false, saw_alpha = false;
  for (const auto& a : K) {
    EXPECT_TRUE(in_kernel_c1(a));
    if (a.coeffs == HomologyVector::point(R).coeffs) saw_point = true;
    const auto s2 = static_cast<std::size_t>(R->index_of("s2"));
    const auto s11 = static_cast<std::size_t>(R->index_of("s11"));
    if (sgn(a.coeffs[s2]) != 0 && a.coeffs[s2] == -a.coeffs[s11]) saw_alpha = true;
  }
  EXPECT_TRUE(saw_point);
  EXPECT_TRUE(saw_alpha);
}

TEST(Apery, PointAndGrassmannian) {
  auto C = make_constants(50, 12);
  const Precision p = C.precision();
  auto J = j_projective(3, 30);
  auto pt = apery_ratio(J, HomologyVector::point(J.ring), 10, p);
  for (const auto& x : pt.ratios) EXPECT_TRUE(close(x, BigReal(1L, p), 1e-45));
  EXPECT_TRUE(close(apery_target(HomologyVector::point(J.ring), C), BigReal(1L, p), 1e-45));
  HomologyVector h{J.ring, {Rational(0), Rational(1), Rational(0)}};
  EXPECT_THROW(apery_ratio(J, h, 5, p), std::invalid_argument);
  EXPECT_THROW(apery_ratio(J, HomologyVector::point(J.ring), 11, p), std::invalid_argument);

  auto G = bcfk_j_series(2, 5, 100, 50).J;
  HomologyVector alpha{G.ring, std::vector<Rational>(10, Rational(0))};
  alpha.coeffs[static_cast<std::size_t>(G.ring->index_of("s2"))] = 1;
  alpha.coeffs[static_cast<std::size_t>(G.ring->index_of("s11"))] = -1;
  auto res = apery_ratio(G, alpha, 20, p);
  const BigReal target = apery_target(alpha, C);
  auto err = [&](int k) { return abs(res.ratios[static_cast<std::size_t>(k - 1)] - target); };
  EXPECT_TRUE(err(10) < err(5));
  EXPECT_TRUE(err(20) < err(10));
  EXPECT_TRUE(err(20) < BigReal(1e-2, p));
  // <alpha, Gamma> = zeta(2) <alpha, ch_2(TF)>, a rational multiple of zeta(2)
  const Rational q = pair_homology(alpha, chern_character_tangent(G.ring).component(2));
  EXPECT_TRUE(close(target, C.zeta(2) * BigReal(q, p), 1e-40));
  EXPECT_NE(sgn(q), 0);
  auto res2 = apery_ratio(G, alpha.scaled(Rational(2)), 20, p);
  for (std::size_t i = 0; i < res.ratios.size(); ++i) EXPECT_TRUE(close(res2.ratios[i], res.ratios[i] * 2L, 1e-40));
  EXPECT_EQ(res.accelerated.size(), res.ratios.size() - 2);
}

TEST(Growth, Rates) {
  auto P1 = constant_term_series(toric_mirror_from_rays({{1}, {-1}}), 30);
  auto g1 = growth_rate(P1);
  EXPECT_LT(std::abs(g1.corrected.to_double() - 2.0), 0.04);
  auto P2 = quantum_period(j_projective(3, 36));
  auto g2 = growth_rate(P2);
  EXPECT_LT(std::abs(g2.corrected.to_double() - 3.0), 0.06);
  auto Gr = ehx_constant_terms(2, 4, 32);
  auto g3 = growth_rate(Gr);
  EXPECT_LT(std::abs(g3.corrected.to_double() - 4.0 * std::sqrt(2.0)), 0.05 * 4.0 * std::sqrt(2.0));
  EXPECT_THROW(growth_rate(quantum_period(j_projective(3, 9))), std::invalid_argument);
}
