#include "qgamma/schubert.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>

using namespace qgamma;

namespace {

using Poly = std::map<std::vector<int>, Integer>;

// Schur polynomial in r variables by enumerating semistandard tableaux.
Poly schur_by_tableaux(const Partition& shape, int r) {
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < static_cast<int>(shape.size()); ++i)
    for (int j = 0; j < shape[static_cast<std::size_t>(i)]; ++j) cells.emplace_back(i, j);
  std::map<std::pair<int, int>, int> fill;
  Poly out;
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == cells.size()) {
      std::vector<int> e(static_cast<std::size_t>(r), 0);
      for (const auto& [cell, v] : fill) ++e[static_cast<std::size_t>(v)];
      out[e] += 1;
      return;
    }
    const auto [i, j] = cells[c];
    int lo = 0;
    if (j > 0) lo = std::max(lo, fill[{i, j - 1}]);
    if (i > 0) lo = std::max(lo, fill[{i - 1, j}] + 1);
    for (int v = lo; v < r; ++v) {
      fill[{i, j}] = v;
      rec(c + 1);
    }
    fill.erase({i, j});
  };
  rec(0);
  return out;
}

// Coefficient of s_lambda in s_mu s_nu: coefficient of x^{lambda+delta} in s_nu a_{mu+delta}.
std::map<Partition, Integer> lr_by_alternants(const Partition& mu, const Partition& nu, int w) {
  const int r = static_cast<int>(mu.size());
  Poly prod;
  const Poly s = schur_by_tableaux(nu, r);
  for_each_permutation(r, [&](const std::vector<int>& perm, int sign) {
    std::vector<int> a(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) a[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = mu[static_cast<std::size_t>(i)] + r - 1 - i;
    for (const auto& [e, c] : s) {
      std::vector<int> f = e;
      for (int i = 0; i < r; ++i) f[static_cast<std::size_t>(i)] += a[static_cast<std::size_t>(i)];
      prod[f] += sign * c;
    }
  });
  std::map<Partition, Integer> out;
  for (const auto& [e, c] : prod) {
    bool decreasing = true;
    for (int i = 0; i + 1 < r; ++i) decreasing = decreasing && e[static_cast<std::size_t>(i)] > e[static_cast<std::size_t>(i + 1)];
    if (!decreasing || sgn(c) == 0) continue;
    Partition lam(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) lam[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)] - (r - 1 - i);
    if (lam[0] <= w) out[lam] = c;
  }
  return out;
}

GradedVector<Rational> sigma(const RingPtr& R, const std::string& label) {
  return GradedVector<Rational>::basis_vector(R, R->index_of(label), Precision());
}

}  // namespace

TEST(SchubertRing, Gr24Products) {
  auto R = schubert_ring(2, 4);
  ASSERT_EQ(R->size(), 6);
  EXPECT_EQ(R->dimension, 4);
  auto s1 = sigma(R, "s1");
  EXPECT_EQ(cup(s1, s1).coeffs(), (sigma(R, "s2") + sigma(R, "s11")).coeffs());
  EXPECT_EQ(cup(s1, sigma(R, "s2")).coeffs(), sigma(R, "s21").coeffs());
  EXPECT_EQ(cup(sigma(R, "s2"), sigma(R, "s2")).coeffs(), sigma(R, "s22").coeffs());
  EXPECT_TRUE(cup(sigma(R, "s2"), sigma(R, "s11")).is_zero_vector());
  EXPECT_EQ(integrate(cup(cup(s1, s1), cup(s1, s1))), 2);  // degree of Gr(2,4) in the Pluecker embedding
  EXPECT_EQ(R->c1[1], 4);
  EXPECT_EQ(R->fano_index, 4);
  EXPECT_THROW(schubert_ring(0, 4), std::invalid_argument);
  EXPECT_THROW(schubert_ring(4, 4), std::invalid_argument);
}

TEST(SchubertRing, BettiNumbersAndStructure) {
  auto R = schubert_ring(2, 5);
  ASSERT_EQ(R->size(), 10);
  std::vector<int> betti(7, 0);
  for (const auto& b : R->basis) ++betti[static_cast<std::size_t>(b.degree)];
  EXPECT_EQ(betti, (std::vector<int>{1, 1, 2, 2, 2, 1, 1}));
  for (auto [r, n] : {std::pair{2, 4}, {2, 5}, {3, 6}, {2, 6}}) {
    auto S = schubert_ring(r, n);
    auto chk = check_ring(S);
    EXPECT_TRUE(chk.ok) << S->name << ": " << chk.failure;
    // Poincare duality pairs sigma_mu with the complementary partition
    for (int i = 0; i < S->size(); ++i) {
      auto mu = schubert_partition(r, n, i);
      Partition comp(mu.size());
      for (std::size_t k = 0; k < mu.size(); ++k) comp[k] = (n - r) - mu[mu.size() - 1 - k];
      for (int j = 0; j < S->size(); ++j) {
        auto v = cup(GradedVector<Rational>::basis_vector(S, i, Precision()), GradedVector<Rational>::basis_vector(S, j, Precision()));
        EXPECT_EQ(integrate(v), schubert_partition(r, n, j) == comp ? 1 : 0);
      }
    }
    // chi(O) = 1 exercises ch(TF) through the Todd class
    auto O = KClass(S, GradedVector<Rational>::unit(S, Precision()), "O");
    EXPECT_EQ(chi_todd(O, O), 1) << S->name;
    EXPECT_EQ(S->chTF[0], r * (n - r));
  }
}

TEST(SchubertRing, OneRowIsProjectiveSpace) {
  for (int n = 2; n <= 6; ++n) {
    auto G = schubert_ring(1, n);
    auto P = build_projective_ring(n);
    ASSERT_EQ(G->size(), P->size());
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(G->degree(i), P->degree(i));
      for (int j = 0; j < n; ++j) {
        auto a = cup(GradedVector<Rational>::basis_vector(G, i, Precision()), GradedVector<Rational>::basis_vector(G, j, Precision()));
        auto b = cup(GradedVector<Rational>::basis_vector(P, i, Precision()), GradedVector<Rational>::basis_vector(P, j, Precision()));
        EXPECT_EQ(a.coeffs(), b.coeffs());
      }
    }
    EXPECT_EQ(G->integral, P->integral);
    EXPECT_EQ(G->c1, P->c1);
    EXPECT_EQ(G->chTF, P->chTF);
  }
}

TEST(SchubertRing, LittlewoodRichardsonAgainstTableaux) {
  for (auto [r, w] : {std::pair{2, 4}, {3, 3}, {3, 4}}) {
    const auto parts = box_partitions(r, w);
    for (const auto& mu : parts)
      for (const auto& nu : parts) {
        auto a = lr_product(mu, nu, w);
        auto b = lr_by_alternants(mu, nu, w);
        EXPECT_EQ(a, b) << partition_label(mu) << " * " << partition_label(nu);
        for (const auto& [lam, c] : a) EXPECT_GT(c, 0);
      }
  }
}

TEST(EulerMatrix, ExamplesAndRiemannRoch) {
  EXPECT_EQ(euler_matrix_grassmann({0, 0}, {0, 0}, 2, 4), 1);
  EXPECT_EQ(euler_matrix_grassmann({0, 0}, {1, 0}, 2, 4), 4);
  EXPECT_EQ(euler_matrix_grassmann({1, 0}, {0, 0}, 2, 4), 0);
  // Sym^2 S^v on Gr(2,4) has 10 sections, Lambda^2 = O(1) has 6
  EXPECT_EQ(euler_matrix_grassmann({0, 0}, {2, 0}, 2, 4), 10);
  EXPECT_EQ(euler_matrix_grassmann({0, 0}, {1, 1}, 2, 4), 6);

  auto C = make_constants(50, 8);
  for (auto [r, n] : {std::pair{2, 4}, {2, 5}}) {
    auto R = schubert_ring(r, n);
    const auto parts = box_partitions(r, n - r);
    for (const auto& mu : parts)
      for (const auto& nu : parts) {
        if (r == 2 && n == 5 && (partition_size(mu) > 2 || partition_size(nu) > 3)) continue;
        auto E1 = schur_bundle(R, r, n, mu);
        auto E2 = schur_bundle(R, r, n, nu);
        const Rational exact = euler_matrix_grassmann(mu, nu, r, n);
        EXPECT_EQ(chi_todd(E1, E2), exact) << E1.label << " " << E2.label;
        if (n == 4) {
          auto h = hrr_check(E1, E2, C);
          EXPECT_TRUE(abs(h.chi_gamma - BigComplex(exact, C.precision())) < tenth_power(40, C.precision())) << E1.label << " " << E2.label;
        }
      }
  }
}

TEST(Satake, Examples) {
  const Precision p = Precision::digits(30);
  auto R = schubert_ring(2, 4);
  AntiSymmetricElement unit{{{1, 0}, BigComplex(1L, p)}};
  auto v = satake_map(unit, R, 2, 4, p);
  EXPECT_TRUE(abs(v[0] - BigComplex(1L, p)) < tenth_power(25, p));
  AntiSymmetricElement top{{{3, 2}, BigComplex(1L, p)}};
  EXPECT_TRUE(abs(satake_map(top, R, 2, 4, p)[R->index_of("s22")] - BigComplex(1L, p)) < tenth_power(25, p));
  AntiSymmetricElement both{{{3, 2}, BigComplex(2L, p)}, {{2, 0}, BigComplex(3L, p)}};
  auto w = satake_map(both, R, 2, 4, p);
  EXPECT_TRUE(abs(w[R->index_of("s22")] - BigComplex(2L, p)) < tenth_power(25, p));
  EXPECT_TRUE(abs(w[R->index_of("s1")] - BigComplex(3L, p)) < tenth_power(25, p));
  EXPECT_THROW(satake_map(AntiSymmetricElement{{{4, 0}, BigComplex(1L, p)}}, R, 2, 4, p), std::out_of_range);
  EXPECT_THROW(satake_map(AntiSymmetricElement{{{1, 1}, BigComplex(1L, p)}}, R, 2, 4, p), std::invalid_argument);
}

TEST(Spectrum, LongestEigenvalue) {
  auto C = make_constants(40, 4);
  const Precision p = C.precision();
  auto s = grassmann_spectrum(2, 5, C);
  EXPECT_EQ(s.eigenvalues.size(), 10U);
  EXPECT_TRUE(abs(s.T - s.T_closed) < C.tolerance(15));
  EXPECT_EQ(s.T.to_string(12).substr(0, 12), "8.0901699437");
  EXPECT_EQ(s.maximizers.size(), 5U);
  EXPECT_TRUE(s.maximizers_consecutive);
  EXPECT_TRUE(s.property_o.satisfied);
  // K0 = (1, 0) gives T itself
  auto k0 = std::find(s.tuples.begin(), s.tuples.end(), std::vector<int>{1, 0}) - s.tuples.begin();
  EXPECT_TRUE(abs(s.eigenvalues[static_cast<std::size_t>(k0)] - BigComplex(s.T)) < C.tolerance(15));

  auto s24 = grassmann_spectrum(2, 4, C);
  EXPECT_TRUE(abs(s24.T - sqrt(BigReal(32L, p))) < C.tolerance(15));
  EXPECT_EQ(s24.maximizers.size(), 4U);

  // rotating every k by one multiplies the multiset by e^{-2 pi i/5}
  const BigComplex rot = BigComplex::polar(-(C.pi() * 2L / 5L));
  for (const auto& u : s.eigenvalues) {
    const BigComplex target = u * rot;
    bool found = false;
    for (const auto& v : s.eigenvalues) found = found || abs(v - target) < C.tolerance(15);
    EXPECT_TRUE(found);
  }
}

TEST(Ehx, MirrorShape) {
  EXPECT_EQ(ehx_mirror(2, 4).size(), 6U);
  EXPECT_EQ(ehx_mirror(2, 5).size(), 9U);  // r(w-1) + w(r-1) + 2
  for (int n = 2; n <= 5; ++n) {
    auto W = ehx_mirror(1, n);
    EXPECT_EQ(W.size(), static_cast<std::size_t>(n));
    auto a = ehx_constant_terms(1, n, 3 * n).G;
    auto b = quantum_period(j_projective(n, 3 * n)).G;
    EXPECT_EQ(a, b) << n;
  }
  auto G = ehx_constant_terms(2, 4, 12);
  EXPECT_EQ(G.G[0], 1);
  EXPECT_EQ(G.G[1], 0);
  for (int d = 1; d <= 12; ++d)
    if (d % 4) {
      EXPECT_EQ(G.G[static_cast<std::size_t>(d)], 0) << d;
    }
  EXPECT_EQ(G.r, 4);
  EXPECT_EQ(G.G[4], 2);
}

TEST(Bcfk, AgreesWithMirror) {
  const int digits = 50;
  const Precision p = Precision::digits(digits);
  auto res = bcfk_j_series(2, 4, 12, digits);
  EXPECT_TRUE(res.imaginary_residue < tenth_power(38, p));
  const auto& J = res.J;
  EXPECT_TRUE(abs(J[0][0] - BigReal(1L, p)) < tenth_power(45, p));
  for (int i = 1; i < J[0].size(); ++i) EXPECT_TRUE(J[0][i].is_zero() || abs(J[0][i]) < tenth_power(45, p));
  for (int d = 1; d <= 12; ++d)
    if (d % 4) {
      EXPECT_TRUE(J[d].is_zero_vector());
    }
  auto G = ehx_constant_terms(2, 4, 12);
  for (int d : {4, 8, 12}) {
    BigReal g(G.G[static_cast<std::size_t>(d)], p);
    EXPECT_TRUE(abs(J[d][0] - g) < tenth_power(38, p) * max(BigReal(1L, p), abs(g))) << d;
  }

  auto res5 = bcfk_j_series(2, 5, 10, digits);
  auto G5 = ehx_constant_terms(2, 5, 10);
  for (int d : {5, 10}) {
    BigReal g(G5.G[static_cast<std::size_t>(d)], p);
    EXPECT_TRUE(abs(res5.J[d][0] - g) < tenth_power(38, p)) << d;
  }
  // r = 1 is the projective J-function
  auto res1 = bcfk_j_series(1, 3, 9, 30);
  auto JP = j_projective(3, 9);
  for (int d = 0; d <= 9; ++d)
    for (int i = 0; i < 3; ++i) EXPECT_TRUE(abs(res1.J[d][i] - BigReal(JP[d][i], res1.J[d][i].precision())) < tenth_power(25, Precision::digits(30)));
}
