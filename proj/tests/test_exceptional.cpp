#include "qgamma/exceptional.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qgamma;

TEST(Beilinson, ChiMatrix) {
  auto E2 = beilinson_collection(2);
  ASSERT_EQ(E2.size(), 2U);
  EXPECT_EQ(E2[1].label, "O(1)");
  auto m = chi_matrix(E2);
  EXPECT_EQ(m[0][0], 1);
  EXPECT_EQ(m[0][1], 2);
  EXPECT_EQ(m[1][0], 0);
  EXPECT_EQ(m[1][1], 1);
  auto m5 = chi_matrix(beilinson_collection(5));
  for (unsigned long k = 0; k < 5; ++k) EXPECT_EQ(m5[0][k], Rational(binomial(4 + k, 4)));
  EXPECT_THROW(beilinson_collection(1), std::invalid_argument);
}

TEST(Gram, MatchesChiOnLineBundles) {
  auto C = make_constants(50, 8);
  for (int n = 2; n <= 5; ++n) {
    auto R = build_projective_ring(n);
    std::vector<KClass> E;
    for (long k = -1; k < n - 1; ++k) E.push_back(line_bundle(R, k));
    auto g = gram_matrix(E, C);
    auto chi = chi_matrix(E);
    EXPECT_TRUE(g.residual < C.tolerance(10)) << n;
    for (std::size_t i = 0; i < E.size(); ++i) {
      EXPECT_EQ(g.rounded[i][i], 1);
      for (std::size_t j = 0; j < E.size(); ++j) EXPECT_EQ(Rational(g.rounded[i][j]), chi[i][j]);
    }
  }
}

TEST(Gram, PhaseOrderingOnP2IsUnitriangular) {
  auto C = make_constants(50, 8);
  const Precision p = C.precision();
  const BigReal phi(0.05, p);
  auto a = phase_assignment(3, phi, C);
  ASSERT_TRUE(a.admissible);
  std::vector<KClass> E;
  std::vector<BigComplex> marks;
  auto R = build_projective_ring(3);
  for (const auto& [k, v] : a.assigned) {
    E.push_back(line_bundle(R, k));
    marks.push_back(projective_mark(3, k, C));
  }
  ASSERT_EQ(E.size(), 3U);
  auto order = order_by_phase(marks, phi);
  std::vector<KClass> sorted;
  for (auto i : order) sorted.push_back(E[i]);
  auto g = gram_matrix(sorted, C);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(g.rounded[i][i], 1);
    for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(g.rounded[i][j], 0);
  }
  EXPECT_EQ(sorted[0].label, "O(-1)");
  EXPECT_EQ(sorted[2].label, "O(1)");
}

TEST(Mutation, P1Pair) {
  auto C = make_constants(50, 8);
  auto E = beilinson_collection(2);
  MarkedBasis B = MarkedBasis::from_collection(E, {projective_mark(2, 0, C), projective_mark(2, 1, C)}, C);
  auto M = B.right_mutation(0);
  // (O(1), O - 2 O(1))
  EXPECT_EQ(M[0].coords, (std::vector<Integer>{0, 1}));
  EXPECT_EQ(M[1].coords, (std::vector<Integer>{1, -2}));
  EXPECT_TRUE(abs(M[0].mark - B[1].mark) < C.tolerance(5));
  auto g = gram_matrix(M.classes(), C);
  EXPECT_TRUE(g.residual < C.tolerance(10));
  auto order = unitriangular_order(g.rounded);
  ASSERT_TRUE(order.has_value());
  EXPECT_EQ(g.rounded, M.exact_gram());
  auto back = M.left_mutation(0);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(back[i].coords, B[i].coords);
  EXPECT_EQ(back[1].label, "O(1)");
  EXPECT_THROW(B.right_mutation(1), std::out_of_range);
}

TEST(Mutation, OrthogonalPairIsTransposition) {
  auto C = make_constants(30, 4);
  // reference classes with a diagonal Gram matrix
  auto R = build_projective_ring(2);
  std::vector<GradedVector<BigComplex>> ref{GradedVector<BigComplex>::unit(R, C.precision()),
                                            GradedVector<BigComplex>::basis_vector(R, 1, C.precision())};
  MarkedBasis B(ref, {{1, 0}, {0, 1}}, {BigComplex(1L, C.precision()), BigComplex(-1L, C.precision())}, {"a", "b"});
  auto M = B.right_mutation(0);
  EXPECT_EQ(M[0].coords, B[1].coords);
  EXPECT_EQ(M[1].coords, B[0].coords);
}

TEST(Mutation, RandomWordsOnP4) {
  auto C = make_constants(50, 8);
  auto E = beilinson_collection(5);
  std::vector<BigComplex> marks;
  for (long k = 0; k < 5; ++k) marks.push_back(projective_mark(5, k, C));
  const MarkedBasis B = MarkedBasis::from_collection(E, marks, C);
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    MarkedBasis M = B;
    for (int step = 0; step < 10; ++step) {
      const std::size_t i = rng() % 4;
      if (rng() % 2) {
        auto R = M.right_mutation(i);
        auto back = R.left_mutation(i);
        for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(back[k].coords, M[k].coords);
        M = R;
      } else {
        auto L = M.left_mutation(i);
        auto back = L.right_mutation(i);
        for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(back[k].coords, M[k].coords);
        M = L;
      }
    }
    auto g = M.numeric_gram(C);
    EXPECT_TRUE(g.residual < C.tolerance(10)) << g.residual.to_string(4);
    EXPECT_EQ(g.rounded, M.exact_gram());
    auto order = unitriangular_order(g.rounded);
    ASSERT_TRUE(order.has_value());
    auto P = permuted(g.rounded, *order);
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_EQ(P[i][i], 1);
      for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(P[i][j], 0);
    }
  }
}

TEST(Signs, EqualUpToSigns) {
  Matrix<Integer> A{{1, 2, 1}, {0, 1, 3}, {0, 0, 1}};
  Matrix<Integer> B{{1, -2, 1}, {0, 1, -3}, {0, 0, 1}};
  auto s = equal_up_to_signs(A, B);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ((*s)[0] * (*s)[1], -1);
  Matrix<Integer> D{{1, -2, -1}, {0, 1, -3}, {0, 0, 1}};
  EXPECT_FALSE(equal_up_to_signs(A, D).has_value());
  EXPECT_FALSE(unitriangular_order({{1, 1}, {1, 1}}).has_value());
}

TEST(Phase, Assignments) {
  auto C = make_constants(30, 4);
  const Precision p = C.precision();
  auto a5 = phase_assignment(5, BigReal(0.1, p), C);
  ASSERT_TRUE(a5.admissible);
  std::vector<long> ks;
  for (const auto& [k, v] : a5.assigned) ks.push_back(k);
  EXPECT_EQ(ks, (std::vector<long>{-1, 0, 1}));
  EXPECT_NEAR(a5.bound.to_double(), 2.1991148575, 1e-9);
  EXPECT_EQ(a5.pairs.size(), 10U);
  // P^1: v = {2, -2} differ by a real number, so phi = 0 makes the pair indistinct
  auto a2 = phase_assignment(2, BigReal(0L, p), C);
  EXPECT_FALSE(a2.admissible);
  EXPECT_TRUE(a2.assigned.empty());
  auto a2b = phase_assignment(2, BigReal(0.1, p), C);
  ASSERT_TRUE(a2b.admissible);
  ks.clear();
  for (const auto& [k, v] : a2b.assigned) ks.push_back(k);
  EXPECT_EQ(ks, (std::vector<long>{-1, 0}));
}

TEST(Output, GramJsonAndCsv) {
  auto C = make_constants(30, 4);
  auto g = gram_matrix(beilinson_collection(2), C);
  auto j = gram_to_json(g, {"O", "O(1)"});
  EXPECT_EQ(j["exact"][0][1], "2");
  auto csv = gram_to_csv(g, {"O", "O(1)"});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "row,col,row_label,col_label,exact,re,im");
  EXPECT_NE(csv.find("0,1,O,O(1),2,"), std::string::npos);
}
