#include <gtest/gtest.h>

#include <random>

#include "fwcone/dual_cone.hpp"
#include "fwcone/families.hpp"
#include "fwcone/poly_forms.hpp"
#include "oracles.hpp"

using namespace fwcone;

TEST(PnaForm, Examples) {
  EXPECT_EQ(pna_form({2, Rational(1)}).Q, SymMatrix<Rational>::uniform(2, Rational(1), Rational(1)));
  EXPECT_EQ(pna_form({3, Rational(2)}).Q,
            SymMatrix<Rational>::from_rows({{Rational(2), Rational(1), Rational(1)},
                                            {Rational(1), Rational(2), Rational(1)},
                                            {Rational(1), Rational(1), Rational(2)}}));
  std::mt19937 rng(4);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 1 + rng() % 7;
    const Rational a = oracle::random_rational(rng);
    EXPECT_EQ(pna_form({n, a}).Q.trace(), Rational(static_cast<long long>(n)) * a);
  }
  EXPECT_THROW(pna_form({0, Rational(1)}), std::invalid_argument);
}

TEST(PnaForm, PolynomialShape) {
  // (sum x)^2 + (a - 1) sum x^2
  const Rational a(5, 2);
  const auto p = quadratic_poly(pna_form({3, a}));
  oracle::Poly expect;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      std::vector<int> e(3, 0);
      ++e[i];
      ++e[j];
      expect[e] += 1;
    }
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<int> e(3, 0);
    e[i] = 2;
    expect[e] += a - 1;
  }
  for (const auto& [e, c] : expect) EXPECT_EQ(p.coefficient(ExponentTuple(e)), c);
  EXPECT_EQ(p.num_terms(), expect.size());
}

TEST(RankOnePerturbDet, Examples) {
  for (std::size_t m = 2; m < 6; ++m) EXPECT_EQ(rank_one_perturb_det(Rational(3), Rational(3), m), Rational(0));
  EXPECT_EQ(rank_one_perturb_det(Rational(3), Rational(1), 2), Rational(8));
  EXPECT_EQ(rank_one_perturb_det(Rational(2), Rational(1), 3), Rational(4));
  EXPECT_EQ(oracle::cofactor_det(oracle::dense(SymMatrix<Rational>::uniform(3, Rational(2), Rational(1)))), Rational(4));
  EXPECT_THROW(rank_one_perturb_det(Rational(1), Rational(1), 0), std::invalid_argument);
}

TEST(RankOnePerturbDet, MatchesCofactorOracle) {
  std::mt19937 rng(10);
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = 1 + t % 5;
    const Rational b = oracle::random_rational(rng), c = oracle::random_rational(rng);
    EXPECT_EQ(rank_one_perturb_det(b, c, m), oracle::cofactor_det(oracle::dense(SymMatrix<Rational>::uniform(m, b, c))));
  }
}

TEST(PnaThreshold, Values) {
  EXPECT_EQ(pna_threshold(3, 2), Rational(2));
  EXPECT_EQ(pna_threshold(4, 3), Rational(3, 2));
  for (std::size_t n = 2; n < 9; ++n) EXPECT_EQ(pna_threshold(n, n), Rational(1));
  EXPECT_THROW(pna_threshold(3, 1), std::invalid_argument);
  EXPECT_THROW(pna_threshold(3, 4), std::invalid_argument);
  EXPECT_THROW(pna_threshold(1, 1), std::invalid_argument);
}

TEST(PnaWitness, ThreeTwo) {
  const auto d = pna_witness_decomposition(3, 2, Rational(2));
  ASSERT_EQ(d.blocks().size(), 3u);
  for (const auto& b : d.blocks()) EXPECT_EQ(b.matrix, SymMatrix<Rational>::uniform(2, Rational(1), Rational(1)));
  EXPECT_EQ(d.residual(), Rational(0));
  EXPECT_EQ(d.reconstruct(), pna_form({3, Rational(2)}).Q);
}

TEST(PnaWitness, FourThree) {
  const auto d = pna_witness_decomposition(4, 3, Rational(3, 2));
  ASSERT_EQ(d.blocks().size(), 4u);
  for (const auto& b : d.blocks()) EXPECT_EQ(b.matrix, SymMatrix<Rational>::uniform(3, Rational(1, 2), Rational(1, 2)));
  EXPECT_EQ(d.reconstruct(), pna_form({4, Rational(3, 2)}).Q);
}

TEST(PnaWitness, FullWidthIsGramItself) {
  const auto d = pna_witness_decomposition(5, 5, Rational(1));
  ASSERT_EQ(d.blocks().size(), 1u);
  EXPECT_EQ(d.blocks()[0].matrix, pna_form({5, Rational(1)}).Q);
  EXPECT_TRUE(is_psd(d.blocks()[0].matrix, 0.0).is_psd);
}

TEST(PnaWitness, AboveThresholdExactAndBelowRejected) {
  for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 2}, {4, 2}, {4, 3}, {5, 3}, {5, 4}, {6, 4}}) {
    const Rational th = pna_threshold(n, k);
    for (const Rational& a : std::vector<Rational>{th, th + Rational(1, 3), th * 2}) {
      const auto d = pna_witness_decomposition(n, k, a);
      EXPECT_EQ(d.blocks().size(), binomial(n, k));
      EXPECT_EQ(d.reconstruct(), pna_form({n, a}).Q);
      for (const auto& b : d.blocks()) EXPECT_TRUE(oracle::psd_by_all_minors(oracle::dense(b.matrix)));
    }
    EXPECT_THROW(pna_witness_decomposition(n, k, th - Rational(1, 20)), std::domain_error);
  }
}

TEST(SobsComparison, Examples) {
  EXPECT_TRUE(sobs_comparison(SymMatrix<double>::uniform(2, 1.0, 1.0)).sobs);
  EXPECT_EQ(comparison_matrix(SymMatrix<double>::uniform(2, 1.0, 1.0)), SymMatrix<double>::uniform(2, 1.0, -1.0));
  EXPECT_FALSE(sobs_comparison(pna_form({3, Rational(19, 10)}).Q.cast<double>()).sobs);
  EXPECT_FALSE(sobs_comparison(pna_form({3, Rational(19, 10)}).Q).sobs);
  EXPECT_TRUE(sobs_comparison(pna_form({3, Rational(2)}).Q).sobs);
  EXPECT_EQ(determinant(comparison_matrix(pna_form({3, Rational(2)}).Q)), Rational(0));
  EXPECT_EQ(rank_one_perturb_det(Rational(2), Rational(-1), 3), Rational(0));
}

TEST(SobsComparison, ComparisonMatrixKeepsDiagonal) {
  std::mt19937 rng(3);
  const auto q = oracle::random_sym(rng, 5);
  const auto c = comparison_matrix(q);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(c(i, j), i == j ? q(i, i) : -std::abs(q(i, j)));
}

TEST(Fixtures, Values) {
  const Fixtures f = example_m_fixtures();
  EXPECT_EQ(f.M(0, 0), Rational(49));
  EXPECT_EQ(f.M(4, 4), Rational(73));
  EXPECT_EQ(f.Qprime(1, 1), Rational(66));
  EXPECT_EQ(f.Qprime(1, 5), Rational(-11, 5));
  EXPECT_EQ(f.supports27.size(), 27u);
  EXPECT_EQ(f.Qprime.dim(), 15u);
  EXPECT_EQ(f.supports27.front(), Support({0, 1, 3, 6}));
  EXPECT_EQ(frobenius_inner(f.A, f.M), Rational(-1));
  for (const auto& s : f.supports27) {
    EXPECT_EQ(s.size(), 4u);
    EXPECT_NO_THROW(s.check_within(15));
  }
  // Loading twice gives identical constants.
  const Fixtures g = example_m_fixtures();
  EXPECT_EQ(f.Qprime, g.Qprime);
  EXPECT_EQ(f.supports27, g.supports27);
}

TEST(Fixtures, QprimeOrderStartsGraded) {
  const Fixtures f = example_m_fixtures();
  EXPECT_EQ(f.qprime_basis[0].exps, (std::vector<int>{2, 0, 0, 0, 0}));
  EXPECT_EQ(f.qprime_basis[1].exps, (std::vector<int>{1, 1, 0, 0, 0}));
  EXPECT_EQ(f.qprime_basis[2].exps, (std::vector<int>{0, 2, 0, 0, 0}));
  EXPECT_EQ(f.qprime_basis[3].exps, (std::vector<int>{1, 0, 1, 0, 0}));
  EXPECT_EQ(f.qprime_basis[14].exps, (std::vector<int>{0, 0, 0, 0, 2}));
}

TEST(BnrPairing, ExactAgainstClosedForm) {
  for (std::size_t n : {3u, 4u})
    for (int r : {0, 1, 2})
      for (std::size_t k : {2u, 3u})
        for (const Rational& a : std::vector<Rational>{Rational(1), Rational(3, 2), Rational(2), Rational(-7, 3)}) {
          const auto basis = monomial_basis(n, r + 1);
          const auto gram =
              default_gram(multiply_weighted_power(pna_form({n, a}), std::vector<Rational>(n, Rational(1)), r), basis);
          Rational npow(1);
          for (int i = 0; i <= r; ++i) npow *= static_cast<long long>(n);
          const Rational expect = npow * (Rational(static_cast<long long>(k) - 1) * a - Rational(static_cast<long long>(n) - 1));
          EXPECT_EQ(frobenius_inner(bnr_certificate(n, r, k), gram), expect);
        }
}
