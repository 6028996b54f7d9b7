#include <gtest/gtest.h>

#include <sacover/extremal.hpp>
#include <sacover/generators.hpp>

using namespace sacover;

TEST(Envelope, PlanarExponentsAndValue) {
  auto a = envelope_alphas({2, 2});
  EXPECT_NEAR(a[0], 2.0 / 3, 1e-12);
  EXPECT_NEAR(a[1], 2.0 / 3, 1e-12);
  EXPECT_NEAR(E_func({2, 2}, {8, 8}), 16.0, 1e-9);
  auto [x, y] = bipartite_exponents(2, 3);
  EXPECT_NEAR(x, 3.0 / 5, 1e-12);
  EXPECT_NEAR(y, 4.0 / 5, 1e-12);
  auto [u, v] = bipartite_exponents(1, 2);
  EXPECT_EQ(u, 0.0);
  EXPECT_EQ(v, 1.0);
  EXPECT_THROW(bipartite_exponents(1, 1), DomainError);
}

TEST(Envelope, FstarForTwoParts) {
  EXPECT_NEAR(Fstar_func({2, 2}, {8, 8}, 0.0), 32.0, 1e-9);
  Envelope env;
  EXPECT_NEAR(env.value(8, 8), 32.0, 1e-9);
  // k = 2 reduces to (mn)^eps (E + m + n)
  double eps = 0.05;
  EXPECT_NEAR(Fstar_func({2, 2}, {30, 70}, eps), std::pow(30.0 * 70, eps) * (E_func({2, 2}, {30, 70}) + 100), 1e-6);
}

TEST(Envelope, ThreePartRegressionValue) {
  // direct evaluation, frozen
  EXPECT_NEAR(F_func({2, 2, 2}, {64, 64, 64}, 0.0), 83058.8, 0.1);
}

TEST(Envelope, FstarMonotoneInEachArgument) {
  Rng rng(3);
  for (int t = 0; t < 500; ++t) {
    int k = 2 + static_cast<int>(rng.below(3));
    std::vector<int> d;
    std::vector<double> n;
    for (int i = 0; i < k; ++i) {
      d.push_back(2 + static_cast<int>(rng.below(3)));
      n.push_back(std::exp(rng.uniform(0, 8)));
    }
    double base = Fstar_func(d, n, 0.01);
    int i = static_cast<int>(rng.below(k));
    n[i] *= 1.0 + rng.uniform();
    ASSERT_GE(Fstar_func(d, n, 0.01), base * (1 - 1e-12));
  }
}

TEST(LemmaA1, ScalingIdentityAndLinearSystem) {
  EXPECT_LE(check_lemma_A1({2, 2}, 2.0, {64, 64}).residual, 1e-12);
  Rng rng(1);
  for (int t = 0; t < 2000; ++t) {
    int k = 2 + static_cast<int>(rng.below(3));
    std::vector<int> d;
    std::vector<double> n;
    for (int i = 0; i < k; ++i) {
      d.push_back(2 + static_cast<int>(rng.below(4)));
      n.push_back(std::exp(rng.uniform(0, 12)));
    }
    auto res = check_lemma_A1(d, std::exp(rng.uniform(0, 3)), n);
    ASSERT_LE(res.residual, 1e-9);
    ASSERT_LE(res.matrix_residual, 1e-9);
    ASSERT_LE(lemma_A1_system_residual(d), 1e-9);
  }
}

TEST(LemmaA2, HoldsWhereHypothesisIsMet) {
  EXPECT_EQ(check_lemma_A2({3, 3}, 1, {100, 100}, 0.01).status, LemmaStatus::Holds);
  EXPECT_THROW(check_lemma_A2({2, 3}, 0, {100, 100}, 0.0), ContractViolation);
  Rng rng(5);
  int met = 0;
  for (int t = 0; t < 500; ++t) {
    std::vector<int> d{3 + static_cast<int>(rng.below(3)), 2 + static_cast<int>(rng.below(4)), 3};
    std::vector<double> n{std::exp(rng.uniform(1, 10)), std::exp(rng.uniform(1, 10)), std::exp(rng.uniform(1, 10))};
    auto res = check_lemma_A2(d, 0, n, 0.01);
    ASSERT_NE(res.status, LemmaStatus::Fails);
    met += res.status == LemmaStatus::Holds;
  }
  EXPECT_GT(met, 100);
}

TEST(LemmaA3, TwoPartRatioAboveOneThird) {
  for (double n : {64.0, 100.0, 1e3, 1e4, 1e6}) {
    auto res = check_lemma_A3({2, 2}, {n, n}, 0.0);
    ASSERT_TRUE(res.precondition);
    EXPECT_GT(res.ratio, 1.0 / 3) << n;
  }
  EXPECT_FALSE(check_lemma_A3({2, 2}, {2, 1000}, 0.0).precondition);
}

TEST(Zarankiewicz, KstFreeness) {
  auto grid = gen_st_grid(3);
  EXPECT_TRUE(kst_free_check(edge_set(grid), grid.m(), grid.n(), 2, 2));
  std::vector<Edge> k33;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      k33.push_back({i, j});
  EXPECT_FALSE(kst_free_check(k33, 3, 3, 2, 2));
  EXPECT_TRUE(kst_free_check(k33, 3, 3, 4, 1));
}

TEST(Zarankiewicz, EdgeBoundOnSmallCovers) {
  BicliqueCover matching;
  for (int i = 0; i < 4; ++i)
    matching.blocks.push_back({{i}, {i}, BlockTag::Base});
  matching.canonicalize();
  auto rep = edge_bound_check(4, matching, 1, 1);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.bound, 16);

  BicliqueCover dense;
  dense.blocks.push_back({{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5}, BlockTag::Base});
  dense.canonicalize();
  auto bad = edge_bound_check(36, dense, 1, 1);
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.violating_blocks.size(), 1u);
}

TEST(DenseBiclique, EqualityOnSingleBlockAndAveragingBound) {
  BicliqueCover one;
  one.blocks.push_back({{0, 1, 2}, {0, 1, 2, 3}, BlockTag::Contains});
  one.canonicalize();
  auto d = extract_dense_biclique(12, one);
  EXPECT_EQ(d.ratio, Rational(12, 7));
  EXPECT_EQ(d.ratio, d.bound);
  EXPECT_TRUE(d.meets_bound);

  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    BicliqueCover c;
    std::int64_t edges = 0;
    int blocks = 1 + static_cast<int>(rng.below(6));
    for (int b = 0; b < blocks; ++b) {
      int sa = 1 + static_cast<int>(rng.below(5)), sb = 1 + static_cast<int>(rng.below(5));
      Block blk;
      for (int i = 0; i < sa; ++i)
        blk.a.push_back(10 * b + i);
      for (int i = 0; i < sb; ++i)
        blk.b.push_back(10 * b + i);
      edges += sa * sb;
      c.blocks.push_back(blk);
    }
    c.canonicalize();
    ASSERT_TRUE(extract_dense_biclique(edges, c).meets_bound);
  }
  EXPECT_THROW(extract_dense_biclique(0, BicliqueCover{}), Refusal);
}

TEST(Fit, RecoversKnownPowerLaw) {
  std::vector<double> x{1, 2, 4, 8, 16}, y;
  for (double v : x)
    y.push_back(3.0 * std::pow(v, 1.5));
  auto f = fit_loglog(x, y);
  EXPECT_NEAR(f.slope, 1.5, 1e-12);
  EXPECT_NEAR(f.constant, 3.0, 1e-9);
  std::vector<SeriesPoint> s{{10, 10, 20}, {20, 20, 40}, {40, 40, 80}};
  EXPECT_THROW(exponent_fit(s, Envelope{}), Refusal);
  EXPECT_THROW(fit_loglog({1, 1, 1}, {2, 3, 4}), Refusal);
}
