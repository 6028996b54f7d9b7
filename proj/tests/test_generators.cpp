#include <cmath>
#include <gtest/gtest.h>

#include <sacover/cover.hpp>
#include <sacover/extremal.hpp>
#include <sacover/generators.hpp>
#include <sacover/io.hpp>

using namespace sacover;

TEST(StGrid, SmallCasesByEnumeration) {
  auto g1 = gen_st_grid(1);
  EXPECT_EQ(g1.m(), 2);
  EXPECT_EQ(g1.n(), 1);
  EXPECT_EQ(edge_set(g1).size(), 1u);
  auto g2 = gen_st_grid(2);
  EXPECT_EQ(g2.m(), 16);
  EXPECT_EQ(g2.n(), 8);
  EXPECT_EQ(edge_set(g2).size(), 16u);
}

TEST(StGrid, EdgeCountIsKToTheFourth) {
  for (int k = 1; k <= 8; ++k) {
    auto g = gen_st_grid(k);
    auto edges = edge_set(g);
    ASSERT_EQ(static_cast<std::int64_t>(edges.size()), static_cast<std::int64_t>(k) * k * k * k);
    std::vector<int> deg(g.n(), 0);
    for (auto [p, q] : edges)
      ++deg[q];
    for (int d : deg)
      ASSERT_EQ(d, k);
  }
}

TEST(StGrid, PointLineGraphsAreK22Free) {
  for (int k = 2; k <= 5; ++k) {
    auto g = gen_st_grid(k);
    EXPECT_TRUE(k22_free(edge_set(g), g.m(), g.n()));
  }
}

TEST(Clone, SingleIncidentPair) {
  IncidenceInstance pair;
  pair.points_p.push_back(Point({Rational(0), Rational(0)}));
  pair.sets_q.push_back(GeomSet::line(1, 1, 0));
  auto c = gen_clone(pair, 2);
  auto edges = edge_set(c);
  EXPECT_EQ(edges.size(), 4u);
  EXPECT_FALSE(kst_free_check(edges, c.m(), c.n(), 2, 2));
  EXPECT_TRUE(kst_free_check(edges, c.m(), c.n(), 3, 3));
}

TEST(Clone, TripledStGridIsK44Free) {
  auto c = gen_clone(gen_st_grid(2), 3);
  auto edges = edge_set(c);
  EXPECT_EQ(edges.size(), 9u * 16u);
  EXPECT_TRUE(kst_free_check(edges, c.m(), c.n(), 4, 4));
  EXPECT_FALSE(kst_free_check(edges, c.m(), c.n(), 3, 3));
}

TEST(Clone, ExplicitIndicesAndRefusal) {
  IncidenceInstance inst;
  inst.explicit_edges = ExplicitEdges{2, 2, {{0, 1}, {1, 0}}};
  auto c = gen_clone(inst, 2);
  EXPECT_EQ(edge_set(c), (std::vector<Edge>{{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 0}, {2, 1}, {3, 0}, {3, 1}}));
  IncidenceInstance full;
  full.explicit_edges = ExplicitEdges{2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  EXPECT_THROW(gen_clone(full, 2), Refusal);
  EXPECT_EQ(edge_set(gen_clone(inst, 1)), edge_set(inst));
}

TEST(Random, SameSeedSameInstance) {
  for (std::string fam : {"halfplanes", "lines", "disks", "halfspaces"}) {
    auto a = gen_random(fam, 30, 25, 99), b = gen_random(fam, 30, 25, 99);
    EXPECT_EQ(a.points_p, b.points_p);
    EXPECT_EQ(a.sets_q, b.sets_q);
    EXPECT_NE(gen_random(fam, 30, 25, 100).points_p, a.points_p);
  }
  EXPECT_THROW(gen_random("parabolas", 3, 3, 1), ContractViolation);
}

TEST(Random, DiskEdgeCountRegression) {
  // first run recorded this value
  EXPECT_EQ(edge_set(gen_random("disks", 100, 100, 7)).size(), 2025u);
}

TEST(Random, LinesHaveIncidences) {
  auto inst = gen_random("lines", 100, 40, 3);
  EXPECT_GE(edge_set(inst).size(), 80u);
}

// Arcs along the parabola cost a log factor per level; planar cells would give slope 4/3.
TEST(Curve, CostGrowsAboutLinearly) {
  std::vector<double> x, y;
  for (int n : {32, 64, 128, 256, 512}) {
    auto inst = gen_curve_restricted(n, n, 5);
    auto c = merge_pass(build_cover(inst));
    ASSERT_TRUE(verify_cover(inst, c).ok);
    x.push_back(n);
    y.push_back(static_cast<double>(c.cost_j));
    EXPECT_LE(c.cost_j, 2 * n * static_cast<std::int64_t>(std::log2(n)));
  }
  auto fit = fit_loglog(x, y);
  EXPECT_LE(fit.slope, 1.3);
  EXPECT_GE(fit.slope, 0.75);
}

TEST(Curve, ArcPathBeatsPlanarCells) {
  auto inst = gen_curve_restricted(512, 512, 9);
  auto arcs = merge_pass(build_cover(inst));
  auto planar = inst;
  planar.p_on_parabola = false;
  auto cells = merge_pass(build_cover(planar));
  ASSERT_TRUE(verify_cover(inst, arcs).ok);
  ASSERT_TRUE(verify_cover(planar, cells).ok);
  EXPECT_LT(arcs.cost_j, cells.cost_j);
}

TEST(Curve, ArcPathVerifiesWithLinesAndDuplicates) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto inst = gen_curve_restricted(40, 30, seed);
    // Lines through two curve points meet the parabola exactly there.
    Rng rng(seed);
    for (int j = 0; j < 10; ++j) {
      const Point& a = inst.points_p[rng.below(40)];
      const Point& b = inst.points_p[rng.below(40)];
      if (a == b)
        continue;
      inst.sets_q.push_back(GeomSet::line(b[1] - a[1], a[0] - b[0], (b[1] - a[1]) * a[0] + (a[0] - b[0]) * a[1]));
    }
    inst.points_p.push_back(inst.points_p.front());
    auto c = build_cover(inst);
    EXPECT_TRUE(verify_cover(inst, c).ok) << seed;
  }
}

TEST(Curve, FlagRoundTripsAndIsChecked) {
  auto inst = gen_curve_restricted(5, 4, 2);
  auto back = instance_from_json(instance_to_json(inst));
  EXPECT_TRUE(back.p_on_parabola);
  inst.points_p[0] = Point(std::vector<Rational>{Rational(1), Rational(2)});
  EXPECT_THROW(validate(inst), ContractViolation);
}

TEST(Transpose, SwapsSides) {
  auto g = gen_st_grid(3);
  complete_views(g);
  auto t = transpose(g);
  EXPECT_EQ(t.m(), g.n());
  auto e = edge_set(g);
  std::vector<Edge> flipped;
  for (auto [p, q] : e)
    flipped.push_back({q, p});
  std::sort(flipped.begin(), flipped.end());
  EXPECT_EQ(edge_set(t), flipped);
}
