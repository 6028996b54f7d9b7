#include <gtest/gtest.h>

#include <sacover/cover.hpp>
#include <sacover/generators.hpp>
#include <sacover/oracle.hpp>

#include <numeric>

using namespace sacover;

namespace {

IncidenceInstance explicit_instance(int m, int n, std::vector<Edge> edges) {
  IncidenceInstance inst;
  inst.explicit_edges = ExplicitEdges{m, n, std::move(edges)};
  return inst;
}

IncidenceInstance grid_vs_axis_lines() {
  IncidenceInstance inst;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      inst.points_p.push_back(Point({Rational(x), Rational(y)}));
  for (int c = 0; c < 3; ++c)
    inst.sets_q.push_back(GeomSet::line(0, 1, c));
  for (int c = 0; c < 3; ++c)
    inst.sets_q.push_back(GeomSet::line(1, 0, c));
  return inst;
}

BicliqueCover per_edge_cover(const std::vector<Edge>& edges) {
  BicliqueCover c;
  for (auto [p, q] : edges)
    c.blocks.push_back({{p}, {q}, BlockTag::Base});
  c.canonicalize();
  return c;
}

}  // namespace

TEST(Cover, PerfectMatchingCostsTwicePerEdge) {
  std::vector<Edge> es;
  for (int i = 0; i < 6; ++i)
    es.push_back({i, i});
  auto inst = explicit_instance(6, 6, es);
  auto c = build_cover(inst);
  EXPECT_EQ(c.cost_j, 12);
  EXPECT_TRUE(verify_cover(inst, c).ok);
}

TEST(Cover, GridInstanceBetweenOracleAndPerEdgeBounds) {
  auto inst = grid_vs_axis_lines();
  auto c = build_cover(inst);
  EXPECT_TRUE(verify_cover(inst, c).ok);
  auto opt = min_cover_cost(inst, 18);
  EXPECT_EQ(opt.cost, 24);
  EXPECT_GE(c.cost_j, opt.cost);
  EXPECT_LE(c.cost_j, 36);
}

TEST(Cover, HandBuiltPerEdgeCoverVerifies) {
  auto inst = grid_vs_axis_lines();
  auto c = per_edge_cover(edge_set(inst));
  auto rep = verify_cover(inst, c);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.recomputed_cost, 36);
}

TEST(Cover, VerificationReportsTampering) {
  auto inst = grid_vs_axis_lines();
  auto c = per_edge_cover(edge_set(inst));

  auto widened = c;
  widened.blocks[0].b.push_back(5);
  std::sort(widened.blocks[0].b.begin(), widened.blocks[0].b.end());
  widened.blocks[0].b.erase(std::unique(widened.blocks[0].b.begin(), widened.blocks[0].b.end()), widened.blocks[0].b.end());
  widened.cost_j = widened.recomputed_cost();
  auto rep = verify_cover(inst, widened);
  EXPECT_FALSE(rep.ok);
  ASSERT_FALSE(rep.spurious.empty());
  EXPECT_EQ(rep.spurious.front().first, widened.blocks[0].a.front());

  auto dropped = c;
  dropped.blocks.pop_back();
  dropped.cost_j = dropped.recomputed_cost();
  rep = verify_cover(inst, dropped);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.missing.size(), 1u);

  auto costly = c;
  costly.cost_j += 1;
  rep = verify_cover(inst, costly);
  EXPECT_FALSE(rep.ok);
  EXPECT_TRUE(rep.cost_mismatch);
  EXPECT_NE(std::find(rep.errors.begin(), rep.errors.end(), "cost mismatch"), rep.errors.end());

  auto bad = c;
  bad.blocks[0].a = {99};
  rep = verify_cover(inst, bad);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.out_of_range_blocks.size(), 1u);
}

TEST(BaseCase, CompleteTwoByTwoIsOneBlock) {
  auto c = base_case_cover({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  ASSERT_EQ(c.blocks.size(), 1u);
  EXPECT_EQ(c.cost_j, 4);
}

TEST(BaseCase, NeverExceedsTwicePerEdge) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = gen_random_explicit(9, 8, 0.1 + 0.004 * seed, seed);
    auto edges = edge_set(inst);
    auto c = base_case_cover(edges);
    ASSERT_LE(c.cost_j, 2 * static_cast<std::int64_t>(edges.size()));
    ASSERT_TRUE(verify_cover(inst, c).ok);
  }
}

TEST(Cover, CompleteInstanceIsOneContainsBlock) {
  IncidenceInstance inst;
  Rng rng(2);
  for (int i = 0; i < 40; ++i)
    inst.points_p.push_back(Point({detail::urat(rng), detail::urat(rng)}));
  for (int j = 0; j < 30; ++j)
    inst.sets_q.push_back(GeomSet::halfplane(1, 1, 2 + j));
  auto c = build_cover(inst);
  ASSERT_EQ(c.blocks.size(), 1u);
  EXPECT_EQ(c.blocks[0].tag, BlockTag::Contains);
  EXPECT_EQ(c.cost_j, 70);
}

TEST(Cover, EmptyEdgeSetGivesEmptyCover) {
  auto inst = gen_random("halfplanes", 0, 5, 1);
  auto c = build_cover(inst);
  EXPECT_TRUE(c.blocks.empty());
  EXPECT_TRUE(verify_cover(inst, c).ok);
}

TEST(Cover, RandomFamiliesVerifyUnderEverySideRule) {
  for (std::string fam : {"halfplanes", "lines", "disks", "halfspaces"})
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      auto inst = gen_random(fam, 10 + 4 * static_cast<int>(seed), 60 - 3 * static_cast<int>(seed), seed);
      complete_views(inst);
      auto edges = edge_set(inst);
      for (auto rule : {SideRule::Auto, SideRule::AlwaysP, SideRule::AlwaysQ, SideRule::Regime}) {
        CoverConfig cfg;
        cfg.side_rule = rule;
        auto c = build_cover(inst, cfg);
        auto rep = verify_cover(inst, c, &edges);
        ASSERT_TRUE(rep.ok) << fam << " seed " << seed;
        auto t = transpose(inst);
        ASSERT_TRUE(verify_cover(t, build_cover(t, cfg)).ok) << fam << " transposed seed " << seed;
      }
    }
}

TEST(Cover, ConfigValidation) {
  CoverConfig cfg;
  cfg.r = 1;
  EXPECT_THROW(build_cover(gen_st_grid(2), cfg), ContractViolation);
  cfg = {};
  cfg.base_threshold = 2;
  EXPECT_THROW(cfg.validate(), ContractViolation);
}

TEST(Cover, StatsAndDepthCap) {
  CoverStats stats;
  auto inst = gen_st_grid(4);
  auto c = build_cover(inst, {}, &stats);
  EXPECT_TRUE(verify_cover(inst, c).ok);
  EXPECT_GT(stats.subproblems, 0);
  EXPECT_LE(stats.max_depth_seen, 64);
  CoverConfig shallow;
  shallow.max_depth = 1;
  CoverStats s2;
  auto c2 = build_cover(inst, shallow, &s2);
  EXPECT_TRUE(verify_cover(inst, c2).ok);
  EXPECT_GT(s2.depth_fallbacks, 0);
}

TEST(Stage1, FewHalfplanesManyPointsStaysCloseToAuto) {
  IncidenceInstance inst;
  Rng rng(9);
  for (int i = 0; i < 500; ++i)
    inst.points_p.push_back(Point({detail::urat(rng), detail::urat(rng)}));
  for (int j = 0; j < 4; ++j) {
    Point a({detail::urat(rng), detail::urat(rng)}), b({detail::urat(rng), detail::urat(rng)});
    inst.sets_q.push_back(detail::halfplane_through(a, b, j % 2 == 0));
  }
  inst = transpose(inst);  // now 4 points in P (the halfplanes' duals), 500 in Q
  complete_views(inst);
  auto s1 = stage1_cover(inst);
  auto full = build_cover(inst);
  EXPECT_TRUE(verify_cover(inst, s1).ok);
  EXPECT_TRUE(verify_cover(inst, full).ok);
  EXPECT_LE(static_cast<double>(s1.cost_j), 1.2 * static_cast<double>(full.cost_j));
}

TEST(BoundaryRecursion, PointsOnVerticalCutAgainstDisks) {
  IncidenceInstance inst;
  Rng rng(12);
  for (int i = 0; i < 50; ++i)
    inst.points_p.push_back(Point({Rational(1, 2), detail::urat(rng)}));
  for (int j = 0; j < 20; ++j)
    inst.sets_q.push_back(GeomSet::disk(Point({detail::urat(rng), detail::urat(rng)}), detail::urat(rng, 0.05, 0.5)));
  std::vector<int> sets(20), pts(50);
  std::iota(sets.begin(), sets.end(), 0);
  std::iota(pts.begin(), pts.end(), 0);
  auto c = boundary_recursion(inst, View::P, sets, pts, {0, Rational(1, 2)}, {});
  EXPECT_TRUE(verify_cover(inst, c).ok);
}

TEST(MergePass, NeverIncreasesCostAndKeepsUnion) {
  auto inst = gen_random("halfplanes", 200, 200, 21);
  auto edges = edge_set(inst);
  auto c = build_cover(inst);
  auto merged = merge_pass(c);
  EXPECT_LE(merged.cost_j, c.cost_j);
  EXPECT_TRUE(verify_cover(inst, merged, &edges).ok);
  EXPECT_EQ(merge_pass(merged), merged);
}

TEST(Cover, DeterministicAcrossRuns) {
  auto inst = gen_random("disks", 80, 70, 5);
  EXPECT_EQ(build_cover(inst), build_cover(inst));
}
