#ifndef SACOVER_COVER_HPP
#define SACOVER_COVER_HPP

#include <sacover/instance.hpp>
#include <sacover/partition.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace sacover {

/// Where a block came from in the recursion.
enum class BlockTag { Contains, Base, Boundary };

inline const char* to_string(BlockTag t) {
  switch (t) {
  case BlockTag::Contains:
    return "contains";
  case BlockTag::Base:
    return "base";
  case BlockTag::Boundary:
    return "boundary";
  }
  return "?";
}

/// Complete bipartite block A x B (indices into P and Q).
struct Block {
  std::vector<int> a;
  std::vector<int> b;
  BlockTag tag = BlockTag::Base;

  std::int64_t cost() const { return static_cast<std::int64_t>(a.size() + b.size()); }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(a.size()) * static_cast<std::int64_t>(b.size()); }
  friend bool operator==(const Block&, const Block&) = default;
};

/// Union-of-bicliques representation of an edge set; cost_j = sum |A_i| + |B_i|.
struct BicliqueCover {
  std::vector<Block> blocks;
  std::int64_t cost_j = 0;

  std::int64_t recomputed_cost() const {
    std::int64_t c = 0;
    for (const auto& b : blocks)
      c += b.cost();
    return c;
  }

  /// Sorts each side and orders blocks by (min A, min B), then lexicographically.
  void canonicalize() {
    for (auto& b : blocks) {
      std::sort(b.a.begin(), b.a.end());
      b.a.erase(std::unique(b.a.begin(), b.a.end()), b.a.end());
      std::sort(b.b.begin(), b.b.end());
      b.b.erase(std::unique(b.b.begin(), b.b.end()), b.b.end());
    }
    std::sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) {
      int xa = x.a.empty() ? -1 : x.a.front(), ya = y.a.empty() ? -1 : y.a.front();
      if (xa != ya)
        return xa < ya;
      int xb = x.b.empty() ? -1 : x.b.front(), yb = y.b.empty() ? -1 : y.b.front();
      if (xb != yb)
        return xb < yb;
      if (x.a != y.a)
        return x.a < y.a;
      if (x.b != y.b)
        return x.b < y.b;
      return static_cast<int>(x.tag) < static_cast<int>(y.tag);
    });
    cost_j = recomputed_cost();
  }

  friend bool operator==(const BicliqueCover&, const BicliqueCover&) = default;
};

enum class SideRule { Auto, AlwaysP, AlwaysQ, Regime };

struct CoverConfig {
  int r = 4;                    // branching parameter per level
  int base_threshold = 12;      // subproblems with m + n at or below this go to the base case
  int max_depth = 64;           // deeper subproblems finish in the base case
  SideRule side_rule = SideRule::Auto;
  std::string family;           // instance family tag, informational
  // Regime rule: partition the Q side iff n >= m^regime_exponent (the n >= m^{d2} split).
  double regime_exponent = 2.0;
  NumericConfig numeric{};

  void validate() const {
    if (r < 2)
      throw ContractViolation("cover parameter r must be at least 2");
    if (base_threshold < 4)
      throw ContractViolation("base threshold must be at least 4");
    if (max_depth < 1)
      throw ContractViolation("max depth must be at least 1");
  }
};

/// Counters describing one construction run.
struct CoverStats {
  int max_depth_seen = 0;
  std::int64_t subproblems = 0;
  std::int64_t base_cases = 0;
  std::int64_t depth_fallbacks = 0;
  std::int64_t boundary_subproblems = 0;
};

/// Greedy cover for small explicit edge sets: vertices with identical neighborhoods share
/// one block. Groups the side that yields the lower cost; always at most 2 |edges|.
inline BicliqueCover base_case_cover(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  auto group = [&](bool by_p) {
    std::map<int, std::vector<int>> nbhd;
    for (auto [p, q] : edges) {
      if (by_p)
        nbhd[p].push_back(q);
      else
        nbhd[q].push_back(p);
    }
    std::map<std::vector<int>, std::vector<int>> classes;
    for (auto& [v, ns] : nbhd) {
      std::sort(ns.begin(), ns.end());
      classes[ns].push_back(v);
    }
    BicliqueCover c;
    for (auto& [ns, vs] : classes) {
      if (by_p)
        c.blocks.push_back({vs, ns, BlockTag::Base});
      else
        c.blocks.push_back({ns, vs, BlockTag::Base});
    }
    c.canonicalize();
    return c;
  };
  BicliqueCover byp = group(true);
  BicliqueCover byq = group(false);
  return byq.cost_j < byp.cost_j ? byq : byp;
}

namespace detail {

class CoverBuilder {
public:
  CoverBuilder(const IncidenceInstance& inst, const CoverConfig& cfg) : inst_(inst), cfg_(cfg) {
    cfg_.validate();
    validate(inst_);
    view_p_ = side_view(inst_, View::P);
    view_q_ = side_view(inst_, View::Q);
  }

  BicliqueCover run() {
    if (inst_.explicit_edges) {
      auto c = base_case_cover(edge_set(inst_));
      ++stats_.base_cases;
      return c;
    }
    Sub root;
    for (int i = 0; i < inst_.m(); ++i)
      root.p.push_back(i);
    for (int j = 0; j < inst_.n(); ++j)
      root.q.push_back(j);
    solve(std::move(root));
    out_.canonicalize();
    return out_;
  }

  /// Covers the pairs between points lying on the hyperplane x_axis == value (in the
  /// given side's chart space) and the listed opposite vertices.
  BicliqueCover run_boundary(View side, std::vector<int> points, std::vector<int> sets, int axis,
                             const Rational& value) {
    const auto& view = side == View::P ? view_p_ : view_q_;
    if (!view)
      throw ContractViolation("boundary recursion needs a geometric view of the partitioned side");
    if (points.empty() || sets.empty())
      return {};
    int chart = view->chart_of.at(points.front());
    const Chart& ch = view->charts[chart];
    if (axis < 0 || axis >= ch.dim)
      throw ContractViolation("cut axis outside the chart dimension");
    for (int x : points) {
      if (view->chart_of.at(x) != chart)
        throw ContractViolation("boundary points span several charts");
      if (ch.coords.at(x)[axis] != value)
        throw ContractViolation("boundary point does not lie on the cut hyperplane");
    }
    Sub s;
    SideState st;
    st.chart = chart;
    st.frame.assign(ch.dim, std::nullopt);
    st.frame[axis] = value;
    if (side == View::P) {
      s.p = std::move(points);
      s.q = std::move(sets);
      s.sp = std::move(st);
    } else {
      s.q = std::move(points);
      s.p = std::move(sets);
      s.sq = std::move(st);
    }
    s.boundary = true;
    solve_side(std::move(s), side);
    out_.canonicalize();
    return out_;
  }

  const CoverStats& stats() const { return stats_; }

private:
  struct SideState {
    int chart = -1;
    std::vector<std::optional<Rational>> frame;
  };
  struct Sub {
    std::vector<int> p, q;
    SideState sp, sq;
    int depth = 0;
    bool boundary = false;
  };

  static int free_dim(const SideState& st) {
    if (st.chart < 0)
      return -1;
    int f = 0;
    for (const auto& v : st.frame)
      f += v ? 0 : 1;
    return f;
  }

  void emit(View side, const std::vector<int>& x, const std::vector<int>& y, BlockTag tag) {
    if (x.empty() || y.empty())
      return;
    if (side == View::P)
      out_.blocks.push_back({x, y, tag});
    else
      out_.blocks.push_back({y, x, tag});
  }

  void base(const Sub& s) {
    ++stats_.base_cases;
    std::vector<Edge> edges;
    for (int p : s.p)
      for (int q : s.q)
        if (is_edge(inst_, p, q, cfg_.numeric))
          edges.emplace_back(p, q);
    auto c = base_case_cover(std::move(edges));
    for (auto& b : c.blocks)
      out_.blocks.push_back(std::move(b));
  }

  View choose_side(const Sub& s) const {
    bool can_p = view_p_.has_value(), can_q = view_q_.has_value();
    if (!can_q)
      return View::P;
    if (!can_p)
      return View::Q;
    switch (cfg_.side_rule) {
    case SideRule::AlwaysP:
      return View::P;
    case SideRule::AlwaysQ:
      return View::Q;
    case SideRule::Regime: {
      double m = static_cast<double>(s.p.size()), n = static_cast<double>(s.q.size());
      return n >= std::pow(m, cfg_.regime_exponent) ? View::Q : View::P;
    }
    case SideRule::Auto:
      break;
    }
    if (free_dim(s.sp) == 0)
      return View::P;
    if (free_dim(s.sq) == 0)
      return View::Q;
    return s.q.size() > s.p.size() ? View::Q : View::P;
  }

  void solve(Sub s) {
    if (s.p.empty() || s.q.empty())
      return;
    ++stats_.subproblems;
    stats_.max_depth_seen = std::max(stats_.max_depth_seen, s.depth);
    if (!view_p_ && !view_q_) {
      base(s);
      return;
    }
    if (s.depth >= cfg_.max_depth) {
      ++stats_.depth_fallbacks;
      base(s);
      return;
    }
    if (static_cast<int>(s.p.size() + s.q.size()) <= cfg_.base_threshold) {
      base(s);
      return;
    }
    if (inst_.p_on_parabola && !inst_.points_p.empty() &&
        (cfg_.side_rule == SideRule::Auto || cfg_.side_rule == SideRule::AlwaysP)) {
      solve_curve(std::move(s));
      return;
    }
    solve_side(std::move(s), choose_side(s));
  }

  // Sign of f(t) = a t + b t^2 - c over [lo, hi], for the point (t, t^2) against a planar
  // linear set. Other shapes are only decided on a single parameter value.
  CellRelation classify_arc(const GeomSet& g, const Rational& lo, const Rational& hi) const {
    auto* l = std::get_if<LinearSet>(&g.shape());
    if (!l || l->normal.size() != 2) {
      if (lo != hi)
        return CellRelation::Crosses;
      return incident(Point(std::vector<Rational>{lo, lo * lo}), g, cfg_.numeric) ? CellRelation::Contains
                                                                                  : CellRelation::Disjoint;
    }
    const Rational &a = l->normal[0], &b = l->normal[1], &c = l->rhs;
    auto f = [&](const Rational& t) { return Rational(a * t + b * t * t - c); };
    Rational lo_v = f(lo), hi_v = f(hi);
    Rational mn = std::min(lo_v, hi_v), mx = std::max(lo_v, hi_v);
    if (b != 0) {
      Rational v = -a / (2 * b);
      if (lo < v && v < hi) {
        Rational fv = f(v);
        mn = std::min(mn, fv);
        mx = std::max(mx, fv);
      }
    }
    if (l->equality) {
      if (mn == 0 && mx == 0)
        return CellRelation::Contains;
      return mn > 0 || mx < 0 ? CellRelation::Disjoint : CellRelation::Crosses;
    }
    if (mx <= 0)
      return CellRelation::Contains;
    return mn > 0 ? CellRelation::Disjoint : CellRelation::Crosses;
  }

  // P lies on y = x^2: cells are arcs of consecutive parameter values. A line meets the
  // parabola at most twice, so a halfplane crosses at most two arcs on each level.
  void solve_curve(Sub s) {
    const auto& pts = inst_.points_p;
    std::sort(s.p.begin(), s.p.end(), [&](int x, int y) {
      return pts[x][0] != pts[y][0] ? pts[x][0] < pts[y][0] : x < y;
    });
    const BlockTag tag = s.boundary ? BlockTag::Boundary : BlockTag::Contains;
    auto split = [&](const std::vector<int>& arc, const std::vector<int>& sets, std::vector<int>& cont,
                     std::vector<int>& cross) {
      const Rational &lo = pts[arc.front()][0], &hi = pts[arc.back()][0];
      for (int q : sets) {
        switch (classify_arc(inst_.sets_q[q], lo, hi)) {
        case CellRelation::Contains:
          cont.push_back(q);
          break;
        case CellRelation::Crosses:
          cross.push_back(q);
          break;
        case CellRelation::Disjoint:
          break;
        }
      }
    };
    std::vector<int> contained, crossing;
    split(s.p, s.q, contained, crossing);
    emit(View::P, s.p, contained, tag);
    if (crossing.empty())
      return;
    const std::size_t parts = static_cast<std::size_t>(cfg_.r), m = s.p.size();
    for (std::size_t k = 0; k < parts; ++k) {
      std::size_t b = k * m / parts, e = (k + 1) * m / parts;
      if (b == e)
        continue;
      Sub t;
      t.p.assign(s.p.begin() + b, s.p.begin() + e);
      std::vector<int> cont;
      split(t.p, crossing, cont, t.q);
      emit(View::P, t.p, cont, tag);
      t.depth = s.depth + 1;
      t.boundary = s.boundary;
      solve(std::move(t));
    }
  }

  void solve_side(Sub s, View side) {
    const SideView& view = side == View::P ? *view_p_ : *view_q_;
    SideState& st = side == View::P ? s.sp : s.sq;
    std::vector<int>& xs = side == View::P ? s.p : s.q;
    std::vector<int>& ys = side == View::P ? s.q : s.p;

    if (st.chart < 0) {
      std::map<int, std::vector<int>> groups;
      for (int x : xs)
        groups[view.chart_of[x]].push_back(x);
      if (groups.size() > 1) {
        for (auto& [c, members] : groups) {
          Sub t;
          t.p = side == View::P ? members : s.p;
          t.q = side == View::P ? s.q : members;
          t.sp = s.sp;
          t.sq = s.sq;
          SideState& tst = side == View::P ? t.sp : t.sq;
          tst.chart = c;
          tst.frame.assign(view.charts[c].dim, std::nullopt);
          t.depth = s.depth + 1;
          t.boundary = s.boundary;
          solve(std::move(t));
        }
        return;
      }
      st.chart = groups.begin()->first;
      st.frame.assign(view.charts[st.chart].dim, std::nullopt);
    }
    const Chart& ch = view.charts[st.chart];
    std::vector<int> free_axes;
    for (int a = 0; a < ch.dim; ++a)
      if (!st.frame[a])
        free_axes.push_back(a);
    const bool on_cut = free_axes.size() < static_cast<std::size_t>(ch.dim);
    const BlockTag tag = on_cut || s.boundary ? BlockTag::Boundary : BlockTag::Contains;
    if (on_cut)
      ++stats_.boundary_subproblems;

    auto full_box = [&](const Box* free_box) {
      std::vector<Interval> sides(ch.dim);
      for (int a = 0; a < ch.dim; ++a)
        if (st.frame[a])
          sides[a] = {*st.frame[a], *st.frame[a]};
      for (std::size_t k = 0; k < free_axes.size(); ++k)
        sides[free_axes[k]] = (*free_box)[k];
      return Box(std::move(sides));
    };
    auto split_sets = [&](const Box& box, std::vector<int>& contained, std::vector<int>& crossing) {
      for (int y : ys) {
        switch (classify(ch.opposite_sets[y], box)) {
        case CellRelation::Contains:
          contained.push_back(y);
          break;
        case CellRelation::Crosses:
          crossing.push_back(y);
          break;
        case CellRelation::Disjoint:
          break;
        }
      }
    };

    // Whole region first: sets containing the bounding box of all points form one block.
    std::vector<Point> proj;
    proj.reserve(xs.size());
    for (int x : xs) {
      const Point& c = ch.coords.at(x);
      std::vector<Rational> f;
      f.reserve(free_axes.size());
      for (int a : free_axes)
        f.push_back(c[a]);
      proj.emplace_back(std::move(f));
    }
    Box free_region = free_axes.empty() ? Box() : Box::bounding(proj);
    Box region = full_box(&free_region);
    std::vector<int> contained, crossing;
    split_sets(region, contained, crossing);
    emit(side, xs, contained, tag);
    if (crossing.empty())
      return;
    if (free_axes.empty()) {
      // A point box classifies built-in families exactly; anything left is decided pairwise.
      ys = std::move(crossing);
      base(s);
      return;
    }
    ys = std::move(crossing);

    CellPartition part = build_partition(proj, cfg_.r);
    for (const auto& cell : part.cells) {
      if (cell.point_idxs.empty())
        continue;
      // Only the cell's points matter, so their bounding box is a tighter certificate than the slab box.
      std::vector<Point> cell_pts;
      std::vector<int> in_cell, cont, cross;
      for (int k : cell.point_idxs) {
        in_cell.push_back(xs[k]);
        cell_pts.push_back(proj[k]);
      }
      Box tight = Box::bounding(cell_pts);
      Box box = full_box(&tight);
      split_sets(box, cont, cross);
      emit(side, in_cell, cont, tag);
      if (cross.empty())
        continue;
      Sub t;
      t.sp = s.sp;
      t.sq = s.sq;
      t.depth = s.depth + 1;
      t.boundary = s.boundary;
      if (side == View::P) {
        t.p = std::move(in_cell);
        t.q = std::move(cross);
      } else {
        t.q = std::move(in_cell);
        t.p = std::move(cross);
      }
      solve(std::move(t));
    }
    for (const auto& g : part.boundary_groups) {
      Sub t;
      t.sp = s.sp;
      t.sq = s.sq;
      SideState& tst = side == View::P ? t.sp : t.sq;
      tst.frame[free_axes[g.axis]] = g.value;
      t.depth = s.depth + 1;
      t.boundary = true;
      std::vector<int> on;
      for (int k : g.point_idxs)
        on.push_back(xs[k]);
      if (side == View::P) {
        t.p = std::move(on);
        t.q = ys;
      } else {
        t.q = std::move(on);
        t.p = ys;
      }
      solve(std::move(t));
    }
  }

  const IncidenceInstance& inst_;
  CoverConfig cfg_;
  std::optional<SideView> view_p_, view_q_;
  BicliqueCover out_;
  CoverStats stats_;
};

}  // namespace detail

/// Recursive partition-based cover. Explicit instances go straight to the base case.
inline BicliqueCover build_cover(const IncidenceInstance& inst, const CoverConfig& cfg = {},
                                 CoverStats* stats = nullptr) {
  detail::CoverBuilder b(inst, cfg);
  auto c = b.run();
  if (stats)
    *stats = b.stats();
  return c;
}

/// The one-sided recursion: always partitions the Q side's space when a view of it exists.
inline BicliqueCover stage1_cover(const IncidenceInstance& inst, CoverConfig cfg = {}, CoverStats* stats = nullptr) {
  cfg.side_rule = SideRule::AlwaysQ;
  return build_cover(inst, cfg, stats);
}

/// Cut hyperplane x_axis == value in the chart space of the partitioned side.
struct CutHyperplane {
  int axis = 0;
  Rational value;
};

/// Continues the recursion for points lying on a cut hyperplane, one dimension down.
inline BicliqueCover boundary_recursion(const IncidenceInstance& inst, View side, std::vector<int> sets,
                                        std::vector<int> boundary_points, const CutHyperplane& cut,
                                        const CoverConfig& cfg = {}) {
  detail::CoverBuilder b(inst, cfg);
  return b.run_boundary(side, std::move(boundary_points), std::move(sets), cut.axis, cut.value);
}

struct VerificationReport {
  bool ok = true;
  std::vector<Edge> missing;
  std::vector<Edge> spurious;
  std::int64_t stored_cost = 0;
  std::int64_t recomputed_cost = 0;
  bool cost_mismatch = false;
  std::vector<int> empty_blocks;
  std::vector<int> out_of_range_blocks;
  std::vector<std::string> errors;
};

/// Recomputes the edge set and checks the cover's union and cost against it.
inline VerificationReport verify_cover(const IncidenceInstance& inst, const BicliqueCover& cover,
                                       const std::vector<Edge>* known_edges = nullptr) {
  VerificationReport rep;
  const std::int64_t m = inst.m(), n = inst.n();
  std::vector<Edge> computed;
  if (!known_edges)
    computed = edge_set(inst);
  const std::vector<Edge>& edges = known_edges ? *known_edges : computed;
  const std::int64_t cells = m * n;
  if (cells > (std::int64_t{1} << 31))
    throw Refusal("instance too large for cover verification");
  std::vector<std::uint8_t> is_edge_bit(static_cast<std::size_t>(cells), 0), covered(static_cast<std::size_t>(cells), 0);
  for (auto [p, q] : edges)
    is_edge_bit[static_cast<std::size_t>(p * n + q)] = 1;
  for (std::size_t i = 0; i < cover.blocks.size(); ++i) {
    const Block& b = cover.blocks[i];
    if (b.a.empty() || b.b.empty())
      rep.empty_blocks.push_back(static_cast<int>(i));
    bool range_ok = true;
    for (int p : b.a)
      range_ok = range_ok && p >= 0 && p < m;
    for (int q : b.b)
      range_ok = range_ok && q >= 0 && q < n;
    if (!range_ok) {
      rep.out_of_range_blocks.push_back(static_cast<int>(i));
      continue;
    }
    for (int p : b.a)
      for (int q : b.b) {
        std::size_t k = static_cast<std::size_t>(p * n + q);
        if (!is_edge_bit[k]) {
          if (covered[k] != 2)
            rep.spurious.emplace_back(p, q);
          covered[k] = 2;
        } else {
          covered[k] = 1;
        }
      }
  }
  for (auto [p, q] : edges)
    if (!covered[static_cast<std::size_t>(p * n + q)])
      rep.missing.emplace_back(p, q);
  std::sort(rep.spurious.begin(), rep.spurious.end());
  rep.stored_cost = cover.cost_j;
  rep.recomputed_cost = cover.recomputed_cost();
  rep.cost_mismatch = rep.stored_cost != rep.recomputed_cost;
  if (!rep.missing.empty())
    rep.errors.push_back("missing edges");
  if (!rep.spurious.empty())
    rep.errors.push_back("spurious pairs");
  if (rep.cost_mismatch)
    rep.errors.push_back("cost mismatch");
  if (!rep.empty_blocks.empty())
    rep.errors.push_back("empty block side");
  if (!rep.out_of_range_blocks.empty())
    rep.errors.push_back("index out of range");
  rep.ok = rep.errors.empty();
  return rep;
}

/// Merges blocks sharing a side and drops blocks contained in another, to a fixpoint.
/// Never increases cost; the union of blocks is unchanged.
inline BicliqueCover merge_pass(BicliqueCover cover) {
  cover.canonicalize();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int side = 0; side < 2; ++side) {
      std::map<std::vector<int>, std::size_t> seen;
      std::vector<Block> next;
      for (auto& b : cover.blocks) {
        const auto& key = side == 0 ? b.a : b.b;
        auto it = seen.find(key);
        if (it == seen.end()) {
          seen.emplace(key, next.size());
          next.push_back(std::move(b));
          continue;
        }
        Block& tgt = next[it->second];
        auto& dst = side == 0 ? tgt.b : tgt.a;
        const auto& src = side == 0 ? b.b : b.a;
        std::vector<int> u;
        std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(u));
        dst = std::move(u);
        changed = true;
      }
      cover.blocks = std::move(next);
    }
    // subsumption
    std::vector<std::size_t> order(cover.blocks.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = i;
    std::vector<char> dead(cover.blocks.size(), 0);
    for (std::size_t i = 0; i < cover.blocks.size(); ++i) {
      const Block& x = cover.blocks[i];
      for (std::size_t j = 0; j < cover.blocks.size() && !dead[i]; ++j) {
        if (i == j || dead[j])
          continue;
        const Block& y = cover.blocks[j];
        if (y.a.size() < x.a.size() || y.b.size() < x.b.size())
          continue;
        if (std::includes(y.a.begin(), y.a.end(), x.a.begin(), x.a.end()) &&
            std::includes(y.b.begin(), y.b.end(), x.b.begin(), x.b.end())) {
          dead[i] = 1;
          changed = true;
        }
      }
    }
    std::vector<Block> kept;
    for (std::size_t i = 0; i < cover.blocks.size(); ++i)
      if (!dead[i])
        kept.push_back(std::move(cover.blocks[i]));
    cover.blocks = std::move(kept);
    cover.canonicalize();
  }
  return cover;
}

}  // namespace sacover

#endif  // SACOVER_COVER_HPP
