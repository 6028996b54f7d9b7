#ifndef SACOVER_HYPERGRAPH_HPP
#define SACOVER_HYPERGRAPH_HPP

#include <sacover/cover.hpp>
#include <sacover/generators.hpp>
#include <sacover/partition.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sacover {

using HyperEdge = std::vector<int>;

/// k-partite instance: part j holds points in R^{dims[j]}; a tuple is a hyperedge iff its
/// concatenated coordinates lie in `relation` (a set over R^{sum dims}), or it is listed
/// in explicit_edges.
struct KPartiteInstance {
  std::vector<int> dims;
  std::vector<std::vector<Point>> parts;
  std::optional<GeomSet> relation;
  std::optional<std::vector<HyperEdge>> explicit_edges;
  std::vector<int> sizes;  // part sizes for explicit mode
  int description_complexity = 4;

  int k() const { return static_cast<int>(explicit_edges ? sizes.size() : parts.size()); }
  int size(int j) const { return explicit_edges ? sizes[j] : static_cast<int>(parts[j].size()); }
  int total_dim() const {
    int s = 0;
    for (int d : dims)
      s += d;
    return s;
  }
};

inline void validate(const KPartiteInstance& inst) {
  if (inst.explicit_edges) {
    if (inst.sizes.size() < 2)
      throw ContractViolation("k-partite instance needs k >= 2");
    for (const auto& e : *inst.explicit_edges) {
      if (e.size() != inst.sizes.size())
        throw ContractViolation("hyperedge arity differs from k");
      for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j] < 0 || e[j] >= inst.sizes[j])
          throw ContractViolation("hyperedge index out of range");
    }
    return;
  }
  if (inst.parts.size() < 2 || inst.parts.size() != inst.dims.size())
    throw ContractViolation("k-partite instance needs k >= 2 parts with dimensions");
  for (std::size_t j = 0; j < inst.parts.size(); ++j) {
    if (inst.dims[j] < 1)
      throw ContractViolation("part dimension must be positive");
    for (const auto& p : inst.parts[j])
      if (p.dim() != inst.dims[j])
        throw ContractViolation("point dimension differs from its part dimension");
  }
  if (!inst.relation)
    throw ContractViolation("geometric k-partite instance needs a relation");
  if (inst.relation->dim() != inst.total_dim())
    throw ContractViolation("relation dimension differs from the sum of part dimensions");
}

namespace detail {

inline Point concat(const KPartiteInstance& inst, const HyperEdge& t) {
  std::vector<Rational> c;
  for (std::size_t j = 0; j < t.size(); ++j)
    for (int a = 0; a < inst.dims[j]; ++a)
      c.push_back(inst.parts[j][t[j]][a]);
  return Point(std::move(c));
}

// Visits every tuple of the product of the index lists, in lexicographic order.
template <class F>
void for_each_tuple(const std::vector<std::vector<int>>& lists, F&& f) {
  for (const auto& l : lists)
    if (l.empty())
      return;
  HyperEdge cur(lists.size());
  std::vector<std::size_t> pos(lists.size(), 0);
  while (true) {
    for (std::size_t j = 0; j < lists.size(); ++j)
      cur[j] = lists[j][pos[j]];
    f(cur);
    std::size_t j = lists.size();
    while (j > 0) {
      --j;
      if (++pos[j] < lists[j].size())
        break;
      pos[j] = 0;
      if (j == 0)
        return;
    }
  }
}

}  // namespace detail

inline bool is_hyperedge(const KPartiteInstance& inst, const HyperEdge& t) {
  return incident(detail::concat(inst, t), *inst.relation);
}

/// Sorted hyperedge list; geometric mode enumerates all tuples (refuses above 10^6).
inline std::vector<HyperEdge> hyper_edge_set(const KPartiteInstance& inst) {
  validate(inst);
  std::vector<HyperEdge> out;
  if (inst.explicit_edges) {
    out = *inst.explicit_edges;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  double total = 1;
  std::vector<std::vector<int>> lists(inst.parts.size());
  for (std::size_t j = 0; j < inst.parts.size(); ++j) {
    total *= static_cast<double>(inst.parts[j].size());
    for (int i = 0; i < static_cast<int>(inst.parts[j].size()); ++i)
      lists[j].push_back(i);
  }
  if (total > 1e6)
    throw Refusal("hyperedge enumeration is limited to 10^6 tuples");
  detail::for_each_tuple(lists, [&](const HyperEdge& t) {
    if (is_hyperedge(inst, t))
      out.push_back(t);
  });
  return out;
}

struct HyperBlock {
  std::vector<std::vector<int>> sides;
  BlockTag tag = BlockTag::Base;

  /// prod |A_j| * sum 1/|A_j|, which equals sum_j prod_{l != j} |A_l|.
  std::int64_t cost() const {
    std::int64_t total = 0;
    for (std::size_t j = 0; j < sides.size(); ++j) {
      std::int64_t t = 1;
      for (std::size_t l = 0; l < sides.size(); ++l)
        if (l != j)
          t *= static_cast<std::int64_t>(sides[l].size());
      total += t;
    }
    return total;
  }
  std::int64_t edge_count() const {
    std::int64_t t = 1;
    for (const auto& s : sides)
      t *= static_cast<std::int64_t>(s.size());
    return t;
  }
  friend bool operator==(const HyperBlock&, const HyperBlock&) = default;
};

struct HyperCover {
  std::vector<HyperBlock> blocks;
  Rational cost;

  void canonicalize();
  friend bool operator==(const HyperCover& a, const HyperCover& b) { return a.blocks == b.blocks && a.cost == b.cost; }
};

/// Exact cost sum_i prod_j |A_ij| * sum_j 1/|A_ij|.
inline Rational hyper_cost(const HyperCover& cover) {
  Rational total = 0;
  for (const auto& b : cover.blocks) {
    Rational prod = 1, inv = 0;
    for (const auto& s : b.sides) {
      if (s.empty())
        throw ContractViolation("hyper block has an empty side");
      prod *= static_cast<long>(s.size());
      inv += Rational(1) / static_cast<long>(s.size());
    }
    total += prod * inv;
  }
  total.canonicalize();
  return total;
}

inline void HyperCover::canonicalize() {
  for (auto& b : blocks)
    for (auto& s : b.sides) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
  std::sort(blocks.begin(), blocks.end(), [](const HyperBlock& x, const HyperBlock& y) {
    if (x.sides != y.sides)
      return x.sides < y.sides;
    return static_cast<int>(x.tag) < static_cast<int>(y.tag);
  });
  cost = 0;
  for (const auto& b : blocks)
    cost += static_cast<long>(b.cost());
}

namespace detail {

// Covers a set of k-tuples (k >= 1). Picks the part whose elements, grouped by identical
// links, give the cheapest cover, covering each link the same way one level down.
inline std::vector<std::vector<std::vector<int>>> base_blocks(std::vector<HyperEdge> edges, int k) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  using Sides = std::vector<std::vector<int>>;
  std::vector<Sides> best;
  if (edges.empty())
    return best;
  if (k == 1) {
    std::vector<int> all;
    for (const auto& e : edges)
      all.push_back(e[0]);
    return {Sides{all}};
  }
  auto block_cost = [](const Sides& b) {
    std::int64_t total = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::int64_t t = 1;
      for (std::size_t l = 0; l < b.size(); ++l)
        if (l != j)
          t *= static_cast<std::int64_t>(b[l].size());
      total += t;
    }
    return total;
  };
  std::int64_t best_cost = -1;
  for (int j = 0; j < k; ++j) {
    std::map<int, std::vector<HyperEdge>> links;
    for (const auto& e : edges) {
      HyperEdge rest;
      for (int l = 0; l < k; ++l)
        if (l != j)
          rest.push_back(e[l]);
      links[e[j]].push_back(std::move(rest));
    }
    std::map<std::vector<HyperEdge>, std::vector<int>> classes;
    for (auto& [v, link] : links) {
      std::sort(link.begin(), link.end());
      classes[link].push_back(v);
    }
    std::vector<Sides> blocks;
    std::int64_t cost = 0;
    for (const auto& [link, cls] : classes)
      for (auto& sub : base_blocks(link, k - 1)) {
        Sides b;
        for (int l = 0, r = 0; l < k; ++l)
          b.push_back(l == j ? cls : sub[r++]);
        cost += block_cost(b);
        blocks.push_back(std::move(b));
      }
    if (best_cost < 0 || cost < best_cost) {
      best_cost = cost;
      best = std::move(blocks);
    }
  }
  return best;
}

}  // namespace detail

/// Cover of a small explicit hyperedge list by grouping identical links, recursively.
inline HyperCover hyper_base_cover(std::vector<HyperEdge> edges, int k) {
  HyperCover c;
  for (auto& sides : detail::base_blocks(std::move(edges), k))
    c.blocks.push_back({std::move(sides), BlockTag::Base});
  c.canonicalize();
  return c;
}

struct HyperConfig {
  int r = 2;
  int base_threshold = 48;  // subproblems with sum of part sizes at or below this go to the base case
  int max_depth = 32;
  int refine_depth = 4;     // bisection rounds when classifying generic relations

  void validate() const {
    if (r < 2)
      throw ContractViolation("cover parameter r must be at least 2");
    if (base_threshold < 4)
      throw ContractViolation("base threshold must be at least 4");
    if (max_depth < 1)
      throw ContractViolation("max depth must be at least 1");
    if (refine_depth < 0)
      throw ContractViolation("refine depth must be non-negative");
  }
};

namespace detail {

class HyperBuilder {
public:
  HyperBuilder(const KPartiteInstance& inst, const HyperConfig& cfg) : inst_(inst), cfg_(cfg) {
    cfg_.validate();
    validate(inst_);
  }

  HyperCover run() {
    if (inst_.explicit_edges)
      return hyper_base_cover(hyper_edge_set(inst_), inst_.k());
    Sub root;
    root.idx.resize(inst_.parts.size());
    root.frames.resize(inst_.parts.size());
    for (std::size_t j = 0; j < inst_.parts.size(); ++j) {
      for (int i = 0; i < static_cast<int>(inst_.parts[j].size()); ++i)
        root.idx[j].push_back(i);
      root.frames[j].assign(inst_.dims[j], std::nullopt);
    }
    solve(std::move(root));
    out_.canonicalize();
    return out_;
  }

private:
  struct Sub {
    std::vector<std::vector<int>> idx;
    std::vector<std::vector<std::optional<Rational>>> frames;
    int depth = 0;
    bool boundary = false;
  };

  struct FactorPartition {
    std::vector<int> free_axes;
    std::vector<std::vector<int>> cells;     // point indices per nonempty cell
    std::vector<Box> cell_boxes;             // full-dimensional boxes of the factor
    std::vector<BoundaryGroup> groups;       // local point positions
    std::vector<int> boundary_points;
  };

  void emit(const std::vector<std::vector<int>>& sides, BlockTag tag) {
    for (const auto& s : sides)
      if (s.empty())
        return;
    out_.blocks.push_back({sides, tag});
  }

  void base(const Sub& s) {
    std::vector<HyperEdge> edges;
    for_each_tuple(s.idx, [&](const HyperEdge& t) {
      if (is_hyperedge(inst_, t))
        edges.push_back(t);
    });
    auto c = hyper_base_cover(std::move(edges), inst_.k());
    for (auto& b : c.blocks)
      out_.blocks.push_back(std::move(b));
  }

  Box factor_box(int j, const std::vector<int>& free_axes, const std::vector<std::optional<Rational>>& frame,
                 const Box* free_box) const {
    std::vector<Interval> sides(inst_.dims[j]);
    for (int a = 0; a < inst_.dims[j]; ++a)
      if (frame[a])
        sides[a] = {*frame[a], *frame[a]};
    for (std::size_t t = 0; t < free_axes.size(); ++t)
      sides[free_axes[t]] = (*free_box)[t];
    return Box(std::move(sides));
  }

  Box product_box(const std::vector<Box>& per_factor) const {
    std::vector<Interval> sides;
    for (const auto& b : per_factor)
      for (int a = 0; a < b.dim(); ++a)
        sides.push_back(b[a]);
    return Box(std::move(sides));
  }

  FactorPartition partition_factor(int j, const std::vector<int>& pts,
                                   const std::vector<std::optional<Rational>>& frame) const {
    FactorPartition fp;
    for (int a = 0; a < inst_.dims[j]; ++a)
      if (!frame[a])
        fp.free_axes.push_back(a);
    std::vector<Point> proj;
    for (int x : pts) {
      std::vector<Rational> c;
      for (int a : fp.free_axes)
        c.push_back(inst_.parts[j][x][a]);
      proj.emplace_back(std::move(c));
    }
    if (fp.free_axes.empty()) {
      fp.cells.push_back(pts);
      Box empty;
      fp.cell_boxes.push_back(factor_box(j, fp.free_axes, frame, &empty));
      return fp;
    }
    CellPartition part = build_partition(proj, cfg_.r);
    for (const auto& cell : part.cells) {
      if (cell.point_idxs.empty())
        continue;
      std::vector<int> members;
      for (int t : cell.point_idxs)
        members.push_back(pts[t]);
      fp.cells.push_back(std::move(members));
      fp.cell_boxes.push_back(factor_box(j, fp.free_axes, frame, &cell.box));
    }
    fp.groups = part.boundary_groups;
    for (int t : part.boundary_points)
      fp.boundary_points.push_back(pts[t]);
    return fp;
  }

  void solve(Sub s) {
    const int k = inst_.k();
    for (const auto& l : s.idx)
      if (l.empty())
        return;
    std::size_t total = 0;
    for (const auto& l : s.idx)
      total += l.size();
    if (s.depth >= cfg_.max_depth || static_cast<int>(total) <= cfg_.base_threshold) {
      base(s);
      return;
    }
    // The smallest part plays the set side; the others are grid-partitioned.
    int set_factor = 0;
    for (int j = 1; j < k; ++j)
      if (s.idx[j].size() < s.idx[set_factor].size())
        set_factor = j;
    std::vector<int> grid;
    for (int j = 0; j < k; ++j)
      if (j != set_factor)
        grid.push_back(j);
    const BlockTag tag = s.boundary ? BlockTag::Boundary : BlockTag::Contains;

    auto point_box = [&](int x) { return Box::around(inst_.parts[set_factor][x]); };
    // Classifies set elements against a box per grid factor.
    auto split = [&](const std::vector<Box>& grid_boxes, const std::vector<int>& elems, std::vector<int>& contained,
                     std::vector<int>& crossing) {
      std::vector<Box> per(k);
      for (std::size_t t = 0; t < grid.size(); ++t)
        per[grid[t]] = grid_boxes[t];
      for (int x : elems) {
        per[set_factor] = point_box(x);
        switch (classify_refined(*inst_.relation, product_box(per), cfg_.refine_depth)) {
        case CellRelation::Contains:
          contained.push_back(x);
          break;
        case CellRelation::Crosses:
          crossing.push_back(x);
          break;
        case CellRelation::Disjoint:
          break;
        }
      }
    };

    // Whole region first.
    std::vector<Box> region;
    bool all_fixed = true;
    for (int j : grid) {
      std::vector<int> free_axes;
      for (int a = 0; a < inst_.dims[j]; ++a)
        if (!s.frames[j][a])
          free_axes.push_back(a);
      all_fixed = all_fixed && free_axes.empty();
      std::vector<Point> proj;
      for (int x : s.idx[j]) {
        std::vector<Rational> c;
        for (int a : free_axes)
          c.push_back(inst_.parts[j][x][a]);
        proj.emplace_back(std::move(c));
      }
      Box fb = free_axes.empty() ? Box() : Box::bounding(proj);
      region.push_back(factor_box(j, free_axes, s.frames[j], &fb));
    }
    std::vector<int> contained, crossing;
    split(region, s.idx[set_factor], contained, crossing);
    {
      auto sides = s.idx;
      sides[set_factor] = contained;
      emit(sides, tag);
    }
    if (crossing.empty())
      return;
    s.idx[set_factor] = crossing;
    if (all_fixed) {
      base(s);
      return;
    }

    std::vector<FactorPartition> fps;
    for (int j : grid)
      fps.push_back(partition_factor(j, s.idx[j], s.frames[j]));

    // Product cells: every grid factor interior.
    std::vector<std::size_t> pos(grid.size(), 0);
    while (true) {
      std::vector<Box> boxes;
      for (std::size_t t = 0; t < grid.size(); ++t)
        boxes.push_back(fps[t].cell_boxes[pos[t]]);
      std::vector<int> cont, cross;
      split(boxes, s.idx[set_factor], cont, cross);
      Sub child;
      child.idx.resize(k);
      child.frames = s.frames;
      child.depth = s.depth + 1;
      child.boundary = s.boundary;
      for (std::size_t t = 0; t < grid.size(); ++t)
        child.idx[grid[t]] = fps[t].cells[pos[t]];
      child.idx[set_factor] = cont;
      emit(child.idx, tag);
      if (!cross.empty()) {
        child.idx[set_factor] = std::move(cross);
        solve(std::move(child));
      }
      std::size_t t = grid.size();
      bool done = true;
      while (t > 0) {
        --t;
        if (++pos[t] < fps[t].cells.size()) {
          done = false;
          break;
        }
        pos[t] = 0;
      }
      if (done)
        break;
    }

    // Boundary points: tuples whose first boundary coordinate (in grid order) is factor t.
    for (std::size_t t = 0; t < grid.size(); ++t) {
      const int j = grid[t];
      const auto& fp = fps[t];
      for (const auto& g : fp.groups) {
        Sub child;
        child.idx = s.idx;
        child.frames = s.frames;
        child.depth = s.depth + 1;
        child.boundary = true;
        child.frames[j][fp.free_axes[g.axis]] = g.value;
        std::vector<int> on;
        for (int local : g.point_idxs)
          on.push_back(s.idx[j][local]);
        child.idx[j] = std::move(on);
        for (std::size_t e = 0; e < t; ++e) {
          std::vector<int> interior;
          for (const auto& cell : fps[e].cells)
            interior.insert(interior.end(), cell.begin(), cell.end());
          std::sort(interior.begin(), interior.end());
          child.idx[grid[e]] = std::move(interior);
        }
        solve(std::move(child));
      }
    }
  }

  const KPartiteInstance& inst_;
  HyperConfig cfg_;
  HyperCover out_;
};

}  // namespace detail

/// Grid-partition cover of a k-partite instance; explicit instances go to the link-grouping base case.
inline HyperCover build_hyper_cover(const KPartiteInstance& inst, const HyperConfig& cfg = {}) {
  detail::HyperBuilder b(inst, cfg);
  return b.run();
}

/// Merges blocks that agree on all parts but one (union on that part) and drops blocks
/// contained in another, to a fixpoint. Never increases cost.
inline HyperCover hyper_merge_pass(HyperCover cover) {
  cover.canonicalize();
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t k = cover.blocks.empty() ? 0 : cover.blocks.front().sides.size();
    for (std::size_t j = 0; j < k; ++j) {
      std::map<std::vector<std::vector<int>>, std::size_t> seen;
      std::vector<HyperBlock> next;
      for (auto& b : cover.blocks) {
        auto key = b.sides;
        key[j].clear();
        auto it = seen.find(key);
        if (it == seen.end()) {
          seen.emplace(std::move(key), next.size());
          next.push_back(std::move(b));
          continue;
        }
        auto& dst = next[it->second].sides[j];
        std::vector<int> u;
        std::set_union(dst.begin(), dst.end(), b.sides[j].begin(), b.sides[j].end(), std::back_inserter(u));
        dst = std::move(u);
        changed = true;
      }
      cover.blocks = std::move(next);
    }
    std::vector<char> dead(cover.blocks.size(), 0);
    for (std::size_t i = 0; i < cover.blocks.size(); ++i)
      for (std::size_t o = 0; o < cover.blocks.size() && !dead[i]; ++o) {
        if (i == o || dead[o])
          continue;
        bool inside = true;
        for (std::size_t j = 0; inside && j < k; ++j) {
          const auto& x = cover.blocks[i].sides[j];
          const auto& y = cover.blocks[o].sides[j];
          inside = x.size() <= y.size() && std::includes(y.begin(), y.end(), x.begin(), x.end());
        }
        if (inside) {
          dead[i] = 1;
          changed = true;
        }
      }
    std::vector<HyperBlock> kept;
    for (std::size_t i = 0; i < cover.blocks.size(); ++i)
      if (!dead[i])
        kept.push_back(std::move(cover.blocks[i]));
    cover.blocks = std::move(kept);
    cover.canonicalize();
  }
  return cover;
}

struct HyperVerificationReport {
  bool ok = true;
  std::vector<HyperEdge> missing;
  std::vector<HyperEdge> spurious;
  Rational stored_cost;
  Rational recomputed_cost;
  bool cost_mismatch = false;
  std::vector<int> empty_blocks;
  std::vector<int> out_of_range_blocks;
  std::vector<std::string> errors;
};

inline HyperVerificationReport verify_hyper_cover(const KPartiteInstance& inst, const HyperCover& cover) {
  HyperVerificationReport rep;
  const int k = inst.k();
  auto edges = hyper_edge_set(inst);
  std::set<HyperEdge> edge_lookup(edges.begin(), edges.end());
  std::set<HyperEdge> covered, spurious;
  for (std::size_t i = 0; i < cover.blocks.size(); ++i) {
    const auto& b = cover.blocks[i];
    bool range_ok = static_cast<int>(b.sides.size()) == k;
    bool empty = false;
    for (int j = 0; range_ok && j < k; ++j) {
      empty = empty || b.sides[j].empty();
      for (int x : b.sides[j])
        range_ok = range_ok && x >= 0 && x < inst.size(j);
    }
    if (empty)
      rep.empty_blocks.push_back(static_cast<int>(i));
    if (!range_ok) {
      rep.out_of_range_blocks.push_back(static_cast<int>(i));
      continue;
    }
    detail::for_each_tuple(b.sides, [&](const HyperEdge& t) {
      if (edge_lookup.count(t))
        covered.insert(t);
      else
        spurious.insert(t);
    });
  }
  for (const auto& e : edges)
    if (!covered.count(e))
      rep.missing.push_back(e);
  rep.spurious.assign(spurious.begin(), spurious.end());
  rep.stored_cost = cover.cost;
  if (rep.empty_blocks.empty() && rep.out_of_range_blocks.empty())
    rep.recomputed_cost = hyper_cost(cover);
  rep.cost_mismatch = rep.stored_cost != rep.recomputed_cost;
  if (!rep.missing.empty())
    rep.errors.push_back("missing hyperedges");
  if (!rep.spurious.empty())
    rep.errors.push_back("spurious tuples");
  if (rep.cost_mismatch)
    rep.errors.push_back("cost mismatch");
  if (!rep.empty_blocks.empty())
    rep.errors.push_back("empty block side");
  if (!rep.out_of_range_blocks.empty())
    rep.errors.push_back("index out of range");
  rep.ok = rep.errors.empty();
  return rep;
}

/// True iff no u-subsets S_1, ..., S_k span a complete sub-hypergraph.
inline bool kuuu_free_check(const KPartiteInstance& inst, int u) {
  if (u < 1)
    throw ContractViolation("u must be positive");
  const int k = inst.k();
  for (int j = 0; j < k; ++j)
    if (inst.size(j) > 60)
      throw Refusal("K_{u,...,u} check is limited to parts of size 60");
  if (u > 3)
    throw Refusal("K_{u,...,u} check is limited to u <= 3");
  double cells = 1;
  for (int j = 0; j < k; ++j)
    cells *= inst.size(j);
  if (cells > 2e7)
    throw Refusal("K_{u,...,u} check is limited to 2*10^7 tuples");
  std::vector<std::size_t> stride(static_cast<std::size_t>(k) + 1, 1);
  for (int j = k - 1; j >= 0; --j)
    stride[j] = stride[j + 1] * static_cast<std::size_t>(inst.size(j));
  std::vector<std::uint8_t> tensor(stride[0], 0);
  for (const auto& e : hyper_edge_set(inst)) {
    std::size_t off = 0;
    for (int j = 0; j < k; ++j)
      off += static_cast<std::size_t>(e[j]) * stride[j + 1];
    tensor[off] = 1;
  }
  // mask: tuples of parts j..k-1 completing all chosen S_0..S_{j-1} combinations.
  auto search = [&](auto&& self, int j, const std::vector<std::uint8_t>& mask) -> bool {
    const std::size_t sub = stride[j + 1];
    std::size_t need = 1;
    for (int l = j + 1; l < k; ++l)
      need *= static_cast<std::size_t>(u);
    auto pick = [&](auto&& me, int start, int chosen, const std::vector<std::uint8_t>& acc) -> bool {
      if (chosen == u)
        return j + 1 == k ? true : self(self, j + 1, acc);
      for (int x = start; x < inst.size(j); ++x) {
        std::vector<std::uint8_t> next(sub);
        std::size_t count = 0;
        for (std::size_t t = 0; t < sub; ++t) {
          next[t] = (chosen == 0 ? 1 : acc[t]) & mask[static_cast<std::size_t>(x) * sub + t];
          count += next[t];
        }
        if (count >= need && me(me, x + 1, chosen + 1, next))
          return true;
      }
      return false;
    };
    return pick(pick, 0, 0, std::vector<std::uint8_t>(sub, 1));
  };
  return !search(search, 0, tensor);
}

// ---------------------------------------------------------------------------
// Relations and generators for experiments (planar parts).

namespace detail {

inline void add_mono(Polynomial& f, int dim, std::initializer_list<int> vars, const Rational& c) {
  Polynomial::Exponents e(dim, 0);
  for (int v : vars)
    ++e[v];
  f.add_term(e, c);
}

}  // namespace detail

/// Relations over k planar parts (variables x_j = 2j, y_j = 2j+1).
/// "always": constant true. "sum-threshold": sum of all x_j <= k/2.
/// "centroid-disk": the centroid lies within distance 1/4 of (1/2, 1/2).
/// "orientation" (k=3): p1, p2, p3 are counterclockwise or collinear.
/// "collinear" (k=3): p1, p2, p3 are collinear.
inline GeomSet hyper_relation(const std::string& name, int k) {
  const int dim = 2 * k;
  if (name == "always")
    return GeomSet::constant(dim, true);
  if (name == "sum-threshold") {
    std::vector<Rational> normal(dim, 0);
    for (int j = 0; j < k; ++j)
      normal[2 * j] = 1;
    Rational half = k;
    half /= 2;
    return GeomSet::linear(normal, half, false);
  }
  if (name == "centroid-disk") {
    // (k/4)^2 - sum_axis (s_axis - k/2)^2 >= 0 with s_axis the sum of that coordinate.
    Polynomial f(dim);
    Rational kk = k;
    Rational rad = kk / 4;
    detail::add_mono(f, dim, {}, rad * rad);
    for (int axis = 0; axis < 2; ++axis) {
      Rational c = kk / 2;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          detail::add_mono(f, dim, {2 * a + axis, 2 * b + axis}, -1);
      for (int a = 0; a < k; ++a)
        detail::add_mono(f, dim, {2 * a + axis}, 2 * c);
      detail::add_mono(f, dim, {}, -c * c);
    }
    return GeomSet::generic(dim, {f}, Formula::atom(0, true), 4);
  }
  if (name == "orientation" || name == "collinear") {
    if (k != 3)
      throw ContractViolation(name + " relation needs k = 3");
    // (x2-x1)(y3-y1) - (y2-y1)(x3-x1)
    Polynomial f(dim);
    detail::add_mono(f, dim, {2, 5}, 1);
    detail::add_mono(f, dim, {2, 1}, -1);
    detail::add_mono(f, dim, {0, 5}, -1);
    detail::add_mono(f, dim, {3, 4}, -1);
    detail::add_mono(f, dim, {3, 0}, 1);
    detail::add_mono(f, dim, {1, 4}, 1);
    if (name == "orientation")
      return GeomSet::generic(dim, {f}, Formula::atom(0, true), 4);
    Polynomial g(dim);
    for (const auto& [e, c] : f.terms())
      g.add_term(e, -c);
    return GeomSet::generic(dim, {f, g}, Formula::all_non_negative(2), 4);
  }
  throw ContractViolation("unknown hypergraph relation: " + name);
}

/// Planar parts with uniform points in the unit square under a named relation.
inline KPartiteInstance gen_hyper_random(const std::string& relation, const std::vector<int>& sizes,
                                         std::uint64_t seed) {
  Rng rng(seed);
  KPartiteInstance inst;
  const int k = static_cast<int>(sizes.size());
  inst.dims.assign(k, 2);
  inst.parts.resize(k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < sizes[j]; ++i)
      inst.parts[j].emplace_back(std::vector<Rational>{detail::urat(rng), detail::urat(rng)});
  inst.relation = hyper_relation(relation, k);
  return inst;
}

/// Three parts of random points plus `planted` collinear triples (p_i, q_i, r_i) with
/// rational coordinates; returns the instance under the collinear relation.
inline KPartiteInstance gen_planted_collinear(int n, int planted, std::uint64_t seed) {
  if (planted > n)
    throw ContractViolation("cannot plant more triples than points per part");
  Rng rng(seed);
  KPartiteInstance inst;
  inst.dims.assign(3, 2);
  inst.parts.resize(3);
  auto rnd = [&] {
    Rational v = rational_from_int(static_cast<std::int64_t>(rng.below(1000)));
    v /= 997;
    return v;
  };
  for (int i = 0; i < planted; ++i) {
    Point a(std::vector<Rational>{rnd(), rnd()});
    Point b(std::vector<Rational>{rnd(), rnd()});
    Rational t = rational_from_int(static_cast<std::int64_t>(1 + rng.below(5)));
    t /= 7;
    Point c(std::vector<Rational>{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    inst.parts[0].push_back(a);
    inst.parts[1].push_back(b);
    inst.parts[2].push_back(c);
  }
  for (int j = 0; j < 3; ++j)
    while (static_cast<int>(inst.parts[j].size()) < n)
      inst.parts[j].emplace_back(std::vector<Rational>{detail::urat(rng), detail::urat(rng)});
  inst.relation = hyper_relation("collinear", 3);
  return inst;
}

/// The k = 2 explicit instance with the same edge set, for comparing the two cover paths.
inline KPartiteInstance to_kpartite(const IncidenceInstance& inst) {
  KPartiteInstance h;
  h.sizes = {inst.m(), inst.n()};
  h.explicit_edges = std::vector<HyperEdge>{};
  for (auto [p, q] : edge_set(inst))
    h.explicit_edges->push_back({p, q});
  return h;
}

inline HyperCover to_hyper_cover(const BicliqueCover& c) {
  HyperCover h;
  for (const auto& b : c.blocks)
    h.blocks.push_back({{b.a, b.b}, b.tag});
  h.canonicalize();
  return h;
}

}  // namespace sacover

#endif  // SACOVER_HYPERGRAPH_HPP
