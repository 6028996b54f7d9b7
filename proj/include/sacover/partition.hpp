#ifndef SACOVER_PARTITION_HPP
#define SACOVER_PARTITION_HPP

#include <sacover/geom_set.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <vector>

namespace sacover {

/// Open cell of a slab-grid partition, stored as its closed box; holds the indices of
/// the points strictly inside.
struct Cell {
  Box box;
  std::vector<int> point_idxs;
};

/// Cut values placed on one axis inside one parent slab.
struct CutLayer {
  int axis = 0;
  Box slab;
  std::vector<Rational> values;
};

/// Points lying exactly on the cut hyperplane x_axis == value.
struct BoundaryGroup {
  int axis = 0;
  Rational value;
  std::vector<int> point_idxs;
};

/// Quantile slab-grid partition: level-1 cuts on coordinate 0, then per-slab cuts on
/// coordinate 1, and so on. The zero set of the product of all cut hyperplanes plays the
/// role of the partitioning polynomial.
struct CellPartition {
  int dim = 0;
  int target_r = 0;
  int point_count = 0;
  bool degenerate = false;  // r^dim >= n: every distinct value gets its own slab
  Box region;
  std::vector<CutLayer> cut_layers;
  std::vector<Cell> cells;
  std::vector<int> boundary_points;
  std::vector<BoundaryGroup> boundary_groups;

  std::size_t max_occupancy() const {
    std::size_t m = 0;
    for (const auto& c : cells)
      m = std::max(m, c.point_idxs.size());
    return m;
  }
  /// Measured constant in #cells <= c1 * r^dim.
  double c1() const { return static_cast<double>(cells.size()) / std::pow(target_r, dim); }
  /// Measured constant in max occupancy <= c2 * n / r^dim.
  double c2() const {
    if (point_count == 0)
      return 0.0;
    return static_cast<double>(max_occupancy()) * std::pow(target_r, dim) / point_count;
  }
};

namespace detail {

/// Cut values for sorted samples split into `parts` quantile groups. Where the quantile
/// falls between two distinct values the cut sits at their midpoint; where it falls
/// inside a run of equal values the cut passes through them.
inline std::vector<Rational> quantile_cuts(const std::vector<const Rational*>& sorted, int parts) {
  std::vector<Rational> cuts;
  const std::int64_t n = static_cast<std::int64_t>(sorted.size());
  for (std::int64_t j = 1; j < parts; ++j) {
    std::int64_t t = (j * n + parts - 1) / parts;  // ceil(j n / parts)
    if (t < 1 || t > n - 1)
      continue;
    const Rational& a = *sorted[t - 1];
    const Rational& b = *sorted[t];
    Rational cut = a < b ? midpoint(a, b) : b;
    if (cuts.empty() || cuts.back() != cut)
      cuts.push_back(std::move(cut));
  }
  return cuts;
}

struct PartitionBuilder {
  std::span<const Point> points;
  int dim;
  int r;
  bool degenerate;
  CellPartition& out;
  std::map<std::pair<int, Rational>, std::size_t, bool (*)(const std::pair<int, Rational>&, const std::pair<int, Rational>&)>
      group_index{[](const std::pair<int, Rational>& a, const std::pair<int, Rational>& b) {
        if (a.first != b.first)
          return a.first < b.first;
        return a.second < b.second;
      }};

  void split(std::vector<int> idxs, int axis, Box box) {
    if (axis == dim) {
      std::sort(idxs.begin(), idxs.end());
      out.cells.push_back({std::move(box), std::move(idxs)});
      return;
    }
    std::sort(idxs.begin(), idxs.end(), [&](int a, int b) {
      const Rational& x = points[a][axis];
      const Rational& y = points[b][axis];
      if (x != y)
        return x < y;
      return a < b;
    });
    std::vector<const Rational*> vals;
    vals.reserve(idxs.size());
    for (int i : idxs)
      vals.push_back(&points[i][axis]);
    int parts = degenerate ? std::max<int>(1, static_cast<int>(idxs.size())) : r;
    std::vector<Rational> cuts = quantile_cuts(vals, parts);
    out.cut_layers.push_back({axis, box, cuts});

    // slab k spans [bounds[k], bounds[k+1]]
    std::vector<Rational> bounds;
    bounds.push_back(box[axis].lo);
    for (const auto& c : cuts)
      bounds.push_back(c);
    bounds.push_back(box[axis].hi);
    std::vector<std::vector<int>> slabs(cuts.size() + 1);
    for (int i : idxs) {
      const Rational& x = points[i][axis];
      auto it = std::lower_bound(cuts.begin(), cuts.end(), x);
      if (it != cuts.end() && *it == x) {
        add_boundary(axis, x, i);
        continue;
      }
      slabs[static_cast<std::size_t>(it - cuts.begin())].push_back(i);
    }
    for (std::size_t k = 0; k < slabs.size(); ++k) {
      if (bounds[k] == bounds[k + 1] && slabs[k].empty() && !cuts.empty())
        continue;
      Box sub = box;
      sub[axis] = {bounds[k], bounds[k + 1]};
      split(std::move(slabs[k]), axis + 1, std::move(sub));
    }
  }

  void add_boundary(int axis, const Rational& value, int idx) {
    auto key = std::make_pair(axis, value);
    auto it = group_index.find(key);
    if (it == group_index.end()) {
      it = group_index.emplace(key, out.boundary_groups.size()).first;
      out.boundary_groups.push_back({axis, value, {}});
    }
    out.boundary_groups[it->second].point_idxs.push_back(idx);
    out.boundary_points.push_back(idx);
  }
};

}  // namespace detail

/// Builds the quantile slab-grid r-partition of `points` (all of one dimension >= 1).
/// When r^dim >= n the partition degenerates to one slab per distinct value.
inline CellPartition build_partition(std::span<const Point> points, int r) {
  if (r < 2)
    throw ContractViolation("partition parameter r must be at least 2");
  if (points.empty())
    throw ContractViolation("cannot partition an empty point set");
  const int dim = points.front().dim();
  if (dim < 1)
    throw ContractViolation("partition dimension must be positive");
  for (const auto& p : points)
    if (p.dim() != dim)
      throw ContractViolation("mixed point dimensions in partition input");

  CellPartition out;
  out.dim = dim;
  out.target_r = r;
  out.point_count = static_cast<int>(points.size());
  out.degenerate = std::pow(static_cast<double>(r), dim) >= static_cast<double>(points.size());
  out.region = Box::bounding(points);

  detail::PartitionBuilder b{points, dim, r, out.degenerate, out};
  std::vector<int> all(points.size());
  std::iota(all.begin(), all.end(), 0);
  b.split(std::move(all), 0, out.region);
  std::sort(out.boundary_points.begin(), out.boundary_points.end());
  for (auto& g : out.boundary_groups)
    std::sort(g.point_idxs.begin(), g.point_idxs.end());
  return out;
}

inline CellPartition build_partition(const std::vector<Point>& points, int r) {
  return build_partition(std::span<const Point>(points), r);
}

inline CellRelation classify(const GeomSet& g, const Cell& cell) { return classify(g, cell.box); }

/// classify with up to `depth` rounds of bisection along the widest side when the plain
/// test is inconclusive. Sound: the closed halves cover the box.
inline CellRelation classify_refined(const GeomSet& g, const Box& box, int depth) {
  CellRelation rel = classify(g, box);
  if (rel != CellRelation::Crosses || depth <= 0 || !std::holds_alternative<GenericSet>(g.shape()))
    return rel;
  int axis = -1;
  Rational widest = 0;
  for (int i = 0; i < box.dim(); ++i) {
    Rational w = box[i].hi - box[i].lo;
    if (w > widest) {
      widest = w;
      axis = i;
    }
  }
  if (axis < 0)
    return rel;
  Rational mid = midpoint(box[axis].lo, box[axis].hi);
  Box lo = box, hi = box;
  lo[axis].hi = mid;
  hi[axis].lo = mid;
  CellRelation a = classify_refined(g, lo, depth - 1);
  if (a == CellRelation::Crosses)
    return a;
  CellRelation b = classify_refined(g, hi, depth - 1);
  return a == b ? a : CellRelation::Crosses;
}

struct CrossingReport {
  int r = 0;
  int cell_count = 0;
  std::int64_t total_contains = 0;
  std::int64_t total_crossings = 0;
  double empirical_exponent = 0.0;  // log(mean crossings per set) / log r
  std::vector<int> per_set_crossings;
  std::vector<int> per_set_contains;
};

inline CrossingReport crossing_stats(const CellPartition& part, std::span<const GeomSet> sets) {
  CrossingReport rep;
  rep.r = part.target_r;
  rep.cell_count = static_cast<int>(part.cells.size());
  for (const auto& g : sets) {
    int cross = 0, cont = 0;
    for (const auto& c : part.cells) {
      switch (classify(g, c.box)) {
      case CellRelation::Crosses:
        ++cross;
        break;
      case CellRelation::Contains:
        ++cont;
        break;
      case CellRelation::Disjoint:
        break;
      }
    }
    rep.per_set_crossings.push_back(cross);
    rep.per_set_contains.push_back(cont);
    rep.total_crossings += cross;
    rep.total_contains += cont;
  }
  if (!sets.empty() && rep.total_crossings > 0) {
    double mean = static_cast<double>(rep.total_crossings) / static_cast<double>(sets.size());
    rep.empirical_exponent = std::log(mean) / std::log(static_cast<double>(part.target_r));
  }
  return rep;
}

inline CrossingReport crossing_stats(const CellPartition& part, const std::vector<GeomSet>& sets) {
  return crossing_stats(part, std::span<const GeomSet>(sets));
}

/// One point family with its partition parameter.
struct PointFamily {
  std::vector<Point> points;
  int r = 2;
};

/// Independent per-factor partitions; their cells multiply into the product grid.
inline std::vector<CellPartition> grid_partition(const std::vector<PointFamily>& families) {
  std::vector<CellPartition> out;
  out.reserve(families.size());
  for (const auto& f : families)
    out.push_back(build_partition(f.points, f.r));
  return out;
}

inline std::int64_t product_cell_count(const std::vector<CellPartition>& parts) {
  std::int64_t c = 1;
  for (const auto& p : parts)
    c *= static_cast<std::int64_t>(p.cells.size());
  return c;
}

}  // namespace sacover

#endif  // SACOVER_PARTITION_HPP
