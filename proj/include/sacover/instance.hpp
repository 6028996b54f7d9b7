#ifndef SACOVER_INSTANCE_HPP
#define SACOVER_INSTANCE_HPP

#include <sacover/geom_set.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace sacover {

using Edge = std::pair<int, int>;  // (pIndex, qIndex)

struct ExplicitEdges {
  int m = 0;
  int n = 0;
  std::vector<Edge> edges;
};

enum class InstanceMode { Geometric, Explicit };

/// Bipartite incidence instance between P (m vertices) and Q (n vertices).
///
/// Geometric mode carries at least one of two views: points of P in R^d1 with the
/// neighbor sets gamma_q (also in R^d1), or points of Q in R^d2 with the sets gamma_p.
/// Explicit mode stores the edge list directly.
struct IncidenceInstance {
  int d1 = 2;
  int d2 = 2;
  int description_complexity = 4;
  std::vector<Point> points_p;
  std::vector<GeomSet> sets_q;
  std::vector<Point> points_q;
  std::vector<GeomSet> sets_p;
  std::optional<ExplicitEdges> explicit_edges;
  // Set when every P point lies on the parabola y = x^2; the cover then partitions P
  // along the curve parameter x instead of the plane.
  bool p_on_parabola = false;

  InstanceMode mode() const { return explicit_edges ? InstanceMode::Explicit : InstanceMode::Geometric; }
  int m() const {
    if (explicit_edges)
      return explicit_edges->m;
    if (!points_p.empty())
      return static_cast<int>(points_p.size());
    return static_cast<int>(sets_p.size());
  }
  int n() const {
    if (explicit_edges)
      return explicit_edges->n;
    if (!sets_q.empty())
      return static_cast<int>(sets_q.size());
    return static_cast<int>(points_q.size());
  }

};

/// Checks the instance invariants; throws ContractViolation describing the first problem.
inline void validate(const IncidenceInstance& inst) {
  if (inst.d1 < 1 || inst.d2 < 1)
    throw ContractViolation("ambient dimensions must be positive");
  if (inst.explicit_edges) {
    if (!inst.points_p.empty() || !inst.sets_q.empty() || !inst.points_q.empty() || !inst.sets_p.empty())
      throw ContractViolation("explicit-edge instance must not also carry geometry");
    const auto& ex = *inst.explicit_edges;
    if (ex.m < 0 || ex.n < 0)
      throw ContractViolation("negative side size");
    for (auto [p, q] : ex.edges)
      if (p < 0 || p >= ex.m || q < 0 || q >= ex.n)
        throw ContractViolation("explicit edge index out of range: (" + std::to_string(p) + "," + std::to_string(q) + ")");
    return;
  }
  bool pview = !inst.points_p.empty() || !inst.sets_q.empty();
  bool qview = !inst.points_q.empty() || !inst.sets_p.empty();
  if (pview) {
    for (const auto& p : inst.points_p)
      if (p.dim() != inst.d1)
        throw ContractViolation("P point dimension differs from d1");
    for (const auto& g : inst.sets_q)
      if (g.dim() != inst.d1)
        throw ContractViolation("gamma_q dimension differs from d1");
  }
  if (qview) {
    for (const auto& q : inst.points_q)
      if (q.dim() != inst.d2)
        throw ContractViolation("Q point dimension differs from d2");
    for (const auto& g : inst.sets_p)
      if (g.dim() != inst.d2)
        throw ContractViolation("gamma_p dimension differs from d2");
  }
  if (inst.p_on_parabola) {
    if (inst.d1 != 2)
      throw ContractViolation("parabola-restricted points must be planar");
    for (const auto& p : inst.points_p)
      if (p[1] != p[0] * p[0])
        throw ContractViolation("a P point is off the parabola y = x^2");
  }
  if (pview && qview) {
    if (inst.points_p.size() != inst.sets_p.size() || inst.points_q.size() != inst.sets_q.size())
      throw ContractViolation("the two views disagree on side sizes");
  }
  for (const auto& g : inst.sets_q)
    if (auto* s = std::get_if<GenericSet>(&g.shape()))
      for (const auto& f : s->polys)
        if (f.degree() > inst.description_complexity || static_cast<int>(s->polys.size()) > inst.description_complexity)
          throw ContractViolation("generic set exceeds description complexity");
  for (const auto& g : inst.sets_p)
    if (auto* s = std::get_if<GenericSet>(&g.shape()))
      for (const auto& f : s->polys)
        if (f.degree() > inst.description_complexity || static_cast<int>(s->polys.size()) > inst.description_complexity)
          throw ContractViolation("generic set exceeds description complexity");
}

/// Which geometric view to read incidences from.
enum class View { P, Q };

inline bool view_available(const IncidenceInstance& inst, View v) {
  if (inst.explicit_edges)
    return false;
  if (v == View::P)
    return !inst.sets_q.empty() && inst.points_p.size() == static_cast<std::size_t>(inst.m()) && !inst.points_p.empty();
  return !inst.sets_p.empty() && inst.points_q.size() == static_cast<std::size_t>(inst.n()) && !inst.points_q.empty();
}

/// Adjacency test for a single pair, read from the preferred available view.
inline bool is_edge(const IncidenceInstance& inst, int p, int q, const NumericConfig& num = {}) {
  if (view_available(inst, View::P))
    return incident(inst.points_p[p], inst.sets_q[q], num);
  if (view_available(inst, View::Q))
    return incident(inst.points_q[q], inst.sets_p[p], num);
  throw ContractViolation("is_edge requires a geometric view");
}

/// Sorted, deduplicated edge list.
inline std::vector<Edge> edge_set(const IncidenceInstance& inst, const NumericConfig& num = {}) {
  std::vector<Edge> out;
  if (inst.explicit_edges) {
    out = inst.explicit_edges->edges;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  int m = inst.m(), n = inst.n();
  if (m == 0 || n == 0)
    return out;
  if (!view_available(inst, View::P) && !view_available(inst, View::Q))
    throw ContractViolation("geometric instance has no complete view");
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < n; ++q)
      if (is_edge(inst, p, q, num))
        out.emplace_back(p, q);
  return out;
}

/// Edge set computed from one specific view.
inline std::vector<Edge> edge_set_from_view(const IncidenceInstance& inst, View v, const NumericConfig& num = {}) {
  if (!view_available(inst, v))
    throw ContractViolation("requested view is not available");
  std::vector<Edge> out;
  for (int p = 0; p < inst.m(); ++p)
    for (int q = 0; q < inst.n(); ++q) {
      bool e = v == View::P ? incident(inst.points_p[p], inst.sets_q[q], num)
                            : incident(inst.points_q[q], inst.sets_p[p], num);
      if (e)
        out.emplace_back(p, q);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Dual views.
//
// A side view lists, for the side whose points get partitioned, the point coordinates
// and for every vertex of the opposite side its neighbor set in the same space.
// Built-in families dualize into one or more charts: a linear set whose last nonzero
// normal coordinate is k becomes the point (-a_0/a_k, ..., -a_{k-1}/a_k, c/a_k); a ball
// lifts to (center, |center|^2 - radius^2). Vertices of different charts never share a
// cell, so the recursion treats each chart separately.

struct Chart {
  int dim = 0;
  std::vector<int> members;                // vertex indices of the partitioned side
  std::map<int, Point> coords;             // member -> coordinates in chart space
  std::vector<GeomSet> opposite_sets;      // one per vertex of the opposite side
};

struct SideView {
  std::vector<Chart> charts;
  std::vector<int> chart_of;  // vertex -> chart index
};

/// View whose points are `points` (one chart, identity coordinates).
inline SideView primal_view(const std::vector<Point>& points, const std::vector<GeomSet>& sets, int dim) {
  SideView v;
  Chart c;
  c.dim = dim;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    c.members.push_back(i);
    c.coords.emplace(i, points[i]);
  }
  c.opposite_sets = sets;
  v.charts.push_back(std::move(c));
  v.chart_of.assign(points.size(), 0);
  return v;
}

/// Dualizes sets (indexed by the new point side) against the opposite side's points.
/// Returns nullopt when some set has no built-in dual (generic or constant sets).
inline std::optional<SideView> dual_view(const std::vector<GeomSet>& sets, const std::vector<Point>& opposite) {
  // chart key: (family, k, orientation)
  using Key = std::tuple<int, int, int>;
  std::map<Key, int> chart_index;
  SideView v;
  v.chart_of.assign(sets.size(), -1);
  std::vector<Key> keys;
  for (int i = 0; i < static_cast<int>(sets.size()); ++i) {
    const auto& shape = sets[i].shape();
    Key key;
    Point w;
    if (auto* l = std::get_if<LinearSet>(&shape)) {
      int k = -1;
      for (int j = 0; j < static_cast<int>(l->normal.size()); ++j)
        if (l->normal[j] != 0)
          k = j;
      if (k < 0)
        return std::nullopt;
      const Rational& ak = l->normal[k];
      std::vector<Rational> c;
      for (int j = 0; j < k; ++j) {
        Rational t = -l->normal[j] / ak;
        c.push_back(t);
      }
      Rational t = l->rhs / ak;
      c.push_back(t);
      w = Point(std::move(c));
      int orient = l->equality ? 0 : (ak > 0 ? 1 : -1);
      key = Key{0, k, orient};
    } else if (auto* b = std::get_if<BallSet>(&shape)) {
      std::vector<Rational> c = b->center;
      Rational lift = -b->radius * b->radius;
      for (const auto& x : b->center)
        lift += x * x;
      c.push_back(lift);
      w = Point(std::move(c));
      key = Key{1, static_cast<int>(b->center.size()), 0};
    } else {
      return std::nullopt;
    }
    auto [it, fresh] = chart_index.emplace(key, static_cast<int>(v.charts.size()));
    if (fresh) {
      Chart ch;
      ch.dim = w.dim();
      v.charts.push_back(std::move(ch));
      keys.push_back(key);
    }
    Chart& ch = v.charts[it->second];
    ch.members.push_back(i);
    ch.coords.emplace(i, std::move(w));
    v.chart_of[i] = it->second;
  }
  for (std::size_t ci = 0; ci < v.charts.size(); ++ci) {
    auto [family, k, orient] = keys[ci];
    Chart& ch = v.charts[ci];
    for (const auto& y : opposite) {
      if (family == 0) {
        // a_k > 0:  y_k <= sum_{j<k} w_j y_j + w_k   <=>  sum(-y_j) w_j - w_k <= -y_k
        // a_k < 0:  y_k >= ...                        <=>  sum(y_j) w_j + w_k <= y_k
        // equality: sum(y_j) w_j + w_k == y_k
        std::vector<Rational> normal;
        Rational s = orient == 1 ? -1 : 1;
        for (int j = 0; j < k; ++j)
          normal.push_back(s * y[j]);
        normal.push_back(s);
        Rational rhs = s * y[k];
        ch.opposite_sets.push_back(GeomSet::linear(std::move(normal), rhs, orient == 0));
      } else {
        // |y - c|^2 <= r^2  <=>  -2 y . c + (|c|^2 - r^2) <= -|y|^2
        std::vector<Rational> normal;
        Rational sq = 0;
        for (int j = 0; j < k; ++j) {
          Rational t = -2 * y[j];
          normal.push_back(t);
          sq += y[j] * y[j];
        }
        normal.push_back(1);
        Rational rhs = -sq;
        ch.opposite_sets.push_back(GeomSet::linear(std::move(normal), rhs, false));
      }
    }
  }
  return v;
}

/// The partition view for side P (points of P, sets gamma_q) if one exists.
inline std::optional<SideView> side_view(const IncidenceInstance& inst, View side) {
  if (inst.explicit_edges)
    return std::nullopt;
  if (side == View::P) {
    if (view_available(inst, View::P))
      return primal_view(inst.points_p, inst.sets_q, inst.d1);
    if (view_available(inst, View::Q))
      return dual_view(inst.sets_p, inst.points_q);
    return std::nullopt;
  }
  if (view_available(inst, View::Q))
    return primal_view(inst.points_q, inst.sets_p, inst.d2);
  if (view_available(inst, View::P))
    return dual_view(inst.sets_q, inst.points_p);
  return std::nullopt;
}

/// Adds whichever view is missing, when the built-in duality supports it.
/// Returns false if the instance could not be completed.
inline bool complete_views(IncidenceInstance& inst) {
  if (inst.explicit_edges)
    return false;
  bool p = view_available(inst, View::P), q = view_available(inst, View::Q);
  if (p && q)
    return true;
  if (!p && !q)
    return false;
  // Dual charts generally have their own dimensions; only a single-chart dual
  // gives a flat instance view.
  auto v = side_view(inst, p ? View::Q : View::P);
  if (!v || v->charts.size() != 1)
    return false;
  const Chart& c = v->charts.front();
  std::vector<Point> pts(c.members.size());
  for (int i : c.members)
    pts[i] = c.coords.at(i);
  if (p) {
    inst.points_q = std::move(pts);
    inst.sets_p = c.opposite_sets;
    inst.d2 = c.dim;
  } else {
    inst.points_p = std::move(pts);
    inst.sets_q = c.opposite_sets;
    inst.d1 = c.dim;
  }
  return true;
}

}  // namespace sacover

#endif  // SACOVER_INSTANCE_HPP
