#ifndef SACOVER_ORACLE_HPP
#define SACOVER_ORACLE_HPP

#include <sacover/cover.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

namespace sacover {

/// Bipartite graph with at most 12 vertices per side; neighborhoods as bit masks.
struct SmallGraph {
  static constexpr int max_side = 12;
  int m = 0;
  int n = 0;
  std::vector<Edge> edges;          // sorted, deduplicated
  std::vector<std::uint32_t> nbr;   // nbr[p] bit q set iff (p,q) is an edge

  SmallGraph() = default;
  SmallGraph(int m_, int n_, std::vector<Edge> es) : m(m_), n(n_) {
    if (m < 0 || n < 0 || m > max_side || n > max_side)
      throw Refusal("oracle graphs are limited to 12 vertices per side");
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    nbr.assign(static_cast<std::size_t>(m), 0);
    for (auto [p, q] : es) {
      if (p < 0 || p >= m || q < 0 || q >= n)
        throw ContractViolation("edge index out of range");
      nbr[p] |= 1u << q;
    }
    edges = std::move(es);
  }

  static SmallGraph from_instance(const IncidenceInstance& inst) { return SmallGraph(inst.m(), inst.n(), edge_set(inst)); }

  bool has(int p, int q) const { return (nbr[p] >> q) & 1u; }
};

/// Biclique as bit masks over P and Q.
struct MaskBiclique {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  int cost() const { return std::popcount(a) + std::popcount(b); }
  friend auto operator<=>(const MaskBiclique&, const MaskBiclique&) = default;
};

inline std::vector<int> mask_to_indices(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u)
      out.push_back(i);
  return out;
}

inline BicliqueCover cover_from_masks(const std::vector<MaskBiclique>& bs) {
  BicliqueCover c;
  for (const auto& b : bs)
    c.blocks.push_back({mask_to_indices(b.a), mask_to_indices(b.b), BlockTag::Base});
  c.canonicalize();
  return c;
}

/// All maximal bicliques with both sides nonempty, by closing the P-neighborhoods
/// under intersection. Refuses beyond `cap` bicliques.
inline std::vector<MaskBiclique> maximal_bicliques(const SmallGraph& g, std::size_t cap = 10000) {
  std::set<std::uint32_t> closure;
  std::vector<std::uint32_t> frontier;
  for (auto nb : g.nbr)
    if (nb && closure.insert(nb).second)
      frontier.push_back(nb);
  while (!frontier.empty()) {
    std::uint32_t s = frontier.back();
    frontier.pop_back();
    for (auto nb : g.nbr) {
      std::uint32_t t = s & nb;
      if (t && closure.insert(t).second) {
        if (closure.size() > cap)
          throw Refusal("maximal biclique enumeration exceeded its cap");
        frontier.push_back(t);
      }
    }
  }
  std::vector<MaskBiclique> out;
  for (auto b : closure) {
    std::uint32_t a = 0;
    for (int p = 0; p < g.m; ++p)
      if ((g.nbr[p] & b) == b)
        a |= 1u << p;
    out.push_back({a, b});
  }
  return out;
}

struct OracleResult {
  std::int64_t cost = 0;
  BicliqueCover witness;
};

namespace detail {

// Candidate block with the edge-index mask it covers.
struct Candidate {
  MaskBiclique block;
  std::uint64_t edge_mask = 0;
  int cost = 0;
};

inline std::uint64_t edge_mask_of(const SmallGraph& g, const MaskBiclique& b) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    auto [p, q] = g.edges[i];
    if (((b.a >> p) & 1u) && ((b.b >> q) & 1u))
      mask |= std::uint64_t{1} << i;
  }
  return mask;
}

inline void for_each_submask(std::uint32_t mask, auto&& f) {
  for (std::uint32_t s = mask; s; s = (s - 1) & mask)
    f(s);
}

}  // namespace detail

/// Exact J(G): minimum total block cost over covers by (possibly overlapping) bicliques.
/// Branches on the lowest uncovered edge over all sub-bicliques of maximal bicliques that
/// contain it, memoizing on the covered-edge mask.
inline OracleResult min_cover_cost(const SmallGraph& g, int edge_cap = 14) {
  if (edge_cap > 30)
    throw ContractViolation("edge cap above 30 is not supported");
  const int ne = static_cast<int>(g.edges.size());
  if (ne > edge_cap)
    throw Refusal("oracle refuses: " + std::to_string(ne) + " edges exceed the cap of " + std::to_string(edge_cap));
  OracleResult res;
  if (ne == 0)
    return res;
  auto maximal = maximal_bicliques(g);
  std::map<std::uint64_t, detail::Candidate> best_by_mask;
  for (const auto& mb : maximal)
    detail::for_each_submask(mb.a, [&](std::uint32_t a) {
      detail::for_each_submask(mb.b, [&](std::uint32_t b) {
        MaskBiclique blk{a, b};
        std::uint64_t em = detail::edge_mask_of(g, blk);
        int c = blk.cost();
        auto it = best_by_mask.find(em);
        if (it == best_by_mask.end() || c < it->second.cost || (c == it->second.cost && blk < it->second.block))
          best_by_mask[em] = {blk, em, c};
      });
    });
  std::vector<std::vector<const detail::Candidate*>> containing(static_cast<std::size_t>(ne));
  for (const auto& [em, cand] : best_by_mask)
    for (int i = 0; i < ne; ++i)
      if ((em >> i) & 1u)
        containing[i].push_back(&cand);

  const std::uint64_t full = ne == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << ne) - 1;
  std::unordered_map<std::uint64_t, std::pair<int, const detail::Candidate*>> memo;
  auto solve = [&](auto&& self, std::uint64_t covered) -> int {
    if (covered == full)
      return 0;
    if (auto it = memo.find(covered); it != memo.end())
      return it->second.first;
    int e = std::countr_one(covered);
    int best = std::numeric_limits<int>::max();
    const detail::Candidate* arg = nullptr;
    for (const auto* c : containing[e]) {
      if (c->cost >= best)
        continue;
      int v = c->cost + self(self, covered | c->edge_mask);
      if (v < best) {
        best = v;
        arg = c;
      }
    }
    memo.emplace(covered, std::make_pair(best, arg));
    return best;
  };
  res.cost = solve(solve, 0);
  std::vector<MaskBiclique> chosen;
  for (std::uint64_t covered = 0; covered != full;) {
    const auto* c = memo.at(covered).second;
    chosen.push_back(c->block);
    covered |= c->edge_mask;
  }
  res.witness = cover_from_masks(chosen);
  return res;
}

inline OracleResult min_cover_cost(const IncidenceInstance& inst, int edge_cap = 14) {
  return min_cover_cost(SmallGraph::from_instance(inst), edge_cap);
}

/// Second, independent exact solver for tiny graphs: enumerates every biclique from the
/// subsets of P directly and runs a DP over edge subsets. Limited to 16 edges.
inline std::int64_t exhaustive_cover_cost(const SmallGraph& g) {
  const int ne = static_cast<int>(g.edges.size());
  if (ne > 16)
    throw Refusal("exhaustive cover search is limited to 16 edges");
  if (ne == 0)
    return 0;
  std::vector<std::pair<std::uint32_t, int>> blocks;  // (edge mask, cost)
  for (std::uint32_t a = 1; a < (1u << g.m); ++a) {
    std::uint32_t common = (1u << g.n) - 1;
    for (int p = 0; p < g.m; ++p)
      if ((a >> p) & 1u)
        common &= g.nbr[p];
    for (std::uint32_t b = common; b; b = (b - 1) & common) {
      std::uint32_t em = 0;
      for (int i = 0; i < ne; ++i) {
        auto [p, q] = g.edges[i];
        if (((a >> p) & 1u) && ((b >> q) & 1u))
          em |= 1u << i;
      }
      blocks.emplace_back(em, std::popcount(a) + std::popcount(b));
    }
  }
  const std::uint32_t full = (1u << ne) - 1;
  const int inf = std::numeric_limits<int>::max() / 2;
  std::vector<int> best(static_cast<std::size_t>(full) + 1, inf);
  best[0] = 0;
  for (std::uint32_t s = 0; s <= full; ++s) {
    if (best[s] == inf)
      continue;
    for (auto [em, c] : blocks) {
      std::uint32_t t = s | em;
      if (t != s && best[s] + c < best[t])
        best[t] = best[s] + c;
    }
  }
  return best[full];
}

/// Baseline: repeatedly takes the maximal biclique with the most uncovered edges per unit cost.
inline BicliqueCover greedy_cover(const SmallGraph& g) {
  auto maximal = maximal_bicliques(g);
  std::vector<std::uint8_t> covered(static_cast<std::size_t>(g.m) * SmallGraph::max_side, 0);
  std::size_t remaining = g.edges.size();
  std::vector<MaskBiclique> chosen;
  while (remaining > 0) {
    const MaskBiclique* arg = nullptr;
    std::int64_t best_num = -1, best_den = 1;
    for (const auto& b : maximal) {
      std::int64_t fresh = 0;
      for (int p : mask_to_indices(b.a))
        for (int q : mask_to_indices(b.b))
          fresh += covered[static_cast<std::size_t>(p) * SmallGraph::max_side + q] ? 0 : 1;
      std::int64_t den = b.cost();
      if (fresh * best_den > best_num * den) {
        best_num = fresh;
        best_den = den;
        arg = &b;
      }
    }
    chosen.push_back(*arg);
    for (int p : mask_to_indices(arg->a))
      for (int q : mask_to_indices(arg->b)) {
        auto& c = covered[static_cast<std::size_t>(p) * SmallGraph::max_side + q];
        if (!c) {
          c = 1;
          --remaining;
        }
      }
  }
  return cover_from_masks(chosen);
}

}  // namespace sacover

#endif  // SACOVER_ORACLE_HPP
