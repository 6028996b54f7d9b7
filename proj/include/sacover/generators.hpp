#ifndef SACOVER_GENERATORS_HPP
#define SACOVER_GENERATORS_HPP

#include <sacover/instance.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace sacover {

/// Seed-keyed source of uniform doubles. Avoids std distributions, whose output is
/// implementation-defined, so that instances are identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : eng_() % bound; }
  bool coin() { return (eng_() >> 63) != 0; }

private:
  std::mt19937_64 eng_;
};

/// Points (i,j) with 1<=i<=k, 1<=j<=2k^2 and lines y = ax + b with 1<=a<=k, 1<=b<=k^2.
/// Every line meets exactly k points, so |E| = k^4.
inline IncidenceInstance gen_st_grid(int k) {
  if (k < 1)
    throw ContractViolation("st-grid needs k >= 1");
  IncidenceInstance inst;
  inst.d1 = inst.d2 = 2;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= 2 * k * k; ++j)
      inst.points_p.emplace_back(std::vector<Rational>{i, j});
  for (int a = 1; a <= k; ++a)
    for (int b = 1; b <= k * k; ++b)
      inst.sets_q.push_back(GeomSet::line(a, -1, -b));
  return inst;
}

/// Exchanges the roles of P and Q.
inline IncidenceInstance transpose(const IncidenceInstance& inst) {
  IncidenceInstance t;
  t.d1 = inst.d2;
  t.d2 = inst.d1;
  t.description_complexity = inst.description_complexity;
  t.points_p = inst.points_q;
  t.sets_q = inst.sets_p;
  t.points_q = inst.points_p;
  t.sets_p = inst.sets_q;
  if (inst.explicit_edges) {
    ExplicitEdges ex{inst.explicit_edges->n, inst.explicit_edges->m, {}};
    for (auto [p, q] : inst.explicit_edges->edges)
      ex.edges.emplace_back(q, p);
    t.explicit_edges = std::move(ex);
  }
  return t;
}

/// True iff no two P vertices share two common neighbors.
inline bool k22_free(const std::vector<Edge>& edges, int m, int n) {
  std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
  for (auto [p, q] : edges)
    nbr[q].push_back(p);
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
  for (auto& ps : nbr)
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        auto& s = seen[static_cast<std::size_t>(ps[i]) * m + ps[j]];
        if (s)
          return false;
        s = 1;
      }
  return true;
}

/// Replaces every vertex by c copies; copy l of vertex i gets index i*c + l.
/// Geometric instances keep coincident geometry; explicit ones get the blown-up edge list.
inline IncidenceInstance gen_clone(const IncidenceInstance& inst, int c) {
  if (c < 1)
    throw ContractViolation("clone factor must be at least 1");
  validate(inst);
  auto edges = edge_set(inst);
  if (!k22_free(edges, inst.m(), inst.n()))
    throw Refusal("clone base instance contains K_{2,2}");
  if (c == 1)
    return inst;
  IncidenceInstance out;
  out.d1 = inst.d1;
  out.d2 = inst.d2;
  out.description_complexity = inst.description_complexity;
  out.p_on_parabola = inst.p_on_parabola;
  auto blow = [c](const auto& v) {
    std::remove_cvref_t<decltype(v)> r;
    for (const auto& x : v)
      for (int l = 0; l < c; ++l)
        r.push_back(x);
    return r;
  };
  if (inst.explicit_edges) {
    ExplicitEdges ex{inst.m() * c, inst.n() * c, {}};
    for (auto [p, q] : edges)
      for (int a = 0; a < c; ++a)
        for (int b = 0; b < c; ++b)
          ex.edges.emplace_back(p * c + a, q * c + b);
    std::sort(ex.edges.begin(), ex.edges.end());
    out.explicit_edges = std::move(ex);
    return out;
  }
  out.points_p = blow(inst.points_p);
  out.sets_q = blow(inst.sets_q);
  out.points_q = blow(inst.points_q);
  out.sets_p = blow(inst.sets_p);
  return out;
}

namespace detail {

inline Rational urat(Rng& rng, double lo = 0.0, double hi = 1.0) { return rational_from_double(rng.uniform(lo, hi)); }

/// Closed halfplane bounded by the line through a and b, with a random side.
inline GeomSet halfplane_through(const Point& a, const Point& b, bool flip) {
  Rational na = b[1] - a[1], nb = a[0] - b[0];
  if (na == 0 && nb == 0)
    na = 1;
  Rational c = na * a[0] + nb * a[1];
  if (flip) {
    na = -na;
    nb = -nb;
    c = -c;
  }
  return GeomSet::halfplane(na, nb, c);
}

}  // namespace detail

/// Built-in random families: "halfplanes", "lines", "disks", "halfspaces" (3-space).
/// Points are uniform in the unit box except for "lines", whose points are drawn from a
/// g x g lattice in the unit square (g = ceil(sqrt(m)) + 1) and whose lines pass through
/// two drawn points, so that incidences actually occur. Halfplanes pass through two
/// uniform points with a random side; disk radii are uniform in [0.05, 0.5].
inline IncidenceInstance gen_random(const std::string& family, int m, int n, std::uint64_t seed) {
  if (m < 0 || n < 0)
    throw ContractViolation("negative instance size");
  Rng rng(seed);
  IncidenceInstance inst;
  inst.d1 = inst.d2 = 2;
  if (family == "halfplanes") {
    for (int i = 0; i < m; ++i)
      inst.points_p.emplace_back(std::vector<Rational>{detail::urat(rng), detail::urat(rng)});
    for (int j = 0; j < n; ++j) {
      Point a(std::vector<Rational>{detail::urat(rng), detail::urat(rng)});
      Point b(std::vector<Rational>{detail::urat(rng), detail::urat(rng)});
      inst.sets_q.push_back(detail::halfplane_through(a, b, rng.coin()));
    }
  } else if (family == "lines") {
    int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(std::max(m, 1))))) + 1;
    auto lattice = [&] {
      Rational x = rational_from_int(static_cast<std::int64_t>(rng.below(g)));
      Rational y = rational_from_int(static_cast<std::int64_t>(rng.below(g)));
      x /= g;
      y /= g;
      return Point(std::vector<Rational>{x, y});
    };
    for (int i = 0; i < m; ++i)
      inst.points_p.push_back(lattice());
    for (int j = 0; j < n; ++j) {
      Point a = m > 0 ? inst.points_p[rng.below(m)] : lattice();
      Point b = m > 0 ? inst.points_p[rng.below(m)] : lattice();
      for (int tries = 0; a == b && tries < 16; ++tries)
        b = lattice();
      if (a == b)
        b = Point(std::vector<Rational>{a[0] + 1, a[1]});
      Rational na = b[1] - a[1], nb = a[0] - b[0];
      inst.sets_q.push_back(GeomSet::line(na, nb, na * a[0] + nb * a[1]));
    }
  } else if (family == "disks") {
    for (int i = 0; i < m; ++i)
      inst.points_p.emplace_back(std::vector<Rational>{detail::urat(rng), detail::urat(rng)});
    for (int j = 0; j < n; ++j) {
      Point c(std::vector<Rational>{detail::urat(rng), detail::urat(rng)});
      inst.sets_q.push_back(GeomSet::disk(c, detail::urat(rng, 0.05, 0.5)));
    }
  } else if (family == "halfspaces") {
    inst.d1 = inst.d2 = 3;
    for (int i = 0; i < m; ++i)
      inst.points_p.emplace_back(std::vector<Rational>{detail::urat(rng), detail::urat(rng), detail::urat(rng)});
    for (int j = 0; j < n; ++j) {
      Rational a = detail::urat(rng, -1, 1), b = detail::urat(rng, -1, 1), c = detail::urat(rng, -1, 1);
      if (a == 0 && b == 0 && c == 0)
        c = 1;
      Rational x = detail::urat(rng), y = detail::urat(rng), z = detail::urat(rng);
      inst.sets_q.push_back(GeomSet::halfspace3(a, b, c, a * x + b * y + c * z));
    }
  } else {
    throw ContractViolation("unknown random family: " + family);
  }
  return inst;
}

/// Points on the parabola y = x^2 (x uniform in [-1,1]) against random halfplanes
/// through two uniform points of [-1,1] x [0,1].
inline IncidenceInstance gen_curve_restricted(int m, int n, std::uint64_t seed) {
  if (m < 0 || n < 0)
    throw ContractViolation("negative instance size");
  Rng rng(seed);
  IncidenceInstance inst;
  inst.d1 = inst.d2 = 2;
  inst.p_on_parabola = true;
  for (int i = 0; i < m; ++i) {
    Rational x = detail::urat(rng, -1, 1);
    Rational y = x * x;
    inst.points_p.emplace_back(std::vector<Rational>{x, y});
  }
  for (int j = 0; j < n; ++j) {
    Point a(std::vector<Rational>{detail::urat(rng, -1, 1), detail::urat(rng)});
    Point b(std::vector<Rational>{detail::urat(rng, -1, 1), detail::urat(rng)});
    inst.sets_q.push_back(detail::halfplane_through(a, b, rng.coin()));
  }
  return inst;
}

/// Random explicit bipartite graph with independent edge probability `density`.
inline IncidenceInstance gen_random_explicit(int m, int n, double density, std::uint64_t seed) {
  Rng rng(seed);
  ExplicitEdges ex{m, n, {}};
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < n; ++q)
      if (rng.uniform() < density)
        ex.edges.emplace_back(p, q);
  IncidenceInstance inst;
  inst.explicit_edges = std::move(ex);
  return inst;
}

}  // namespace sacover

#endif  // SACOVER_GENERATORS_HPP
