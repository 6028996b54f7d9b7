#ifndef SACOVER_EXTREMAL_HPP
#define SACOVER_EXTREMAL_HPP

#include <sacover/cover.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace sacover {

// ---------------------------------------------------------------------------
// Envelope functions E, F, F*.

/// alpha_i = 1 - (1/(d_i-1)) / (k - 1 + sum_l 1/(d_l-1)).
inline std::vector<double> envelope_alphas(const std::vector<int>& d) {
  const std::size_t k = d.size();
  if (k == 0)
    throw ContractViolation("dimension vector is empty");
  double s = static_cast<double>(k) - 1.0;
  for (int di : d) {
    if (di < 1)
      throw ContractViolation("dimensions must be positive");
    if (di == 1)
      throw DomainError("E is undefined for a dimension equal to 1");
    s += 1.0 / (di - 1);
  }
  std::vector<double> a(k);
  for (std::size_t i = 0; i < k; ++i)
    a[i] = 1.0 - (1.0 / (d[i] - 1)) / s;
  return a;
}

namespace detail {

inline void check_vectors(const std::vector<int>& d, const std::vector<double>& n) {
  if (d.size() != n.size())
    throw ContractViolation("dimension and size vectors differ in length");
  if (d.size() < 2)
    throw ContractViolation("need at least two parts");
  for (double x : n)
    if (!(x >= 1.0) || !std::isfinite(x))
      throw ContractViolation("part sizes must be finite and at least 1");
  envelope_alphas(d);
}

// E on a sub-vector; a single part contributes 1.
inline double E_sub(const std::vector<int>& d, const std::vector<double>& n) {
  if (d.size() == 1)
    return 1.0;
  auto a = envelope_alphas(d);
  double v = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    v *= std::pow(n[i], a[i]);
  return v;
}

inline double E_of_mask(const std::vector<int>& d, const std::vector<double>& n, unsigned mask) {
  std::vector<int> ds;
  std::vector<double> ns;
  for (std::size_t i = 0; i < d.size(); ++i)
    if ((mask >> i) & 1u) {
      ds.push_back(d[i]);
      ns.push_back(n[i]);
    }
  return E_sub(ds, ns);
}

}  // namespace detail

inline double E_func(const std::vector<int>& d, const std::vector<double>& n) {
  detail::check_vectors(d, n);
  return detail::E_sub(d, n);
}

/// Sum over |I| >= 2 of E_I * prod_{I} n^eps * prod_{not I} n, plus (sum 1/n_i) prod n_i.
inline double F_func(const std::vector<int>& d, const std::vector<double>& n, double eps) {
  detail::check_vectors(d, n);
  const std::size_t k = d.size();
  double total = 0.0;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    if (std::popcount(mask) < 2)
      continue;
    double t = detail::E_of_mask(d, n, mask);
    for (std::size_t i = 0; i < k; ++i)
      t *= ((mask >> i) & 1u) ? std::pow(n[i], eps) : n[i];
    total += t;
  }
  double prod = 1.0, harm = 0.0;
  for (double x : n) {
    prod *= x;
    harm += 1.0 / x;
  }
  return total + harm * prod;
}

/// prod n_i^eps * sum over nonempty I of E_I * prod_{not I} n_i, with E of a singleton equal to 1.
inline double Fstar_func(const std::vector<int>& d, const std::vector<double>& n, double eps) {
  detail::check_vectors(d, n);
  const std::size_t k = d.size();
  double total = 0.0;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    double t = detail::E_of_mask(d, n, mask);
    for (std::size_t i = 0; i < k; ++i)
      if (!((mask >> i) & 1u))
        t *= n[i];
    total += t;
  }
  for (double x : n)
    total *= std::pow(x, eps);
  return total;
}

/// Exponents of m and n in the bipartite envelope, ((e1e2-e2)/(e1e2-1), (e1e2-e1)/(e1e2-1)).
/// Also covers e1 = 1 or e2 = 1 (e.g. points on a curve), where the k-part formula has a pole.
inline std::pair<double, double> bipartite_exponents(int e1, int e2) {
  if (e1 < 1 || e2 < 1)
    throw ContractViolation("dimensions must be positive");
  const int p = e1 * e2;
  if (p == 1)
    throw DomainError("bipartite exponents undefined for e1 = e2 = 1");
  return {static_cast<double>(p - e2) / (p - 1), static_cast<double>(p - e1) / (p - 1)};
}

/// The cost envelope of a bipartite instance: m^a n^b + m + n.
struct Envelope {
  std::vector<int> d{2, 2};
  double epsilon = 0.0;

  double value(double m, double n) const {
    if (d.size() != 2)
      throw ContractViolation("bipartite envelope needs two dimensions");
    auto [a, b] = bipartite_exponents(d[0], d[1]);
    return std::pow(m * n, epsilon) * (std::pow(m, a) * std::pow(n, b) + m + n);
  }
};

// ---------------------------------------------------------------------------
// Appendix identities.

struct LemmaA1Result {
  double residual = 0.0;         // |lhs - rhs| / rhs of the scaling identity
  double matrix_residual = 0.0;  // max_i |alpha_i - sum_{j != i} d_j (1 - alpha_j)|
  double lhs = 0.0;
  double rhs = 0.0;
};

/// r^{d_1+...+d_{k-1}} E(n_1/r^{d_1}, ..., n_{k-1}/r^{d_{k-1}}, n_k/r) against E(n).
inline LemmaA1Result check_lemma_A1(const std::vector<int>& d, double r, const std::vector<double>& n) {
  detail::check_vectors(d, n);
  if (!(r > 0.0))
    throw ContractViolation("r must be positive");
  const std::size_t k = d.size();
  auto a = envelope_alphas(d);
  LemmaA1Result res;
  // Scaled arguments may drop below 1; the identity is about positive reals.
  double lhs = 1.0, scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double e = i + 1 < k ? d[i] : 1.0;
    lhs *= std::pow(n[i] / std::pow(r, e), a[i]);
    if (i + 1 < k)
      scale += d[i];
  }
  lhs *= std::pow(r, scale);
  res.lhs = lhs;
  res.rhs = E_func(d, n);
  res.residual = std::abs(res.lhs - res.rhs) / res.rhs;
  for (std::size_t i = 0; i < k; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i)
        s += d[j] * (1.0 - a[j]);
    res.matrix_residual = std::max(res.matrix_residual, std::abs(a[i] - s));
  }
  return res;
}

/// Applies the printed linear system to alpha and returns max |(M alpha)_j - (sum d - d_j)|.
inline double lemma_A1_system_residual(const std::vector<int>& d) {
  auto a = envelope_alphas(d);
  const std::size_t k = d.size();
  const double total = std::accumulate(d.begin(), d.end(), 0.0);
  double worst = 0.0;
  for (std::size_t row = 0; row < k; ++row) {
    double s = 0.0;
    for (std::size_t col = 0; col < k; ++col)
      s += (row == col ? 1.0 : d[col]) * a[col];
    worst = std::max(worst, std::abs(s - (total - d[row])));
  }
  return worst;
}

enum class LemmaStatus { Holds, Fails, HypothesisNotMet };

inline const char* to_string(LemmaStatus s) {
  switch (s) {
  case LemmaStatus::Holds:
    return "holds";
  case LemmaStatus::Fails:
    return "fails";
  case LemmaStatus::HypothesisNotMet:
    return "hypothesis-not-met";
  }
  return "?";
}

struct LemmaA2Result {
  LemmaStatus status = LemmaStatus::HypothesisNotMet;
  double lhs = 0.0;  // F with d_i decremented
  double rhs = 0.0;  // F
};

/// F_{d - e_i}(n) <= F_d(n) when n_i >= n_j^{1/d_j} for all j != i. `i` is zero-based.
inline LemmaA2Result check_lemma_A2(const std::vector<int>& d, int i, const std::vector<double>& n, double eps) {
  detail::check_vectors(d, n);
  if (i < 0 || i >= static_cast<int>(d.size()))
    throw ContractViolation("part index out of range");
  if (d[i] < 3)
    throw ContractViolation("lemma A.2 needs d_i >= 3");
  LemmaA2Result res;
  for (std::size_t j = 0; j < d.size(); ++j)
    if (static_cast<int>(j) != i && !(n[i] >= std::pow(n[j], 1.0 / d[j])))
      return res;
  auto dm = d;
  --dm[i];
  res.lhs = F_func(dm, n, eps);
  res.rhs = F_func(d, n, eps);
  res.status = res.lhs <= res.rhs * (1.0 + 1e-12) ? LemmaStatus::Holds : LemmaStatus::Fails;
  return res;
}

struct LemmaA3Result {
  bool precondition = false;
  double ratio = 0.0;  // E * prod n^eps / F
};

/// Dominance ratio of E * prod n_i^eps inside F, gated on n_i < n_j^{d_i} for distinct i, j.
inline LemmaA3Result check_lemma_A3(const std::vector<int>& d, const std::vector<double>& n, double eps) {
  detail::check_vectors(d, n);
  LemmaA3Result res;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      if (i != j && !(n[i] < std::pow(n[j], d[i])))
        return res;
  res.precondition = true;
  double e = E_func(d, n);
  for (double x : n)
    e *= std::pow(x, eps);
  res.ratio = e / F_func(d, n, eps);
  return res;
}

// ---------------------------------------------------------------------------
// Zarankiewicz-side checks.

/// True iff no s vertices of P have u common neighbors. Exhaustive over s-subsets,
/// pruned as soon as the running common neighborhood drops below u.
inline bool kst_free_check(const std::vector<Edge>& edges, int m, int n, int s, int u) {
  if (s < 1 || u < 1)
    throw ContractViolation("s and u must be positive");
  if (s > 8 || u > 8 || m > 2048 || n > 2048)
    throw Refusal("K_{s,u} check is limited to s, u <= 8 and sides <= 2048");
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  using Bits = std::vector<std::uint64_t>;
  std::vector<Bits> nb(static_cast<std::size_t>(m), Bits(words, 0));
  for (auto [p, q] : edges) {
    if (p < 0 || p >= m || q < 0 || q >= n)
      throw ContractViolation("edge index out of range");
    nb[p][q / 64] |= std::uint64_t{1} << (q % 64);
  }
  auto count = [](const Bits& b) {
    int c = 0;
    for (auto w : b)
      c += std::popcount(w);
    return c;
  };
  std::vector<int> cand;
  for (int p = 0; p < m; ++p)
    if (count(nb[p]) >= u)
      cand.push_back(p);
  auto dfs = [&](auto&& self, std::size_t start, int depth, const Bits& common) -> bool {
    if (depth == s)
      return true;
    Bits next(words);
    for (std::size_t i = start; i < cand.size(); ++i) {
      for (std::size_t w = 0; w < words; ++w)
        next[w] = common[w] & nb[cand[i]][w];
      if (count(next) >= u && self(self, i + 1, depth + 1, next))
        return true;
    }
    return false;
  };
  return !dfs(dfs, 0, 0, Bits(words, ~std::uint64_t{0}));
}

struct EdgeBoundReport {
  bool ok = true;
  std::int64_t edges = 0;
  std::int64_t cost = 0;
  std::int64_t bound = 0;  // (s+u) * cost
  std::int64_t slack = 0;  // bound - edges
  std::vector<int> violating_blocks;
};

/// Checks |A_i||B_i| <= (s+u)(|A_i|+|B_i|) per block and |E| <= (s+u) costJ overall.
inline EdgeBoundReport edge_bound_check(std::int64_t edge_count, const BicliqueCover& cover, int s, int u) {
  EdgeBoundReport rep;
  rep.edges = edge_count;
  rep.cost = cover.recomputed_cost();
  const std::int64_t w = s + u;
  for (std::size_t i = 0; i < cover.blocks.size(); ++i)
    if (cover.blocks[i].edge_count() > w * cover.blocks[i].cost())
      rep.violating_blocks.push_back(static_cast<int>(i));
  rep.bound = w * rep.cost;
  rep.slack = rep.bound - rep.edges;
  rep.ok = rep.violating_blocks.empty() && rep.edges <= rep.bound;
  return rep;
}

struct DenseBiclique {
  std::vector<int> a;
  std::vector<int> b;
  Rational ratio;  // |A||B| / (|A|+|B|)
  Rational bound;  // |E| / costJ
  bool meets_bound = false;
};

/// The block maximizing |A||B|/(|A|+|B|); by averaging its ratio is at least |E|/costJ.
inline DenseBiclique extract_dense_biclique(std::int64_t edge_count, const BicliqueCover& cover) {
  if (cover.blocks.empty())
    throw Refusal("cannot extract a biclique from an empty cover");
  DenseBiclique best;
  bool first = true;
  for (const auto& blk : cover.blocks) {
    if (blk.a.empty() || blk.b.empty())
      continue;
    Rational r(rational_from_int(blk.edge_count()));
    r /= rational_from_int(blk.cost());
    if (first || r > best.ratio) {
      best.a = blk.a;
      best.b = blk.b;
      best.ratio = r;
      first = false;
    }
  }
  if (first)
    throw Refusal("cover has no nonempty block");
  best.bound = rational_from_int(edge_count);
  best.bound /= rational_from_int(cover.recomputed_cost());
  best.meets_bound = best.ratio >= best.bound;
  return best;
}

// ---------------------------------------------------------------------------
// Fitting.

struct SeriesPoint {
  double m = 0;
  double n = 0;
  double cost = 0;
};

struct FitResult {
  double slope = 0.0;
  double constant = 0.0;  // exp(intercept)
  std::vector<double> residuals;
};

/// Least squares of log y on log x.
inline FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Refusal("fit needs at least two paired values");
  const std::size_t k = x.size();
  std::vector<double> lx(k), ly(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(x[i] > 0) || !(y[i] > 0))
      throw Refusal("fit values must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / k;
  double my = std::accumulate(ly.begin(), ly.end(), 0.0) / k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 1e-18)
    throw Refusal("degenerate series: all envelope values coincide");
  FitResult f;
  f.slope = sxy / sxx;
  double intercept = my - f.slope * mx;
  f.constant = std::exp(intercept);
  for (std::size_t i = 0; i < k; ++i)
    f.residuals.push_back(ly[i] - (intercept + f.slope * lx[i]));
  return f;
}

/// Fits log costJ against log(envelope(m, n)); slope near 1 means the growth matches.
inline FitResult exponent_fit(const std::vector<SeriesPoint>& series, const Envelope& model) {
  if (series.size() < 4)
    throw Refusal("exponent fit needs at least 4 series points");
  std::vector<double> x, y;
  for (const auto& s : series) {
    x.push_back(model.value(s.m, s.n));
    y.push_back(s.cost);
  }
  return fit_loglog(x, y);
}

}  // namespace sacover

#endif  // SACOVER_EXTREMAL_HPP
