#ifndef SACOVER_SCAN_HPP
#define SACOVER_SCAN_HPP

#include <sacover/cover.hpp>
#include <sacover/extremal.hpp>
#include <sacover/generators.hpp>
#include <sacover/hypergraph.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace sacover {

/// Worker count from SACOVER_THREADS (default 1).
inline int thread_count() {
  const char* v = std::getenv("SACOVER_THREADS");
  if (!v)
    return 1;
  int t = std::atoi(v);
  return t < 1 ? 1 : std::min(t, 64);
}

/// Runs f(i) for i in [0, n) on up to `threads` workers. Results must be stored by index.
template <class F>
void parallel_for(int n, int threads, F&& f) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i)
      f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex mu;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure)
            failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool)
    th.join();
  if (failure)
    std::rethrow_exception(failure);
}

inline const std::vector<std::string>& scan_families() {
  static const std::vector<std::string> f{"st-grid", "halfplanes", "lines", "disks", "halfspaces", "curve"};
  return f;
}

/// Instance for one scan point: st-grid uses size as k, the others m = n = size.
inline IncidenceInstance scan_instance(const std::string& family, int size, std::uint64_t seed) {
  if (family == "st-grid")
    return gen_st_grid(size);
  if (family == "curve")
    return gen_curve_restricted(size, size, seed);
  return gen_random(family, size, size, seed);
}

inline Envelope scan_envelope(const std::string& family) {
  if (family == "halfspaces")
    return Envelope{{3, 3}, 0.0};
  if (family == "curve")
    return Envelope{{1, 2}, 0.0};
  return Envelope{{2, 2}, 0.0};
}

struct ScanRow {
  std::string family;
  int size = 0;
  int m = 0;
  int n = 0;
  std::int64_t edges = 0;
  std::int64_t cost = 0;
  std::int64_t raw_cost = 0;
  double envelope = 0.0;
  double ratio = 0.0;
  double elapsed_ms = 0.0;
  std::uint64_t seed = 0;
  bool verified = false;
};

struct ScanOptions {
  std::string family = "st-grid";
  std::vector<int> sizes;
  std::uint64_t seed = 1;
  CoverConfig cover{};
  bool merge = true;
  int threads = 1;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  std::optional<FitResult> fit;
  std::optional<FitResult> raw_fit;
};

inline ScanResult run_scan(const ScanOptions& opt) {
  if (std::find(scan_families().begin(), scan_families().end(), opt.family) == scan_families().end())
    throw ContractViolation("unknown scan family: " + opt.family);
  ScanResult res;
  res.rows.resize(opt.sizes.size());
  const Envelope env = scan_envelope(opt.family);
  parallel_for(static_cast<int>(opt.sizes.size()), opt.threads, [&](int i) {
    ScanRow row;
    row.family = opt.family;
    row.size = opt.sizes[i];
    row.seed = opt.seed + static_cast<std::uint64_t>(i);
    auto t0 = std::chrono::steady_clock::now();
    auto inst = scan_instance(opt.family, row.size, row.seed);
    auto edges = edge_set(inst);
    auto raw = build_cover(inst, opt.cover);
    auto cover = opt.merge ? merge_pass(raw) : raw;
    row.verified = verify_cover(inst, cover, &edges).ok;
    row.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    row.m = inst.m();
    row.n = inst.n();
    row.edges = static_cast<std::int64_t>(edges.size());
    row.cost = cover.cost_j;
    row.raw_cost = raw.cost_j;
    row.envelope = env.value(std::max(row.m, 1), std::max(row.n, 1));
    row.ratio = row.cost / row.envelope;
    res.rows[i] = row;
  });
  std::vector<SeriesPoint> series, raw_series;
  for (const auto& r : res.rows)
    if (r.cost > 0) {
      series.push_back({static_cast<double>(r.m), static_cast<double>(r.n), static_cast<double>(r.cost)});
      raw_series.push_back({static_cast<double>(r.m), static_cast<double>(r.n), static_cast<double>(r.raw_cost)});
    }
  try {
    res.fit = exponent_fit(series, env);
    res.raw_fit = exponent_fit(raw_series, env);
  } catch (const Refusal&) {
  }
  return res;
}

inline std::string format_double(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

/// CSV rows followed by a fit block of '#' lines. Timing can be blanked for byte comparisons.
inline std::string scan_csv(const ScanResult& res, bool timing = true) {
  std::ostringstream out;
  out << "family,size,m,n,edges,costJ,envelope,ratio,elapsed_ms,seed\n";
  for (const auto& r : res.rows)
    out << r.family << ',' << r.size << ',' << r.m << ',' << r.n << ',' << r.edges << ',' << r.cost << ','
        << format_double(r.envelope) << ',' << format_double(r.ratio) << ','
        << (timing ? format_double(r.elapsed_ms) : std::string("-")) << ',' << r.seed << '\n';
  if (res.fit) {
    out << "# fit,slope," << format_double(res.fit->slope) << '\n';
    out << "# fit,constant," << format_double(res.fit->constant) << '\n';
    out << "# fit,raw_slope," << format_double(res.raw_fit->slope) << '\n';
  } else {
    out << "# fit,unavailable\n";
  }
  return out.str();
}

}  // namespace sacover

#endif  // SACOVER_SCAN_HPP
