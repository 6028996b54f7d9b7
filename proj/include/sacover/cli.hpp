#ifndef SACOVER_CLI_HPP
#define SACOVER_CLI_HPP

#include <sacover/io.hpp>
#include <sacover/oracle.hpp>
#include <sacover/scan.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace sacover {

/// Stable exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_verify_failed = 1,
  exit_usage = 2,
  exit_internal = 3,  // a freshly built cover failed verification
  exit_refused = 4,
};

namespace detail {

inline SideRule side_from_string(const std::string& s) {
  if (s == "auto")
    return SideRule::Auto;
  if (s == "p")
    return SideRule::AlwaysP;
  if (s == "q")
    return SideRule::AlwaysQ;
  if (s == "regime")
    return SideRule::Regime;
  throw ParseError("unknown side rule: " + s);
}

/// --config takes a file path or an inline JSON object.
inline void apply_config(const std::string& spec, CoverConfig& cfg) {
  if (spec.empty())
    return;
  Json j;
  if (spec.front() == '{') {
    try {
      j = Json::parse(spec);
    } catch (const Json::exception& e) {
      throw ParseError(std::string("bad inline config: ") + e.what());
    }
  } else {
    j = read_json_file(spec);
  }
  if (!j.is_object())
    throw ParseError("config must be a JSON object");
  if (j.contains("r"))
    cfg.r = j["r"].get<int>();
  if (j.contains("baseThreshold"))
    cfg.base_threshold = j["baseThreshold"].get<int>();
  if (j.contains("maxDepth"))
    cfg.max_depth = j["maxDepth"].get<int>();
  if (j.contains("side"))
    cfg.side_rule = side_from_string(j["side"].get<std::string>());
  if (j.contains("regimeExponent"))
    cfg.regime_exponent = j["regimeExponent"].get<double>();
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_text_file(path, text);
}

template <class T>
std::vector<T> split_list(const std::string& s) {
  std::vector<T> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T x;
    if (!(is >> x) || !is.eof())
      throw ParseError("bad list element: " + item);
    v.push_back(x);
  }
  return v;
}

/// "2..8" or "2,4,8".
inline std::vector<int> parse_sizes(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos)
    return split_list<int>(s);
  int lo = std::stoi(s.substr(0, dots)), hi = std::stoi(s.substr(dots + 2));
  if (lo > hi)
    throw ParseError("empty size range: " + s);
  std::vector<int> v;
  for (int k = lo; k <= hi; ++k)
    v.push_back(k);
  return v;
}

}  // namespace detail

/// Runs the tool on `args` (without the program name). Output goes to out/err.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sacover: biclique covers of semi-algebraic incidence graphs"};
  app.require_subcommand(1);

  // build
  std::string input, cfg_spec, out_path, side = "auto";
  int r = -1, base_threshold = -1, max_depth = -1;
  bool merge = false;
  auto* build = app.add_subcommand("build", "build a biclique cover for an instance");
  build->add_option("--input", input, "instance JSON")->required();
  build->add_option("--config", cfg_spec, "config JSON file or inline object");
  build->add_option("--r", r, "partition parameter");
  build->add_option("--base-threshold", base_threshold, "base case size (m + n)");
  build->add_option("--max-depth", max_depth, "recursion depth cap");
  build->add_option("--side", side, "auto|p|q|regime");
  build->add_option("--out", out_path, "output path (default stdout)");
  build->add_flag("--merge", merge, "run merge_pass on the result");

  // verify
  std::string instance_path, cover_path;
  auto* verify = app.add_subcommand("verify", "check a cover against an instance");
  verify->add_option("--instance", instance_path)->required();
  verify->add_option("--cover", cover_path)->required();

  // scan
  std::string family = "st-grid", sizes = "2..8";
  std::uint64_t seed = 1;
  bool no_merge = false, no_timing = false;
  auto* scan = app.add_subcommand("scan", "build covers over a size series and fit the growth exponent");
  scan->add_option("--family", family, "st-grid|halfplanes|lines|disks|halfspaces|curve");
  scan->add_option("--sizes", sizes, "range a..b or list a,b,c");
  scan->add_option("--seed", seed);
  scan->add_option("--r", r);
  scan->add_option("--base-threshold", base_threshold);
  scan->add_option("--out", out_path);
  scan->add_flag("--no-merge", no_merge, "report the raw construction");
  scan->add_flag("--no-timing", no_timing, "write '-' in elapsed_ms");

  // oracle
  int edge_cap = 14;
  auto* oracle = app.add_subcommand("oracle", "exact minimum cover cost of a small explicit instance");
  oracle->add_option("--input", input)->required();
  oracle->add_option("--edge-cap", edge_cap, "refuse above this many edges");

  // hyper-build / hyper-verify
  auto* hbuild = app.add_subcommand("hyper-build", "build a cover of a k-partite hypergraph");
  hbuild->add_option("--input", input)->required();
  hbuild->add_option("--r", r);
  hbuild->add_option("--base-threshold", base_threshold);
  hbuild->add_option("--out", out_path);
  hbuild->add_flag("--merge", merge);
  auto* hverify = app.add_subcommand("hyper-verify", "check a hypergraph cover");
  hverify->add_option("--instance", instance_path)->required();
  hverify->add_option("--cover", cover_path)->required();

  // envelope
  std::string func = "E", dvec = "2,2", nvec = "8,8";
  double eps = 0.0, rscale = 2.0;
  int part = 0;
  auto* envelope = app.add_subcommand("envelope", "evaluate E, F, F* or a lemma check");
  envelope->add_option("--func", func, "E|F|Fstar|A1|A1-system|A2|A3");
  envelope->add_option("--d", dvec, "dimension vector, comma separated");
  envelope->add_option("--n", nvec, "size vector, comma separated");
  envelope->add_option("--eps", eps);
  envelope->add_option("--scale", rscale, "r for the A1 scaling identity");
  envelope->add_option("--part", part, "zero-based part index for A2");

  // generate
  std::string relation, sizes_list;
  int m = 0, n = 0, size = 3, clone = 1;
  double density = 0.3;
  bool do_transpose = false;
  auto* generate = app.add_subcommand("generate", "write a generated instance");
  generate->add_option("--family", family, "st-grid|halfplanes|lines|disks|halfspaces|curve|explicit|hyper");
  generate->add_option("--size", size, "k for st-grid");
  generate->add_option("--m", m);
  generate->add_option("--n", n);
  generate->add_option("--density", density, "edge probability for explicit");
  generate->add_option("--relation", relation, "hyper relation name");
  generate->add_option("--sizes", sizes_list, "hyper part sizes, comma separated");
  generate->add_option("--clone", clone, "blow up each vertex c times");
  generate->add_flag("--transpose", do_transpose);
  generate->add_option("--seed", seed);
  generate->add_option("--out", out_path);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (*build) {
      auto inst = instance_from_json(read_json_file(input));
      CoverConfig cfg;
      detail::apply_config(cfg_spec, cfg);
      if (r != -1)
        cfg.r = r;
      if (base_threshold != -1)
        cfg.base_threshold = base_threshold;
      if (max_depth != -1)
        cfg.max_depth = max_depth;
      if (build->count("--side"))
        cfg.side_rule = detail::side_from_string(side);
      cfg.validate();
      auto edges = edge_set(inst);
      auto cover = build_cover(inst, cfg);
      if (merge)
        cover = merge_pass(std::move(cover));
      auto rep = verify_cover(inst, cover, &edges);
      if (!rep.ok) {
        err << "internal error: built cover failed verification\n" << dump(report_to_json(rep));
        return exit_internal;
      }
      detail::emit(dump(cover_to_json(cover)), out_path, out);
      return exit_ok;
    }
    if (*verify) {
      auto inst = instance_from_json(read_json_file(instance_path));
      auto cover = cover_from_json(read_json_file(cover_path));
      auto rep = verify_cover(inst, cover);
      out << dump(report_to_json(rep));
      return rep.ok ? exit_ok : exit_verify_failed;
    }
    if (*scan) {
      ScanOptions opt;
      opt.family = family;
      opt.sizes = detail::parse_sizes(sizes);
      opt.seed = seed;
      if (r != -1)
        opt.cover.r = r;
      if (base_threshold != -1)
        opt.cover.base_threshold = base_threshold;
      opt.cover.validate();
      opt.merge = !no_merge;
      opt.threads = thread_count();
      if (std::find(scan_families().begin(), scan_families().end(), family) == scan_families().end()) {
        err << "error: unknown generator: " << family << "\n";
        return exit_usage;
      }
      auto res = run_scan(opt);
      for (const auto& row : res.rows)
        if (!row.verified) {
          err << "internal error: scan cover failed verification at size " << row.size << "\n";
          return exit_internal;
        }
      detail::emit(scan_csv(res, !no_timing), out_path, out);
      return exit_ok;
    }
    if (*oracle) {
      auto inst = instance_from_json(read_json_file(input));
      auto res = min_cover_cost(inst, edge_cap);
      Json j;
      j["schemaVersion"] = schema_version;
      j["cost"] = res.cost;
      j["witness"] = cover_to_json(res.witness);
      out << dump(j);
      return exit_ok;
    }
    if (*hbuild) {
      auto inst = hyper_instance_from_json(read_json_file(input));
      HyperConfig cfg;
      if (r != -1)
        cfg.r = r;
      if (base_threshold != -1)
        cfg.base_threshold = base_threshold;
      cfg.validate();
      auto cover = build_hyper_cover(inst, cfg);
      if (merge)
        cover = hyper_merge_pass(std::move(cover));
      auto rep = verify_hyper_cover(inst, cover);
      if (!rep.ok) {
        err << "internal error: built hyper cover failed verification\n" << dump(hyper_report_to_json(rep));
        return exit_internal;
      }
      detail::emit(dump(hyper_cover_to_json(cover)), out_path, out);
      return exit_ok;
    }
    if (*hverify) {
      auto inst = hyper_instance_from_json(read_json_file(instance_path));
      auto cover = hyper_cover_from_json(read_json_file(cover_path));
      auto rep = verify_hyper_cover(inst, cover);
      out << dump(hyper_report_to_json(rep));
      return rep.ok ? exit_ok : exit_verify_failed;
    }
    if (*envelope) {
      auto d = detail::split_list<int>(dvec);
      auto nv = detail::split_list<double>(nvec);
      Json j;
      j["func"] = func;
      j["d"] = d;
      j["n"] = nv;
      j["eps"] = eps;
      if (func == "E") {
        j["value"] = E_func(d, nv);
      } else if (func == "F") {
        j["value"] = F_func(d, nv, eps);
      } else if (func == "Fstar") {
        j["value"] = Fstar_func(d, nv, eps);
      } else if (func == "A1") {
        auto res = check_lemma_A1(d, rscale, nv);
        j["lhs"] = res.lhs;
        j["rhs"] = res.rhs;
        j["residual"] = res.residual;
        j["matrixResidual"] = res.matrix_residual;
      } else if (func == "A1-system") {
        j["residual"] = lemma_A1_system_residual(d);
      } else if (func == "A2") {
        auto res = check_lemma_A2(d, part, nv, eps);
        j["status"] = to_string(res.status);
        j["lhs"] = res.lhs;
        j["rhs"] = res.rhs;
      } else if (func == "A3") {
        auto res = check_lemma_A3(d, nv, eps);
        j["precondition"] = res.precondition;
        j["ratio"] = res.ratio;
      } else {
        err << "error: unknown function: " << func << "\n";
        return exit_usage;
      }
      out << dump(j);
      return exit_ok;
    }
    if (*generate) {
      Json j;
      if (family == "hyper") {
        auto sz = detail::split_list<int>(sizes_list);
        j = hyper_instance_to_json(gen_hyper_random(relation, sz, seed));
      } else {
        IncidenceInstance inst;
        if (family == "st-grid")
          inst = gen_st_grid(size);
        else if (family == "explicit")
          inst = gen_random_explicit(m, n, density, seed);
        else if (family == "curve")
          inst = gen_curve_restricted(m, n, seed);
        else
          inst = gen_random(family, m, n, seed);
        if (clone > 1)
          inst = gen_clone(inst, clone);
        if (do_transpose)
          inst = transpose(inst);
        j = instance_to_json(inst);
      }
      detail::emit(dump(j), out_path, out);
      return exit_ok;
    }
  } catch (const Refusal& e) {
    err << "refused: " << e.what() << "\n";
    return exit_refused;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace sacover

#endif  // SACOVER_CLI_HPP
