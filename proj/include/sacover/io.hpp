#ifndef SACOVER_IO_HPP
#define SACOVER_IO_HPP

#include <sacover/cover.hpp>
#include <sacover/hypergraph.hpp>

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace sacover {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

// ---------------------------------------------------------------------------
// Numbers: integers stay integers, dyadic values become JSON doubles (exact round trip),
// anything else is written as a "p/q" string. Reading accepts numbers, "p/q" and decimal
// strings; JSON doubles are taken at their exact binary value.

inline Json rational_to_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p())
    return Json(static_cast<std::int64_t>(q.get_num().get_si()));
  if (exactly_double(q))
    return Json(q.get_d());
  return Json(to_string(q));
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer())
    return rational_from_int(j.get<std::int64_t>());
  if (j.is_number_float()) {
    double d = j.get<double>();
    if (!std::isfinite(d))
      throw ParseError("non-finite number");
    return rational_from_double(d);
  }
  if (j.is_string())
    return parse_rational(j.get<std::string>());
  throw ParseError("expected a number or rational string");
}

namespace detail {

inline const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline int need_int(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_number_integer())
    throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

inline std::vector<int> int_list(const Json& j) {
  if (!j.is_array())
    throw ParseError("expected an array of integers");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer())
      throw ParseError("expected an integer");
    out.push_back(x.get<int>());
  }
  return out;
}

inline Json int_list_json(const std::vector<int>& v) {
  Json a = Json::array();
  for (int x : v)
    a.push_back(x);
  return a;
}

}  // namespace detail

inline Json point_to_json(const Point& p) {
  Json a = Json::array();
  for (const auto& c : p.coords())
    a.push_back(rational_to_json(c));
  return a;
}

inline Point point_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("a point is a nonempty array of coordinates");
  std::vector<Rational> c;
  for (const auto& x : j)
    c.push_back(rational_from_json(x));
  return Point(std::move(c));
}

inline Json formula_to_json(const Formula& f) {
  switch (f.kind()) {
  case Formula::Kind::Const:
    return Json{{"op", "const"}, {"value", f.value()}};
  case Formula::Kind::Atom:
    return Json{{"op", "atom"}, {"index", f.index()}, {"nonNegative", f.value()}};
  case Formula::Kind::And:
  case Formula::Kind::Or: {
    Json args = Json::array();
    for (const auto& k : f.children())
      args.push_back(formula_to_json(k));
    return Json{{"op", f.kind() == Formula::Kind::And ? "and" : "or"}, {"args", args}};
  }
  }
  return Json();
}

inline Formula formula_from_json(const Json& j) {
  const Json& op = detail::need(j, "op");
  if (!op.is_string())
    throw ParseError("formula op must be a string");
  std::string o = op.get<std::string>();
  if (o == "const")
    return Formula::constant(detail::need(j, "value").get<bool>());
  if (o == "atom") {
    bool nonneg = j.contains("nonNegative") ? j.at("nonNegative").get<bool>() : true;
    return Formula::atom(detail::need_int(j, "index"), nonneg);
  }
  if (o == "and" || o == "or") {
    std::vector<Formula> kids;
    for (const auto& a : detail::need(j, "args"))
      kids.push_back(formula_from_json(a));
    return o == "and" ? Formula::all_of(std::move(kids)) : Formula::any_of(std::move(kids));
  }
  throw ParseError("unknown formula op: " + o);
}

inline Json polynomial_to_json(const Polynomial& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms())
    terms.push_back(Json{{"exp", detail::int_list_json(e)}, {"coef", rational_to_json(c)}});
  return Json{{"dim", f.dim()}, {"terms", terms}};
}

inline Polynomial polynomial_from_json(const Json& j, int dim) {
  Polynomial f(dim);
  for (const auto& t : detail::need(j, "terms"))
    f.add_term(detail::int_list(detail::need(t, "exp")), rational_from_json(detail::need(t, "coef")));
  return f;
}

inline Json set_to_json(const GeomSet& g) {
  const std::string kind = g.kind();
  const auto& shape = g.shape();
  Json j{{"type", kind}};
  if (auto* l = std::get_if<LinearSet>(&shape)) {
    if (kind == "halfplane" || kind == "line") {
      j["a"] = rational_to_json(l->normal[0]);
      j["b"] = rational_to_json(l->normal[1]);
      j["c"] = rational_to_json(l->rhs);
    } else if (kind == "halfspace3") {
      j["a"] = rational_to_json(l->normal[0]);
      j["b"] = rational_to_json(l->normal[1]);
      j["c"] = rational_to_json(l->normal[2]);
      j["e"] = rational_to_json(l->rhs);
    } else {
      Json n = Json::array();
      for (const auto& x : l->normal)
        n.push_back(rational_to_json(x));
      j["normal"] = n;
      j["rhs"] = rational_to_json(l->rhs);
      j["equality"] = l->equality;
    }
  } else if (auto* b = std::get_if<BallSet>(&shape)) {
    j["center"] = point_to_json(Point(b->center));
    j["radius"] = rational_to_json(b->radius);
  } else if (auto* s = std::get_if<GenericSet>(&shape)) {
    j["dim"] = s->dim;
    Json polys = Json::array();
    for (const auto& f : s->polys)
      polys.push_back(polynomial_to_json(f));
    j["polys"] = polys;
    j["formula"] = formula_to_json(s->formula);
  } else {
    const auto& c = std::get<ConstantSet>(shape);
    j["dim"] = c.dim;
    j["value"] = c.value;
  }
  return j;
}

inline GeomSet set_from_json(const Json& j, int complexity = 4) {
  auto num = [&](const char* k) { return rational_from_json(detail::need(j, k)); };
  const Json& t = detail::need(j, "type");
  if (!t.is_string())
    throw ParseError("set type must be a string");
  const std::string type = t.get<std::string>();
  try {
    if (type == "halfplane")
      return GeomSet::halfplane(num("a"), num("b"), num("c"));
    if (type == "line")
      return GeomSet::line(num("a"), num("b"), num("c"));
    if (type == "halfspace3")
      return GeomSet::halfspace3(num("a"), num("b"), num("c"), num("e"));
    if (type == "disk")
      return GeomSet::disk(point_from_json(detail::need(j, "center")), num("radius"));
    if (type == "linear") {
      std::vector<Rational> n;
      for (const auto& x : detail::need(j, "normal"))
        n.push_back(rational_from_json(x));
      bool eq = j.contains("equality") && j.at("equality").get<bool>();
      return GeomSet::linear(std::move(n), num("rhs"), eq);
    }
    if (type == "generic") {
      int dim = detail::need_int(j, "dim");
      if (dim < 1)
        throw ParseError("generic set dimension must be positive");
      std::vector<Polynomial> polys;
      for (const auto& p : detail::need(j, "polys"))
        polys.push_back(polynomial_from_json(p, dim));
      return GeomSet::generic(dim, std::move(polys), formula_from_json(detail::need(j, "formula")), complexity);
    }
    if (type == "constant")
      return GeomSet::constant(detail::need_int(j, "dim"), detail::need(j, "value").get<bool>());
  } catch (const ContractViolation& e) {
    throw ParseError(std::string("invalid ") + type + ": " + e.what());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid ") + type + ": " + e.what());
  }
  throw ParseError("unknown set type: " + type);
}

// ---------------------------------------------------------------------------
// Bipartite instances.

inline Json instance_to_json(const IncidenceInstance& inst) {
  Json j{{"schemaVersion", schema_version}, {"kind", "bipartite"}};
  if (inst.explicit_edges) {
    Json edges = Json::array();
    for (auto [p, q] : inst.explicit_edges->edges)
      edges.push_back(Json::array({p, q}));
    j["explicitEdges"] = Json{{"m", inst.explicit_edges->m}, {"n", inst.explicit_edges->n}, {"edges", edges}};
    return j;
  }
  j["d1"] = inst.d1;
  j["d2"] = inst.d2;
  j["descriptionComplexity"] = inst.description_complexity;
  auto pts = [](const std::vector<Point>& v) {
    Json a = Json::array();
    for (const auto& p : v)
      a.push_back(point_to_json(p));
    return a;
  };
  auto sets = [](const std::vector<GeomSet>& v) {
    Json a = Json::array();
    for (const auto& g : v)
      a.push_back(set_to_json(g));
    return a;
  };
  if (!inst.points_p.empty() || !inst.sets_q.empty()) {
    j["pointsP"] = pts(inst.points_p);
    j["setsQ"] = sets(inst.sets_q);
    if (inst.p_on_parabola)
      j["curveP"] = "parabola";
  }
  if (!inst.points_q.empty() || !inst.sets_p.empty()) {
    j["pointsQ"] = pts(inst.points_q);
    j["setsP"] = sets(inst.sets_p);
  }
  return j;
}

inline IncidenceInstance instance_from_json(const Json& j) {
  IncidenceInstance inst;
  try {
    if (j.contains("kind") && j.at("kind") != "bipartite")
      throw ParseError("expected a bipartite instance");
    if (j.contains("explicitEdges")) {
      const Json& ex = j.at("explicitEdges");
      ExplicitEdges e{detail::need_int(ex, "m"), detail::need_int(ex, "n"), {}};
      for (const auto& pr : detail::need(ex, "edges")) {
        auto v = detail::int_list(pr);
        if (v.size() != 2)
          throw ParseError("an edge is a [p, q] pair");
        e.edges.emplace_back(v[0], v[1]);
      }
      std::sort(e.edges.begin(), e.edges.end());
      e.edges.erase(std::unique(e.edges.begin(), e.edges.end()), e.edges.end());
      inst.explicit_edges = std::move(e);
    } else {
      inst.d1 = detail::need_int(j, "d1");
      inst.d2 = detail::need_int(j, "d2");
      if (j.contains("descriptionComplexity"))
        inst.description_complexity = detail::need_int(j, "descriptionComplexity");
      auto read_points = [&](const char* key, std::vector<Point>& out) {
        if (j.contains(key))
          for (const auto& p : j.at(key))
            out.push_back(point_from_json(p));
      };
      auto read_sets = [&](const char* key, std::vector<GeomSet>& out) {
        if (j.contains(key))
          for (const auto& s : j.at(key))
            out.push_back(set_from_json(s, inst.description_complexity));
      };
      read_points("pointsP", inst.points_p);
      read_sets("setsQ", inst.sets_q);
      read_points("pointsQ", inst.points_q);
      read_sets("setsP", inst.sets_p);
      if (j.contains("curveP")) {
        if (j.at("curveP") != "parabola")
          throw ParseError("curveP must be \"parabola\"");
        inst.p_on_parabola = true;
      }
      bool pv = !inst.points_p.empty() && !inst.sets_q.empty();
      bool qv = !inst.points_q.empty() && !inst.sets_p.empty();
      bool any = !inst.points_p.empty() || !inst.sets_q.empty() || !inst.points_q.empty() || !inst.sets_p.empty();
      if (any && !pv && !qv)
        throw ParseError("a geometric instance needs points with the opposite side's sets");
    }
    validate(inst);
  } catch (const ContractViolation& e) {
    throw ParseError(e.what());
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Covers and reports.

inline Json cover_to_json(const BicliqueCover& c) {
  Json blocks = Json::array();
  for (const auto& b : c.blocks)
    blocks.push_back(Json{{"A", detail::int_list_json(b.a)}, {"B", detail::int_list_json(b.b)}, {"tag", to_string(b.tag)}});
  return Json{{"schemaVersion", schema_version}, {"blocks", blocks}, {"costJ", c.cost_j}};
}

inline BlockTag tag_from_string(const std::string& s) {
  if (s == "contains")
    return BlockTag::Contains;
  if (s == "base")
    return BlockTag::Base;
  if (s == "boundary")
    return BlockTag::Boundary;
  throw ParseError("unknown block tag: " + s);
}

/// Reads a cover as written; costJ is kept as stored so that verification can catch a bad one.
inline BicliqueCover cover_from_json(const Json& j) {
  BicliqueCover c;
  try {
    for (const auto& b : detail::need(j, "blocks")) {
      Block blk;
      blk.a = detail::int_list(detail::need(b, "A"));
      blk.b = detail::int_list(detail::need(b, "B"));
      blk.tag = b.contains("tag") ? tag_from_string(b.at("tag").get<std::string>()) : BlockTag::Base;
      c.blocks.push_back(std::move(blk));
    }
    const Json& cost = detail::need(j, "costJ");
    if (!cost.is_number_integer())
      throw ParseError("costJ must be an integer");
    c.cost_j = cost.get<std::int64_t>();
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
  return c;
}

inline Json edge_list_json(const std::vector<Edge>& es) {
  Json a = Json::array();
  for (auto [p, q] : es)
    a.push_back(Json::array({p, q}));
  return a;
}

inline Json report_to_json(const VerificationReport& r) {
  return Json{{"schemaVersion", schema_version},
              {"ok", r.ok},
              {"errors", r.errors},
              {"missing", edge_list_json(r.missing)},
              {"spurious", edge_list_json(r.spurious)},
              {"storedCost", r.stored_cost},
              {"recomputedCost", r.recomputed_cost},
              {"emptyBlocks", detail::int_list_json(r.empty_blocks)},
              {"outOfRangeBlocks", detail::int_list_json(r.out_of_range_blocks)}};
}

// ---------------------------------------------------------------------------
// k-partite instances and covers.

inline Json hyper_instance_to_json(const KPartiteInstance& inst) {
  Json j{{"schemaVersion", schema_version}, {"kind", "kpartite"}};
  if (inst.explicit_edges) {
    j["sizes"] = detail::int_list_json(inst.sizes);
    Json es = Json::array();
    for (const auto& e : *inst.explicit_edges)
      es.push_back(detail::int_list_json(e));
    j["explicitEdges"] = es;
    return j;
  }
  j["dims"] = detail::int_list_json(inst.dims);
  j["descriptionComplexity"] = inst.description_complexity;
  Json parts = Json::array();
  for (const auto& part : inst.parts) {
    Json a = Json::array();
    for (const auto& p : part)
      a.push_back(point_to_json(p));
    parts.push_back(a);
  }
  j["parts"] = parts;
  j["relation"] = set_to_json(*inst.relation);
  return j;
}

inline KPartiteInstance hyper_instance_from_json(const Json& j) {
  KPartiteInstance inst;
  try {
    if (j.contains("kind") && j.at("kind") != "kpartite")
      throw ParseError("expected a k-partite instance");
    if (j.contains("explicitEdges")) {
      inst.sizes = detail::int_list(detail::need(j, "sizes"));
      inst.explicit_edges = std::vector<HyperEdge>{};
      for (const auto& e : j.at("explicitEdges"))
        inst.explicit_edges->push_back(detail::int_list(e));
    } else {
      inst.dims = detail::int_list(detail::need(j, "dims"));
      if (j.contains("descriptionComplexity"))
        inst.description_complexity = detail::need_int(j, "descriptionComplexity");
      for (const auto& part : detail::need(j, "parts")) {
        std::vector<Point> pts;
        for (const auto& p : part)
          pts.push_back(point_from_json(p));
        inst.parts.push_back(std::move(pts));
      }
      inst.relation = set_from_json(detail::need(j, "relation"), inst.description_complexity);
    }
    validate(inst);
  } catch (const ContractViolation& e) {
    throw ParseError(e.what());
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
  return inst;
}

inline Json hyper_cover_to_json(const HyperCover& c) {
  Json blocks = Json::array();
  for (const auto& b : c.blocks) {
    Json sides = Json::array();
    for (const auto& s : b.sides)
      sides.push_back(detail::int_list_json(s));
    blocks.push_back(Json{{"sides", sides}, {"tag", to_string(b.tag)}});
  }
  return Json{{"schemaVersion", schema_version}, {"blocks", blocks}, {"cost", rational_to_json(c.cost)}};
}

inline HyperCover hyper_cover_from_json(const Json& j) {
  HyperCover c;
  try {
    for (const auto& b : detail::need(j, "blocks")) {
      HyperBlock blk;
      for (const auto& s : detail::need(b, "sides"))
        blk.sides.push_back(detail::int_list(s));
      blk.tag = b.contains("tag") ? tag_from_string(b.at("tag").get<std::string>()) : BlockTag::Base;
      c.blocks.push_back(std::move(blk));
    }
    c.cost = rational_from_json(detail::need(j, "cost"));
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
  return c;
}

inline Json hyper_report_to_json(const HyperVerificationReport& r) {
  auto tuples = [](const std::vector<HyperEdge>& v) {
    Json a = Json::array();
    for (const auto& t : v)
      a.push_back(detail::int_list_json(t));
    return a;
  };
  return Json{{"schemaVersion", schema_version},
              {"ok", r.ok},
              {"errors", r.errors},
              {"missing", tuples(r.missing)},
              {"spurious", tuples(r.spurious)},
              {"storedCost", rational_to_json(r.stored_cost)},
              {"recomputedCost", rational_to_json(r.recomputed_cost)},
              {"emptyBlocks", detail::int_list_json(r.empty_blocks)},
              {"outOfRangeBlocks", detail::int_list_json(r.out_of_range_blocks)}};
}

// ---------------------------------------------------------------------------
// Files.

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ParseError("cannot write " + path);
  out << text;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sacover

#endif  // SACOVER_IO_HPP
