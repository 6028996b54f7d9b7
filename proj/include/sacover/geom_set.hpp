#ifndef SACOVER_GEOM_SET_HPP
#define SACOVER_GEOM_SET_HPP

#include <sacover/formula.hpp>
#include <sacover/point.hpp>
#include <sacover/polynomial.hpp>

#include <cmath>
#include <string>
#include <variant>
#include <vector>

namespace sacover {

enum class NumericMode { Exact, Floating };

struct NumericConfig {
  NumericMode mode = NumericMode::Exact;
  double tau_eq = 1e-9;  // equality tolerance in floating mode
};

/// Relation of a set to a closed cell: the set provably contains it, provably misses it, or neither.
enum class CellRelation { Contains, Crosses, Disjoint };

inline const char* to_string(CellRelation r) {
  switch (r) {
  case CellRelation::Contains:
    return "contains";
  case CellRelation::Crosses:
    return "crosses";
  case CellRelation::Disjoint:
    return "disjoint";
  }
  return "?";
}

/// {x : normal . x <= rhs} or, when equality is set, {x : normal . x == rhs}.
struct LinearSet {
  std::vector<Rational> normal;
  Rational rhs;
  bool equality = false;
};

/// Closed ball {x : |x - center| <= radius}.
struct BallSet {
  std::vector<Rational> center;
  Rational radius;
};

/// Boolean combination of polynomial sign conditions.
struct GenericSet {
  int dim = 0;
  std::vector<Polynomial> polys;
  Formula formula;
};

struct ConstantSet {
  int dim = 0;
  bool value = false;
};

inline bool operator==(const LinearSet& a, const LinearSet& b) {
  return a.normal == b.normal && a.rhs == b.rhs && a.equality == b.equality;
}
inline bool operator==(const BallSet& a, const BallSet& b) {
  return a.center == b.center && a.radius == b.radius;
}
inline bool operator==(const GenericSet& a, const GenericSet& b) {
  return a.dim == b.dim && a.polys == b.polys && a.formula == b.formula;
}
inline bool operator==(const ConstantSet& a, const ConstantSet& b) {
  return a.dim == b.dim && a.value == b.value;
}

/// A semi-algebraic neighbor set. Immutable once built; factories reject degenerate parameters.
class GeomSet {
public:
  using Shape = std::variant<LinearSet, BallSet, GenericSet, ConstantSet>;

  /// a*x + b*y <= c
  static GeomSet halfplane(const Rational& a, const Rational& b, const Rational& c) {
    if (a == 0 && b == 0)
      throw ContractViolation("halfplane normal (a,b) must be nonzero");
    return GeomSet(LinearSet{{a, b}, c, false});
  }
  /// a*x + b*y == c
  static GeomSet line(const Rational& a, const Rational& b, const Rational& c) {
    if (a == 0 && b == 0)
      throw ContractViolation("line normal (a,b) must be nonzero");
    return GeomSet(LinearSet{{a, b}, c, true});
  }
  static GeomSet disk(const Point& center, const Rational& radius) {
    if (radius <= 0)
      throw ContractViolation("disk radius must be positive");
    if (center.dim() < 1)
      throw ContractViolation("disk center needs at least one coordinate");
    return GeomSet(BallSet{center.coords(), radius});
  }
  /// a*x + b*y + c*z <= e
  static GeomSet halfspace3(const Rational& a, const Rational& b, const Rational& c, const Rational& e) {
    if (a == 0 && b == 0 && c == 0)
      throw ContractViolation("halfspace normal must be nonzero");
    return GeomSet(LinearSet{{a, b, c}, e, false});
  }
  static GeomSet linear(std::vector<Rational> normal, const Rational& rhs, bool equality) {
    bool zero = true;
    for (const auto& x : normal)
      zero = zero && x == 0;
    if (normal.empty() || zero)
      throw ContractViolation("linear set normal must be nonzero");
    return GeomSet(LinearSet{std::move(normal), rhs, equality});
  }
  /// Generic sign-condition set; enforces the description-complexity bound t.
  static GeomSet generic(int dim, std::vector<Polynomial> polys, Formula formula, int complexity) {
    if (dim < 1)
      throw ContractViolation("generic set dimension must be positive");
    if (static_cast<int>(polys.size()) > complexity)
      throw ContractViolation("generic set uses more than t polynomials");
    for (const auto& f : polys) {
      if (f.dim() != dim)
        throw ContractViolation("generic polynomial dimension mismatch");
      if (f.degree() > complexity)
        throw ContractViolation("generic polynomial degree exceeds t");
    }
    if (formula.max_atom() >= static_cast<int>(polys.size()))
      throw ContractViolation("formula references a missing polynomial");
    return GeomSet(GenericSet{dim, std::move(polys), std::move(formula)});
  }
  static GeomSet constant(int dim, bool value) { return GeomSet(ConstantSet{dim, value}); }

  const Shape& shape() const { return shape_; }

  int dim() const {
    return std::visit(
        [](const auto& s) -> int {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, LinearSet>)
            return static_cast<int>(s.normal.size());
          else if constexpr (std::is_same_v<T, BallSet>)
            return static_cast<int>(s.center.size());
          else
            return s.dim;
        },
        shape_);
  }

  /// Family name used in serialized form.
  std::string kind() const {
    if (auto* l = std::get_if<LinearSet>(&shape_)) {
      if (l->normal.size() == 2)
        return l->equality ? "line" : "halfplane";
      if (l->normal.size() == 3 && !l->equality)
        return "halfspace3";
      return "linear";
    }
    if (std::holds_alternative<BallSet>(shape_))
      return "disk";
    if (std::holds_alternative<GenericSet>(shape_))
      return "generic";
    return "constant";
  }

  friend bool operator==(const GeomSet& a, const GeomSet& b) { return a.shape_ == b.shape_; }

private:
  explicit GeomSet(Shape s) : shape_(std::move(s)) {}
  Shape shape_;
};

namespace detail {

inline void require_dim(const Point& p, const GeomSet& g) {
  if (p.dim() != g.dim())
    throw ContractViolation("point dimension " + std::to_string(p.dim()) + " differs from set dimension " +
                            std::to_string(g.dim()));
}

inline bool incident_exact(const Point& p, const GeomSet& g) {
  const auto& shape = g.shape();
  if (auto* l = std::get_if<LinearSet>(&shape)) {
    Rational s = -l->rhs;
    for (int i = 0; i < p.dim(); ++i)
      s += l->normal[i] * p[i];
    return l->equality ? s == 0 : s <= 0;
  }
  if (auto* b = std::get_if<BallSet>(&shape)) {
    Rational d2 = 0;
    for (int i = 0; i < p.dim(); ++i) {
      Rational t = p[i] - b->center[i];
      d2 += t * t;
    }
    return d2 <= b->radius * b->radius;
  }
  if (auto* s = std::get_if<GenericSet>(&shape)) {
    std::vector<int> signs;
    signs.reserve(s->polys.size());
    for (const auto& f : s->polys)
      signs.push_back(sgn(f.eval(p)));
    return s->formula.eval(signs);
  }
  return std::get<ConstantSet>(shape).value;
}

inline bool incident_floating(const Point& p, const GeomSet& g, double tau) {
  std::vector<double> x;
  for (const auto& c : p.coords())
    x.push_back(c.get_d());
  const auto& shape = g.shape();
  if (auto* l = std::get_if<LinearSet>(&shape)) {
    double s = -l->rhs.get_d();
    for (std::size_t i = 0; i < x.size(); ++i)
      s += l->normal[i].get_d() * x[i];
    return l->equality ? std::abs(s) <= tau : s <= 0.0;
  }
  if (auto* b = std::get_if<BallSet>(&shape)) {
    double d2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double t = x[i] - b->center[i].get_d();
      d2 += t * t;
    }
    double r = b->radius.get_d();
    return d2 <= r * r;
  }
  if (auto* s = std::get_if<GenericSet>(&shape)) {
    std::vector<int> signs;
    for (const auto& f : s->polys) {
      double v = f.eval_double(x);
      signs.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
    }
    return s->formula.eval(signs);
  }
  return std::get<ConstantSet>(shape).value;
}

}  // namespace detail

/// Whether p lies in g. Exact by default; floating mode compares line equality within tau_eq.
inline bool incident(const Point& p, const GeomSet& g, const NumericConfig& num = {}) {
  detail::require_dim(p, g);
  if (num.mode == NumericMode::Floating)
    return detail::incident_floating(p, g, num.tau_eq);
  return detail::incident_exact(p, g);
}

/// Classifies g against a closed box. Contains and Disjoint are certified; anything unproven is Crosses.
inline CellRelation classify(const GeomSet& g, const Box& box) {
  if (box.dim() != g.dim())
    throw ContractViolation("cell dimension differs from set dimension");
  const auto& shape = g.shape();
  if (auto* l = std::get_if<LinearSet>(&shape)) {
    // range of normal . x over the box
    Rational lo = 0, hi = 0;
    for (int i = 0; i < box.dim(); ++i) {
      const Rational& a = l->normal[i];
      if (a == 0)
        continue;
      Rational u = a * box[i].lo, v = a * box[i].hi;
      if (u <= v) {
        lo += u;
        hi += v;
      } else {
        lo += v;
        hi += u;
      }
    }
    if (l->equality) {
      if (l->rhs < lo || l->rhs > hi)
        return CellRelation::Disjoint;
      if (lo == hi)
        return CellRelation::Contains;
      return CellRelation::Crosses;
    }
    if (hi <= l->rhs)
      return CellRelation::Contains;
    if (lo > l->rhs)
      return CellRelation::Disjoint;
    return CellRelation::Crosses;
  }
  if (auto* b = std::get_if<BallSet>(&shape)) {
    // farthest and nearest squared distances from the center to the box
    Rational far = 0, near = 0;
    for (int i = 0; i < box.dim(); ++i) {
      const Rational& c = b->center[i];
      Rational dl = c - box[i].lo, dh = box[i].hi - c;
      Rational f = dl > dh ? dl : dh;
      far += f * f;
      if (c < box[i].lo)
        near += (box[i].lo - c) * (box[i].lo - c);
      else if (c > box[i].hi)
        near += (c - box[i].hi) * (c - box[i].hi);
    }
    Rational r2 = b->radius * b->radius;
    if (far <= r2)
      return CellRelation::Contains;
    if (near > r2)
      return CellRelation::Disjoint;
    return CellRelation::Crosses;
  }
  if (auto* s = std::get_if<GenericSet>(&shape)) {
    std::vector<SignInfo> signs;
    signs.reserve(s->polys.size());
    for (const auto& f : s->polys) {
      Interval r = f.range_over(box);
      if (r.lo >= 0)
        signs.push_back(SignInfo::NonNegative);
      else if (r.hi < 0)
        signs.push_back(SignInfo::Negative);
      else
        signs.push_back(SignInfo::Unknown);
    }
    switch (s->formula.eval3(signs)) {
    case Tri::True:
      return CellRelation::Contains;
    case Tri::False:
      return CellRelation::Disjoint;
    case Tri::Unknown:
      return CellRelation::Crosses;
    }
  }
  return std::get<ConstantSet>(shape).value ? CellRelation::Contains : CellRelation::Disjoint;
}

}  // namespace sacover

#endif  // SACOVER_GEOM_SET_HPP
