#ifndef SACOVER_FORMULA_HPP
#define SACOVER_FORMULA_HPP

#include <sacover/rational.hpp>

#include <span>
#include <vector>

namespace sacover {

/// Three-valued truth used when a sign condition is only known over a region.
enum class Tri { False, True, Unknown };

/// Sign of a polynomial value relative to zero, as far as it is known.
enum class SignInfo { NonNegative, Negative, Unknown };

/// Boolean formula over atoms sign(f_i) >= 0 / sign(f_i) < 0, kept in negation normal form.
class Formula {
public:
  enum class Kind { Const, Atom, And, Or };

  static Formula constant(bool v) {
    Formula f;
    f.kind_ = Kind::Const;
    f.value_ = v;
    return f;
  }
  /// sign(f_index) >= 0 when non_negative, otherwise sign(f_index) < 0.
  static Formula atom(int index, bool non_negative = true) {
    if (index < 0)
      throw ContractViolation("atom index must be non-negative");
    Formula f;
    f.kind_ = Kind::Atom;
    f.index_ = index;
    f.value_ = non_negative;
    return f;
  }
  static Formula all_of(std::vector<Formula> kids) { return combine(Kind::And, std::move(kids)); }
  static Formula any_of(std::vector<Formula> kids) { return combine(Kind::Or, std::move(kids)); }

  /// Conjunction of f_i >= 0 for i in [0, count).
  static Formula all_non_negative(int count) {
    std::vector<Formula> kids;
    for (int i = 0; i < count; ++i)
      kids.push_back(atom(i, true));
    return all_of(std::move(kids));
  }

  Kind kind() const { return kind_; }
  bool value() const { return value_; }
  int index() const { return index_; }
  const std::vector<Formula>& children() const { return kids_; }

  /// Negation pushed to the atoms (keeps NNF).
  Formula negated() const {
    switch (kind_) {
    case Kind::Const:
      return constant(!value_);
    case Kind::Atom:
      return atom(index_, !value_);
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      for (const auto& k : kids_)
        kids.push_back(k.negated());
      return combine(kind_ == Kind::And ? Kind::Or : Kind::And, std::move(kids));
    }
    }
    return *this;
  }

  int max_atom() const {
    int m = -1;
    if (kind_ == Kind::Atom)
      m = index_;
    for (const auto& k : kids_)
      m = std::max(m, k.max_atom());
    return m;
  }

  bool eval(std::span<const int> signs) const {
    // signs[i]: sign of f_i in {-1, 0, 1}
    switch (kind_) {
    case Kind::Const:
      return value_;
    case Kind::Atom:
      return value_ ? signs[index_] >= 0 : signs[index_] < 0;
    case Kind::And:
      for (const auto& k : kids_)
        if (!k.eval(signs))
          return false;
      return true;
    case Kind::Or:
      for (const auto& k : kids_)
        if (k.eval(signs))
          return true;
      return false;
    }
    return false;
  }

  Tri eval3(std::span<const SignInfo> signs) const {
    switch (kind_) {
    case Kind::Const:
      return value_ ? Tri::True : Tri::False;
    case Kind::Atom: {
      SignInfo s = signs[index_];
      if (s == SignInfo::Unknown)
        return Tri::Unknown;
      bool nonneg = s == SignInfo::NonNegative;
      return nonneg == value_ ? Tri::True : Tri::False;
    }
    case Kind::And: {
      Tri acc = Tri::True;
      for (const auto& k : kids_) {
        Tri t = k.eval3(signs);
        if (t == Tri::False)
          return Tri::False;
        if (t == Tri::Unknown)
          acc = Tri::Unknown;
      }
      return acc;
    }
    case Kind::Or: {
      Tri acc = Tri::False;
      for (const auto& k : kids_) {
        Tri t = k.eval3(signs);
        if (t == Tri::True)
          return Tri::True;
        if (t == Tri::Unknown)
          acc = Tri::Unknown;
      }
      return acc;
    }
    }
    return Tri::Unknown;
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_ && a.index_ == b.index_ && a.kids_ == b.kids_;
  }

private:
  static Formula combine(Kind kind, std::vector<Formula> kids) {
    Formula f;
    f.kind_ = kind;
    f.kids_ = std::move(kids);
    return f;
  }

  Kind kind_ = Kind::Const;
  bool value_ = true;
  int index_ = -1;
  std::vector<Formula> kids_;
};

}  // namespace sacover

#endif  // SACOVER_FORMULA_HPP
