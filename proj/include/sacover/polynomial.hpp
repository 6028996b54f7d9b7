#ifndef SACOVER_POLYNOMIAL_HPP
#define SACOVER_POLYNOMIAL_HPP

#include <sacover/point.hpp>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace sacover {

/// Multivariate polynomial with exact coefficients, keyed by exponent vector.
class Polynomial {
public:
  using Exponents = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(int dim) : dim_(dim) {
    if (dim < 0)
      throw ContractViolation("polynomial dimension must be non-negative");
  }

  static Polynomial constant(int dim, const Rational& c) {
    Polynomial f(dim);
    f.add_term(Exponents(dim, 0), c);
    return f;
  }

  /// The coordinate function x_axis.
  static Polynomial variable(int dim, int axis) {
    Polynomial f(dim);
    Exponents e(dim, 0);
    e.at(axis) = 1;
    f.add_term(e, 1);
    return f;
  }

  void add_term(const Exponents& exps, const Rational& coef) {
    if (static_cast<int>(exps.size()) != dim_)
      throw ContractViolation("exponent vector length differs from polynomial dimension");
    for (int e : exps)
      if (e < 0)
        throw ContractViolation("negative exponent");
    Rational& slot = terms_[exps];
    slot += coef;
    if (slot == 0)
      terms_.erase(exps);
  }

  int dim() const { return dim_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e)
        s += x;
      d = std::max(d, s);
    }
    return d;
  }

  Rational eval(std::span<const Rational> x) const {
    check_dim(static_cast<int>(x.size()));
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < e[i]; ++k)
          t *= x[i];
      acc += t;
    }
    return acc;
  }
  Rational eval(const Point& p) const { return eval(std::span<const Rational>(p.coords())); }

  double eval_double(std::span<const double> x) const {
    check_dim(static_cast<int>(x.size()));
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = c.get_d();
      for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < e[i]; ++k)
          t *= x[i];
      acc += t;
    }
    return acc;
  }

  /// Sound enclosure of the polynomial's range over a box (natural interval extension).
  Interval range_over(const Box& box) const {
    check_dim(box.dim());
    Interval acc{0, 0};
    for (const auto& [e, c] : terms_) {
      Interval m{c, c};
      for (int i = 0; i < dim_; ++i)
        if (e[i] > 0)
          m = mul(m, power(box[i], e[i]));
      acc.lo += m.lo;
      acc.hi += m.hi;
    }
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  static Interval mul(const Interval& a, const Interval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Interval r{p[0], p[0]};
    for (const auto& v : p) {
      if (v < r.lo)
        r.lo = v;
      if (v > r.hi)
        r.hi = v;
    }
    return r;
  }

  static Interval power(const Interval& a, int e) {
    Rational lo = 1, hi = 1;
    for (int k = 0; k < e; ++k) {
      lo *= a.lo;
      hi *= a.hi;
    }
    if (e % 2 == 1)
      return {lo, hi};
    // even power: non-negative, minimum 0 if the interval straddles 0
    Interval r{std::min(lo, hi), std::max(lo, hi)};
    if (a.lo <= 0 && a.hi >= 0)
      r.lo = 0;
    return r;
  }

private:
  void check_dim(int d) const {
    if (d != dim_)
      throw ContractViolation("point dimension " + std::to_string(d) +
                              " differs from polynomial dimension " + std::to_string(dim_));
  }

  int dim_ = 0;
  std::map<Exponents, Rational> terms_;
};

}  // namespace sacover

#endif  // SACOVER_POLYNOMIAL_HPP
