#ifndef SACOVER_RATIONAL_HPP
#define SACOVER_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sacover {

/// Exact rational scalar used for all coordinates and set parameters.
using Rational = mpq_class;

class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation declines an input above its documented size cap.
class Refusal : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

inline Rational rational_from_double(double x) {
  if (!std::isfinite(x))
    throw ParseError("non-finite coordinate");
  return Rational(x);  // mpq_set_d is exact
}

inline Rational rational_from_int(std::int64_t v) {
  mpz_class z;
  // mpz from long is only guaranteed for long; int64 fits on LP64.
  z = static_cast<long>(v);
  return Rational(z);
}

/// Parses "p/q", an integer, or a plain decimal such as "-0.125" exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty())
    throw ParseError("empty rational literal");
  auto dot = s.find('.');
  if (s.find_first_of("eE") != std::string::npos)
    throw ParseError("exponent notation not accepted in rational literal: " + s);
  Rational out;
  if (dot == std::string::npos) {
    if (out.set_str(s, 10) != 0)
      throw ParseError("bad rational literal: " + s);
    if (out.get_den() == 0)
      throw ParseError("zero denominator: " + s);
    out.canonicalize();
    return out;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t frac = s.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+")
    throw ParseError("bad decimal literal: " + s);
  if (digits[0] == '+')
    digits.erase(0, 1);
  mpz_class num;
  if (num.set_str(digits, 10) != 0)
    throw ParseError("bad decimal literal: " + s);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
  out = Rational(num, den);
  out.canonicalize();
  return out;
}

inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// True when q is exactly representable as a double (finite dyadic, 53-bit mantissa).
inline bool exactly_double(const Rational& q) {
  double d = q.get_d();
  if (!std::isfinite(d))
    return false;
  return Rational(d) == q;
}

inline int sign(const Rational& q) { return sgn(q); }

inline Rational midpoint(const Rational& a, const Rational& b) {
  Rational m = (a + b) / 2;
  m.canonicalize();
  return m;
}

}  // namespace sacover

#endif  // SACOVER_RATIONAL_HPP
