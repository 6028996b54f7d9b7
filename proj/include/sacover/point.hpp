#ifndef SACOVER_POINT_HPP
#define SACOVER_POINT_HPP

#include <sacover/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sacover {

/// A point of R^dim with exact coordinates.
class Point {
public:
  Point() = default;
  explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Rational> coords) : coords_(coords) {}

  static Point from_doubles(std::span<const double> xs) {
    std::vector<Rational> c;
    c.reserve(xs.size());
    for (double x : xs)
      c.push_back(rational_from_double(x));
    return Point(std::move(c));
  }
  static Point from_doubles(std::initializer_list<double> xs) {
    return from_doubles(std::span<const double>(xs.begin(), xs.size()));
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }

private:
  std::vector<Rational> coords_;
};

/// Closed interval [lo, hi]; lo == hi is a single value.
struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool degenerate() const { return lo == hi; }
};

/// Axis-aligned closed box; degenerate sides encode fixed coordinates.
class Box {
public:
  Box() = default;
  explicit Box(std::vector<Interval> sides) : sides_(std::move(sides)) {}

  static Box around(const Point& p) {
    std::vector<Interval> s;
    s.reserve(p.dim());
    for (const auto& c : p.coords())
      s.push_back({c, c});
    return Box(std::move(s));
  }

  /// Bounding box of a nonempty point collection.
  template <class Range>
  static Box bounding(const Range& pts) {
    auto it = std::begin(pts);
    Box b = around(*it);
    for (++it; it != std::end(pts); ++it)
      b.expand(*it);
    return b;
  }

  void expand(const Point& p) {
    for (int i = 0; i < dim(); ++i) {
      if (p[i] < sides_[i].lo)
        sides_[i].lo = p[i];
      if (p[i] > sides_[i].hi)
        sides_[i].hi = p[i];
    }
  }

  int dim() const { return static_cast<int>(sides_.size()); }
  const Interval& operator[](std::size_t i) const { return sides_[i]; }
  Interval& operator[](std::size_t i) { return sides_[i]; }
  const std::vector<Interval>& sides() const { return sides_; }

  bool contains(const Point& p) const {
    for (int i = 0; i < dim(); ++i)
      if (!sides_[i].contains(p[i]))
        return false;
    return true;
  }

private:
  std::vector<Interval> sides_;
};

}  // namespace sacover

#endif  // SACOVER_POINT_HPP
