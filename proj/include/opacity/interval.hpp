#pragma once

#include <string>

#include "opacity/rational.hpp"

namespace opacity {

/// A sub-interval of [0,1] with independent open/closed ends.
/// Invariant: 0 <= lo <= hi <= 1, and a degenerate interval is closed.
class Interval {
 public:
  Interval() = default;  // the point [0,0]
  Interval(Rational lo, Rational hi, bool lo_open = false, bool hi_open = false);

  static Interval point(const Rational& p) { return Interval(p, p); }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool lo_open() const { return lo_open_; }
  bool hi_open() const { return hi_open_; }

  bool contains(const Rational& p) const;
  bool is_point() const { return lo_ == hi_; }
  /// True for the implicit "no edge" interval [0,0].
  bool is_zero() const { return hi_ == 0; }
  Interval closure() const { return Interval(lo_, hi_); }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Rational lo_{0};
  Rational hi_{0};
  bool lo_open_ = false;
  bool hi_open_ = false;
};

/// "[1/8, 8/9]", "(0, 1]", ...
std::string to_string(const Interval& interval);

}  // namespace opacity
