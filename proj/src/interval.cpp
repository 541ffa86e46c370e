#include "opacity/interval.hpp"

#include "opacity/errors.hpp"

namespace opacity {

Interval::Interval(Rational lo, Rational hi, bool lo_open, bool hi_open)
    : lo_(std::move(lo)), hi_(std::move(hi)), lo_open_(lo_open), hi_open_(hi_open) {
  if (lo_ < 0 || hi_ > 1 || lo_ > hi_) {
    throw InvalidModel("interval bounds out of order or outside [0,1]: " +
                       to_string(*this));
  }
  if (lo_ == hi_ && (lo_open_ || hi_open_)) {
    throw InvalidModel("degenerate interval must be closed: " + to_string(*this));
  }
}

bool Interval::contains(const Rational& p) const {
  const bool above = lo_open_ ? p > lo_ : p >= lo_;
  const bool below = hi_open_ ? p < hi_ : p <= hi_;
  return above && below;
}

std::string to_string(const Interval& interval) {
  return std::string(interval.lo_open() ? "(" : "[") + to_string(interval.lo()) + ", " +
         to_string(interval.hi()) + (interval.hi_open() ? ")" : "]");
}

}  // namespace opacity
