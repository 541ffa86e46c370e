#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace opacity {

/// Exact rational number. GMP keeps every value in canonical (reduced) form
/// as long as it is produced by arithmetic or by parse_rational().
using Rational = mpq_class;

/// Parses "p/q" or an integer. Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// Fixed-point rendering with `digits` fractional digits, rounded half up.
std::string to_decimal(const Rational& value, int digits);

inline Rational rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace opacity
