#pragma once

#include <iosfwd>
#include <string>

#include "opacity/automaton.hpp"

namespace opacity {

/// Reads the DPA text format:
///
///   dpa
///   alphabet a b c d
///   state d0 color 1 init
///   trans d0 a d1
///
/// Exactly one init state and exactly one `trans` line per (state, letter).
/// Throws ParseError.
Dpa parse_dpa(std::istream& in, const std::string& source);
Dpa load_dpa(const std::string& path);

void write_dpa(std::ostream& out, const Dpa& dpa);

}  // namespace opacity
