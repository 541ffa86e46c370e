#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "opacity/model.hpp"

namespace opacity {

using AnyModel = std::variant<Pts, Idtmc>;

/// Reads the line-oriented model format:
///
///   model idtmc            # or: model pts
///   alphabet a b c d
///   state q0 label a init
///   edge q0 q1 [1/8, 8/9]  # idtmc; '(' and ')' mark open ends
///   edge q0 q1 1/4         # pts
///
/// Throws ParseError naming `source` and the line.
AnyModel parse_model(std::istream& in, const std::string& source);
AnyModel load_model(const std::string& path);

/// Interval literal such as "[1/8, 8/9]" or "(0,1]". A leading ']' and a
/// trailing '[' are accepted as open ends too.
Interval parse_interval(std::string_view text);

void write_model(std::ostream& out, const Pts& pts);
void write_model(std::ostream& out, const Idtmc& idtmc);

/// Memoryless choice file: one `choice <from> <to> <p>` line per positive
/// entry. States without lines get the empty distribution.
MemorylessChoice parse_choice(std::istream& in, const Idtmc& idtmc, const std::string& source);
void write_choice(std::ostream& out, const Idtmc& idtmc, const MemorylessChoice& choice);

}  // namespace opacity
