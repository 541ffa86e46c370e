#pragma once

#include <iosfwd>
#include <string>

#include "opacity/relations.hpp"

namespace opacity {

/// Witness text format, states referred to by name:
///
///   witness sat                 # or: witness sim
///   pair q0 s0
///   joint q0 s0 q1 s1 1/2       # sat: δ_(q0,s0)(q1, s1)
///   delta q0 s0 q1 s1 1/2       # sim: δ_(q0,s0)(q1)(s1)
void write_sat_witness(std::ostream& out, const Pts& pts, const Idtmc& spec, const SatWitness& w);
void write_sim_witness(std::ostream& out, const Idtmc& s1, const Idtmc& s2, const SimWitness& w);

/// Throw ParseError.
SatWitness parse_sat_witness(std::istream& in, const Pts& pts, const Idtmc& spec,
                             const std::string& source);
SimWitness parse_sim_witness(std::istream& in, const Idtmc& s1, const Idtmc& s2,
                             const std::string& source);

}  // namespace opacity
