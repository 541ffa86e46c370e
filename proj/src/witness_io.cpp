#include "opacity/witness_io.hpp"

#include <istream>
#include <ostream>

#include "opacity/errors.hpp"
#include "text_util.hpp"

namespace opacity {

void write_sat_witness(std::ostream& out, const Pts& pts, const Idtmc& spec, const SatWitness& w) {
  out << "witness sat\n";
  for (const auto& [q, s] : w.relation) out << "pair " << pts.state_names[q] << ' ' << spec.state_names[s] << '\n';
  for (const auto& [pair, joint] : w.joint) {
    for (const auto& [key, p] : joint) {
      out << "joint " << pts.state_names[pair.first] << ' ' << spec.state_names[pair.second] << ' '
          << pts.state_names[key.first] << ' ' << spec.state_names[key.second] << ' ' << to_string(p)
          << '\n';
    }
  }
}

void write_sim_witness(std::ostream& out, const Idtmc& s1, const Idtmc& s2, const SimWitness& w) {
  out << "witness sim\n";
  for (const auto& [a, b] : w.relation) out << "pair " << s1.state_names[a] << ' ' << s2.state_names[b] << '\n';
  for (const auto& [pair, delta] : w.delta) {
    for (const auto& [t, dist] : delta) {
      for (const auto& [u, p] : dist) {
        out << "delta " << s1.state_names[pair.first] << ' ' << s2.state_names[pair.second] << ' '
            << s1.state_names[t] << ' ' << s2.state_names[u] << ' ' << to_string(p) << '\n';
      }
    }
  }
}

namespace {

template <typename M1, typename M2, typename OnEntry>
std::set<StatePair> parse_common(std::istream& in, const M1& m1, const M2& m2, const std::string& source,
                                 const char* kind, const char* entry, OnEntry&& on_entry) {
  std::set<StatePair> relation;
  bool header = false;
  std::string raw;
  std::size_t line_no = 0;
  auto state = [&](const auto& model, const std::string& name) {
    auto s = model.find_state(name);
    if (!s) throw ParseError(source, line_no, "unknown state '" + name + "'");
    return *s;
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    const auto words = detail::split_words(line);
    if (words[0] == "witness") {
      if (words.size() != 2 || words[1] != kind || header) {
        throw ParseError(source, line_no, std::string("expected 'witness ") + kind + "'");
      }
      header = true;
    } else if (!header) {
      throw ParseError(source, line_no, "missing 'witness' header");
    } else if (words[0] == "pair" && words.size() == 3) {
      relation.insert({state(m1, words[1]), state(m2, words[2])});
    } else if (words[0] == entry && words.size() == 6) {
      Rational p;
      try {
        p = parse_rational(words[5]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(source, line_no, e.what());
      }
      on_entry(StatePair{state(m1, words[1]), state(m2, words[2])}, state(m1, words[3]), state(m2, words[4]), p);
    } else {
      throw ParseError(source, line_no, "unrecognised line");
    }
  }
  if (!header) throw ParseError(source, line_no, "missing 'witness' header");
  return relation;
}

}  // namespace

SatWitness parse_sat_witness(std::istream& in, const Pts& pts, const Idtmc& spec, const std::string& source) {
  SatWitness w;
  w.relation = parse_common(in, pts, spec, source, "sat", "joint",
                            [&](StatePair pair, StateId q, StateId s, const Rational& p) {
                              w.joint[pair][{q, s}] = p;
                            });
  return w;
}

SimWitness parse_sim_witness(std::istream& in, const Idtmc& s1, const Idtmc& s2, const std::string& source) {
  SimWitness w;
  w.relation = parse_common(in, s1, s2, source, "sim", "delta",
                            [&](StatePair pair, StateId t, StateId u, const Rational& p) {
                              w.delta[pair][t][u] = p;
                            });
  return w;
}

}  // namespace opacity
