#include "opacity/dpa_io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>

#include "opacity/errors.hpp"
#include "text_util.hpp"

namespace opacity {

Dpa parse_dpa(std::istream& in, const std::string& source) {
  bool header = false;
  std::optional<Alphabet> alphabet;
  std::map<std::string, StateId> index;
  std::optional<StateId> init;
  Dpa dpa;
  struct Pending {
    std::size_t line;
    std::string from, letter, to;
  };
  std::vector<Pending> transitions;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    const auto words = detail::split_words(line);
    if (words[0] == "dpa") {
      if (words.size() != 1 || header) throw ParseError(source, line_no, "unexpected 'dpa' directive");
      header = true;
    } else if (words[0] == "alphabet") {
      if (alphabet) throw ParseError(source, line_no, "duplicate 'alphabet' directive");
      try {
        alphabet = Alphabet(std::vector<std::string>(words.begin() + 1, words.end()));
      } catch (const Error& e) {
        throw ParseError(source, line_no, e.what());
      }
      if (alphabet->size() == 0) throw ParseError(source, line_no, "empty alphabet");
    } else if (words[0] == "state") {
      if (words.size() < 4 || words.size() > 5 || words[2] != "color" ||
          (words.size() == 5 && words[4] != "init")) {
        throw ParseError(source, line_no, "expected 'state <id> color <k> [init]'");
      }
      if (index.contains(words[1])) throw ParseError(source, line_no, "duplicate state '" + words[1] + "'");
      unsigned long color = 0;
      try {
        std::size_t used = 0;
        color = std::stoul(words[3], &used);
        if (used != words[3].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(source, line_no, "colour must be a positive integer");
      }
      if (color == 0) throw ParseError(source, line_no, "colour must be a positive integer");
      const StateId id = dpa.color.size();
      if (words.size() == 5) {
        if (init) throw ParseError(source, line_no, "more than one init state");
        init = id;
      }
      index.emplace(words[1], id);
      dpa.color.push_back(static_cast<unsigned>(color));
      dpa.state_names.push_back(words[1]);
    } else if (words[0] == "trans") {
      if (words.size() != 4) throw ParseError(source, line_no, "expected 'trans <from> <letter> <to>'");
      transitions.push_back({line_no, words[1], words[2], words[3]});
    } else {
      throw ParseError(source, line_no, "unknown directive '" + words[0] + "'");
    }
  }
  if (!header) throw ParseError(source, line_no, "missing 'dpa' directive");
  if (!alphabet) throw ParseError(source, line_no, "missing 'alphabet' directive");
  if (dpa.color.empty()) throw ParseError(source, line_no, "automaton has no states");
  if (!init) throw ParseError(source, line_no, "no init state");

  dpa.alphabet = *alphabet;
  dpa.init = *init;
  constexpr StateId unset = static_cast<StateId>(-1);
  dpa.next.assign(dpa.color.size(), std::vector<StateId>(alphabet->size(), unset));
  auto state_of = [&](const std::string& name, std::size_t line) {
    auto it = index.find(name);
    if (it == index.end()) throw ParseError(source, line, "unknown state '" + name + "'");
    return it->second;
  };
  for (const auto& t : transitions) {
    const StateId from = state_of(t.from, t.line), to = state_of(t.to, t.line);
    const auto letter = alphabet->find(t.letter);
    if (!letter) throw ParseError(source, t.line, "letter '" + t.letter + "' is not in the alphabet");
    if (dpa.next[from][*letter] != unset) {
      throw ParseError(source, t.line, "second transition for (" + t.from + ", " + t.letter + ")");
    }
    dpa.next[from][*letter] = to;
  }
  for (StateId s = 0; s < dpa.size(); ++s) {
    for (Letter l = 0; l < alphabet->size(); ++l) {
      if (dpa.next[s][l] == unset) {
        throw ParseError(source, line_no,
                         "missing transition for (" + dpa.state_names[s] + ", " + alphabet->name(l) + ")");
      }
    }
  }
  return dpa;
}

Dpa load_dpa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_dpa(in, path);
}

void write_dpa(std::ostream& out, const Dpa& dpa) {
  out << "dpa\nalphabet";
  for (const auto& l : dpa.alphabet.letters()) out << ' ' << l;
  out << '\n';
  for (StateId s = 0; s < dpa.size(); ++s) {
    out << "state " << dpa.state_name(s) << " color " << dpa.color[s] << (s == dpa.init ? " init" : "")
        << '\n';
  }
  for (StateId s = 0; s < dpa.size(); ++s) {
    for (Letter l = 0; l < dpa.alphabet.size(); ++l) {
      out << "trans " << dpa.state_name(s) << ' ' << dpa.alphabet.name(l) << ' '
          << dpa.state_name(dpa.next[s][l]) << '\n';
    }
  }
}

}  // namespace opacity
