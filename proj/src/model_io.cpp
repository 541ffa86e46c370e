#include "opacity/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "opacity/errors.hpp"
#include "text_util.hpp"

namespace opacity {

namespace {

struct EdgeLine {
  std::size_t line;
  std::string from, to, value;
};

// The part of a line after the first `skip` words.
std::string tail_after_words(std::string_view line, std::size_t skip) {
  std::size_t i = 0;
  for (std::size_t w = 0; w < skip; ++w) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
  }
  std::string rest;
  for (; i < line.size(); ++i) {
    if (line[i] != ' ' && line[i] != '\t') rest += line[i];
  }
  return rest;
}

}  // namespace

Interval parse_interval(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s += c;
  }
  if (s.size() < 5) throw std::invalid_argument("malformed interval '" + std::string(text) + "'");
  const char open = s.front(), close = s.back();
  if ((open != '[' && open != '(' && open != ']') || (close != ']' && close != ')' && close != '[')) {
    throw std::invalid_argument("malformed interval '" + std::string(text) + "'");
  }
  const auto body = std::string_view(s).substr(1, s.size() - 2);
  auto sep = body.find(',');
  if (sep == std::string_view::npos) sep = body.find(';');
  if (sep == std::string_view::npos) {
    throw std::invalid_argument("interval needs two bounds: '" + std::string(text) + "'");
  }
  Rational lo = parse_rational(body.substr(0, sep));
  Rational hi = parse_rational(body.substr(sep + 1));
  try {
    return Interval(lo, hi, open != '[', close != ']');
  } catch (const InvalidModel& e) {
    throw std::invalid_argument(e.what());
  }
}

AnyModel parse_model(std::istream& in, const std::string& source) {
  std::string kind;
  std::optional<Alphabet> alphabet;
  std::vector<std::string> names;
  std::vector<std::string> label_names;
  std::vector<std::size_t> state_lines;
  std::optional<StateId> init;
  std::vector<EdgeLine> edge_lines;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    const auto words = detail::split_words(line);
    const auto& head = words[0];
    if (head == "model") {
      if (words.size() != 2 || (words[1] != "idtmc" && words[1] != "pts")) {
        throw ParseError(source, line_no, "expected 'model idtmc' or 'model pts'");
      }
      if (!kind.empty()) throw ParseError(source, line_no, "duplicate 'model' directive");
      kind = words[1];
    } else if (head == "alphabet") {
      if (alphabet) throw ParseError(source, line_no, "duplicate 'alphabet' directive");
      try {
        alphabet = Alphabet(std::vector<std::string>(words.begin() + 1, words.end()));
      } catch (const Error& e) {
        throw ParseError(source, line_no, e.what());
      }
      if (alphabet->size() == 0) throw ParseError(source, line_no, "empty alphabet");
    } else if (head == "state") {
      if (words.size() < 4 || words[2] != "label" || words.size() > 5 ||
          (words.size() == 5 && words[4] != "init")) {
        throw ParseError(source, line_no, "expected 'state <id> label <letter> [init]'");
      }
      if (std::find(names.begin(), names.end(), words[1]) != names.end()) {
        throw ParseError(source, line_no, "duplicate state '" + words[1] + "'");
      }
      if (words.size() == 5) {
        if (init) throw ParseError(source, line_no, "more than one init state");
        init = names.size();
      }
      names.push_back(words[1]);
      label_names.push_back(words[3]);
      state_lines.push_back(line_no);
    } else if (head == "edge") {
      if (words.size() < 4) throw ParseError(source, line_no, "expected 'edge <from> <to> <value>'");
      edge_lines.push_back({line_no, words[1], words[2], tail_after_words(line, 3)});
    } else {
      throw ParseError(source, line_no, "unknown directive '" + head + "'");
    }
  }
  if (kind.empty()) throw ParseError(source, line_no, "missing 'model' directive");
  if (!alphabet) throw ParseError(source, line_no, "missing 'alphabet' directive");
  if (names.empty()) throw ParseError(source, line_no, "model has no states");
  if (!init) throw ParseError(source, line_no, "no init state");

  std::vector<Letter> labels;
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto l = alphabet->find(label_names[i]);
    if (!l) {
      throw ParseError(source, state_lines[i], "label '" + label_names[i] + "' is not in the alphabet");
    }
    labels.push_back(*l);
  }
  auto state_of = [&](const std::string& name, std::size_t line) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError(source, line, "unknown state '" + name + "'");
    return static_cast<StateId>(it - names.begin());
  };

  std::set<std::pair<StateId, StateId>> seen;
  if (kind == "pts") {
    Pts pts;
    pts.alphabet = *alphabet;
    pts.state_names = names;
    pts.label = labels;
    pts.init = *init;
    pts.delta.resize(names.size());
    for (const auto& e : edge_lines) {
      const StateId s = state_of(e.from, e.line), t = state_of(e.to, e.line);
      if (!seen.emplace(s, t).second) throw ParseError(source, e.line, "duplicate edge " + e.from + "->" + e.to);
      Rational p;
      try {
        p = parse_rational(e.value);
      } catch (const std::invalid_argument& ex) {
        throw ParseError(source, e.line, ex.what());
      }
      if (p < 0 || p > 1) throw ParseError(source, e.line, "probability outside [0,1]");
      if (p > 0) pts.delta[s].emplace(t, p);
    }
    return pts;
  }
  Idtmc idtmc;
  idtmc.alphabet = *alphabet;
  idtmc.state_names = names;
  idtmc.label = labels;
  idtmc.init = *init;
  idtmc.edges.resize(names.size());
  for (const auto& e : edge_lines) {
    const StateId s = state_of(e.from, e.line), t = state_of(e.to, e.line);
    if (!seen.emplace(s, t).second) throw ParseError(source, e.line, "duplicate edge " + e.from + "->" + e.to);
    Interval iv;
    try {
      iv = parse_interval(e.value);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(source, e.line, ex.what());
    }
    if (!iv.is_zero()) idtmc.edges[s].emplace(t, iv);
  }
  return idtmc;
}

AnyModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_model(in, path);
}

namespace {

template <typename Model>
void write_header(std::ostream& out, const Model& m, const char* kind) {
  out << "model " << kind << "\nalphabet";
  for (const auto& l : m.alphabet.letters()) out << ' ' << l;
  out << '\n';
  for (StateId s = 0; s < m.size(); ++s) {
    out << "state " << m.state_names[s] << " label " << m.alphabet.name(m.label[s])
        << (s == m.init ? " init" : "") << '\n';
  }
}

}  // namespace

void write_model(std::ostream& out, const Pts& pts) {
  write_header(out, pts, "pts");
  for (StateId s = 0; s < pts.size(); ++s) {
    for (const auto& [t, p] : pts.delta[s]) {
      out << "edge " << pts.state_names[s] << ' ' << pts.state_names[t] << ' ' << to_string(p) << '\n';
    }
  }
}

void write_model(std::ostream& out, const Idtmc& idtmc) {
  write_header(out, idtmc, "idtmc");
  for (StateId s = 0; s < idtmc.size(); ++s) {
    for (const auto& [t, iv] : idtmc.edges[s]) {
      out << "edge " << idtmc.state_names[s] << ' ' << idtmc.state_names[t] << ' ' << to_string(iv)
          << '\n';
    }
  }
}

MemorylessChoice parse_choice(std::istream& in, const Idtmc& idtmc, const std::string& source) {
  MemorylessChoice choice;
  choice.choice.resize(idtmc.size());
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    const auto words = detail::split_words(line);
    if (words.size() != 4 || words[0] != "choice") {
      throw ParseError(source, line_no, "expected 'choice <from> <to> <probability>'");
    }
    const auto s = idtmc.find_state(words[1]);
    const auto t = idtmc.find_state(words[2]);
    if (!s || !t) throw ParseError(source, line_no, "unknown state");
    Rational p;
    try {
      p = parse_rational(words[3]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (choice.choice[*s].contains(*t)) throw ParseError(source, line_no, "duplicate choice entry");
    if (p != 0) choice.choice[*s].emplace(*t, p);
  }
  return choice;
}

void write_choice(std::ostream& out, const Idtmc& idtmc, const MemorylessChoice& choice) {
  for (StateId s = 0; s < choice.choice.size(); ++s) {
    for (const auto& [t, p] : choice.choice[s]) {
      out << "choice " << idtmc.state_names[s] << ' ' << idtmc.state_names[t] << ' ' << to_string(p)
          << '\n';
    }
  }
}

}  // namespace opacity
