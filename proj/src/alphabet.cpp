#include "opacity/alphabet.hpp"

#include <algorithm>

#include "opacity/automaton.hpp"
#include "opacity/errors.hpp"

namespace opacity {

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (letters_[i] == letters_[j]) {
        throw InvalidModel("duplicate letter '" + letters_[i] + "' in alphabet");
      }
    }
  }
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  const auto it = std::find(letters_.begin(), letters_.end(), name);
  if (it == letters_.end()) return std::nullopt;
  return static_cast<Letter>(it - letters_.begin());
}

Letter Alphabet::at(std::string_view name) const {
  if (auto l = find(name)) return *l;
  throw AlphabetMismatch("letter '" + std::string(name) + "' is not in the alphabet");
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b, std::string_view context) {
  if (a == b) return;
  auto render = [](const Alphabet& x) {
    std::string s = "{";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " " : "") + x.name(i);
    return s + "}";
  };
  throw AlphabetMismatch(std::string(context) + ": alphabets differ " + render(a) + " vs " +
                         render(b));
}

std::size_t Nba::transition_count() const {
  std::size_t n = 0;
  for (const auto& row : succ)
    for (const auto& targets : row) n += targets.size();
  return n;
}

StateId Nba::add_state(bool is_accepting) {
  succ.emplace_back(alphabet.size());
  accepting.push_back(is_accepting);
  return succ.size() - 1;
}

void Nba::add_transition(StateId from, Letter letter, StateId to) {
  auto& targets = succ.at(from).at(letter);
  if (std::find(targets.begin(), targets.end(), to) == targets.end()) targets.push_back(to);
}

unsigned Dpa::max_color() const {
  unsigned k = 0;
  for (unsigned c : color) k = std::max(k, c);
  return k;
}

std::string Dpa::state_name(StateId s) const {
  if (s < state_names.size() && !state_names[s].empty()) return state_names[s];
  return "d" + std::to_string(s);
}

Observation::Observation(Alphabet sigma, const std::vector<std::string>& observable)
    : sigma_(std::move(sigma)), mask_(sigma_.size(), false), to_observed_(sigma_.size(), 0) {
  if (observable.empty()) throw InvalidModel("observation set must not be empty");
  for (const auto& name : observable) mask_.at(sigma_.at(name)) = true;
  std::vector<std::string> seen;
  for (Letter l = 0; l < sigma_.size(); ++l) {
    if (!mask_[l]) continue;
    to_observed_[l] = seen.size();
    seen.push_back(sigma_.name(l));
  }
  observed_ = Alphabet(std::move(seen));
}

}  // namespace opacity
