#pragma once

#include <string>
#include <vector>

#include "opacity/alphabet.hpp"

namespace opacity {

/// Nondeterministic Büchi automaton with state-based acceptance and
/// letter-labelled transitions.
struct Nba {
  Alphabet alphabet;
  std::vector<std::vector<std::vector<StateId>>> succ;  // [state][letter] -> targets
  std::vector<StateId> initial;
  std::vector<bool> accepting;

  Nba() = default;
  explicit Nba(Alphabet sigma) : alphabet(std::move(sigma)) {}

  std::size_t size() const { return succ.size(); }
  std::size_t transition_count() const;
  StateId add_state(bool is_accepting);
  void add_transition(StateId from, Letter letter, StateId to);
};

/// Deterministic parity automaton with a total transition function. A run is
/// accepting iff the minimal colour seen infinitely often is even.
struct Dpa {
  Alphabet alphabet;
  std::vector<std::vector<StateId>> next;  // [state][letter]
  std::vector<unsigned> color;             // values in 1..k
  StateId init = 0;
  std::vector<std::string> state_names;    // optional; generated when empty

  std::size_t size() const { return next.size(); }
  unsigned max_color() const;
  std::string state_name(StateId s) const;
};

/// The observable part Σ_ob of the alphabet.
class Observation {
 public:
  Observation(Alphabet sigma, const std::vector<std::string>& observable);

  const Alphabet& alphabet() const { return sigma_; }
  bool observable(Letter letter) const { return mask_.at(letter); }
  /// Σ_ob, ordered as in Σ.
  const Alphabet& observed_alphabet() const { return observed_; }
  /// Index of an observable letter inside observed_alphabet().
  Letter to_observed(Letter letter) const { return to_observed_.at(letter); }
  bool is_total() const { return observed_.size() == sigma_.size(); }

 private:
  Alphabet sigma_;
  Alphabet observed_;
  std::vector<bool> mask_;
  std::vector<Letter> to_observed_;
};

}  // namespace opacity
