#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opacity/alphabet.hpp"
#include "opacity/automaton.hpp"
#include "opacity/interval.hpp"
#include "opacity/rational.hpp"

namespace opacity {

/// Finite-support distribution; every stored value is strictly positive.
using Distribution = std::map<StateId, Rational>;

/// A finite run, as the sequence of visited states.
using Run = std::vector<StateId>;

/// Probabilistic transition system (labelled DTMC).
struct Pts {
  Alphabet alphabet;
  std::vector<std::string> state_names;
  std::vector<Letter> label;
  std::vector<Distribution> delta;
  StateId init = 0;

  std::size_t size() const { return state_names.size(); }
  std::optional<StateId> find_state(std::string_view name) const;
};

/// Interval-valued DTMC. Absent edges stand for the point interval [0,0].
struct Idtmc {
  Alphabet alphabet;
  std::vector<std::string> state_names;
  std::vector<Letter> label;
  std::vector<std::map<StateId, Interval>> edges;
  StateId init = 0;

  std::size_t size() const { return state_names.size(); }
  std::optional<StateId> find_state(std::string_view name) const;
  /// T(s)(t), [0,0] when there is no edge.
  const Interval& interval(StateId s, StateId t) const;
  /// Successors with a non-zero upper bound, in increasing order.
  std::vector<StateId> successors(StateId s) const;
};

/// B(s) for every state of an IDTMC.
struct MemorylessChoice {
  std::vector<Distribution> choice;
};

/// A scheduler defined on every run of at most `depth` states that it can
/// reach. Runs outside the map are never reached.
struct DepthBoundedScheduler {
  std::size_t depth = 0;
  std::map<Run, Distribution> choice;
};

struct Violation {
  std::string kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_model(const Pts& pts);
ValidationReport validate_model(const Idtmc& idtmc);

/// True iff {f : f(i) in intervals[i], sum f = 1} is non-empty, honouring
/// open bounds.
bool polytope_nonempty(const std::vector<Interval>& intervals);
bool state_polytope_nonempty(const Idtmc& idtmc, StateId s);

/// Membership of `f` in T(s), open bounds included.
bool in_state_polytope(const Idtmc& idtmc, StateId s, const Distribution& f);

/// Vertices of the closure of T(s), duplicate-free, in lexicographic order of
/// their dense coordinate vectors over successors(s). Throws EmptyPolytope.
std::vector<Distribution> polytope_vertices(const Idtmc& idtmc, StateId s);

/// The PTS S(B). Throws ChoiceOutsideInterval naming the offending edge.
Pts schedule_memoryless(const Idtmc& idtmc, const MemorylessChoice& choice);

/// A PTS read as an IDTMC whose intervals are points.
Idtmc as_idtmc(const Pts& pts);

/// NBA accepting the label traces of the infinite runs. One state per model
/// state plus an initial dispatch state; every state accepts.
Nba trace_nba(const Pts& pts);
/// Edges are those with a non-zero upper bound.
Nba trace_nba(const Idtmc& idtmc);

/// A finite tree of runs with their cone probabilities. Node 0 is the root;
/// children of a node extend its run by one state.
struct Unfolding {
  struct Node {
    StateId state = 0;
    Letter letter = 0;
    Rational probability;  // cone probability of the run ending here
    std::size_t parent = 0;
    std::size_t length = 1;  // number of states in the run
  };
  Alphabet alphabet;
  std::vector<Node> nodes;
};

/// Unfolds a PTS into all runs of at most `length` states.
Unfolding unfold(const Pts& pts, std::size_t length);
/// Unfolds S(A) into all runs of at most `length` states; length - 1 must not
/// exceed the scheduler depth. Throws ChoiceOutsideInterval on invalid choices
/// and std::out_of_range if a reached run has no choice.
Unfolding unfold(const Idtmc& idtmc, const DepthBoundedScheduler& scheduler,
                 std::size_t length);

/// Checks that every assigned distribution respects T(lst(run)).
bool scheduler_respects_intervals(const Idtmc& idtmc, const DepthBoundedScheduler& scheduler);

/// A memoryless choice packaged as a depth-bounded scheduler over its
/// reachable runs.
DepthBoundedScheduler memoryless_scheduler(const Idtmc& idtmc, const MemorylessChoice& choice,
                                           std::size_t depth);

/// Sum of the values of a distribution.
Rational mass(const Distribution& d);

}  // namespace opacity
