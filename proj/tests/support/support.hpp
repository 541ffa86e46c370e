#pragma once

// Random model generators and brute-force oracles shared by the unit tests
// and the acceptance binary. The oracles avoid the library's algorithms: they
// enumerate, search explicit graphs or run max-flow instead.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "opacity/automata.hpp"
#include "opacity/disclosure.hpp"
#include "opacity/model.hpp"

namespace opacity::testing {

using Rng = std::mt19937_64;

std::string models_dir();
Pts fig_pts(const std::string& file);
Idtmc fig_idtmc(const std::string& file);
Dpa fig_dpa(const std::string& file);

Alphabet letters(std::size_t n);  // a, b, c, ...
Lasso lasso(const Alphabet& sigma, const std::string& prefix, const std::string& cycle);

// ---- generators ----

Rational random_probability(Rng& rng, int max_den = 6);
/// Positive weights on every state of `support`, summing to 1.
Distribution random_distribution(Rng& rng, const std::vector<StateId>& support);
Pts random_pts(Rng& rng, std::size_t states, std::size_t letters, std::size_t max_succ = 3);
/// Edges only go forward, except that the last few states are absorbing, so
/// runs split between several bottom components.
Pts random_branching_pts(Rng& rng, std::size_t states, std::size_t letters, std::size_t max_succ = 3);

struct IntervalStyle {
  bool open_bounds = true;     // may produce open ends
  bool zero_lower = true;      // may produce a closed lower bound 0
};
/// Intervals around `base`, each containing the base probability.
Idtmc around(Rng& rng, const Pts& base, const IntervalStyle& style = {});
/// Every interval of `s` enlarged; the result contains the original.
Idtmc widen(Rng& rng, const Idtmc& s, const IntervalStyle& style = {});
/// Copies a random non-initial state, splitting its incoming intervals in
/// half. The original simulates the result. Returns nullopt when there is no
/// state to split.
std::optional<Idtmc> split_state(Rng& rng, const Idtmc& s);

/// Intervals for up to `succ` edges of one state, with random open/closed
/// bounds and a non-empty polytope.
std::vector<Interval> random_state_intervals(Rng& rng, std::size_t succ);
/// IDTMC whose state 0 has the given outgoing intervals towards states
/// 1..k; those states loop on themselves.
Idtmc star(const std::vector<Interval>& intervals);

Dpa random_dpa(Rng& rng, const Alphabet& sigma, std::size_t states, unsigned colors);
/// Accepts according to a random verdict on the first `depth` letters.
Dpa random_prefix_dpa(Rng& rng, const Alphabet& sigma, std::size_t depth);
Lasso random_lasso(Rng& rng, std::size_t letters, std::size_t max_prefix, std::size_t max_cycle);
Observation random_observation(Rng& rng, const Alphabet& sigma);
Mdp random_mdp(Rng& rng, std::size_t states, std::size_t max_actions, std::size_t max_succ = 3);

bool non_modal(const Idtmc& s);

struct SimPair {
  Idtmc s1, s2;
};
/// A non-modal pair with s2 simulating s1 per check_simulation_idtmc, built
/// by narrowing, widening and splitting around a random PTS (a branching one
/// when `branching` is set).
SimPair random_simulating_pair(Rng& rng, std::size_t max_states, std::size_t letters,
                               bool branching = false);

// ---- oracles ----

/// Vertices of the closure of T(s) by enumerating bound patterns: every
/// coordinate but at most one sits at a bound. Sorted like
/// polytope_vertices().
std::vector<Distribution> vertex_oracle(const Idtmc& s, StateId state);

/// max f(target) over the closure of T(state), through vertex_oracle.
Rational single_step_max(const Idtmc& s, StateId state, StateId target);

/// Infimum of f(t) over T(s) and whether it is attained, from the vertices
/// of the closure and a closed-form check of the open bounds.
struct MinOracle {
  Rational value;
  bool attainable = false;
};
MinOracle min_probability_oracle(const Idtmc& s, StateId state, StateId t);

bool dpa_member(const Dpa& dpa, const Lasso& w);
bool nba_member(const Nba& nba, const Lasso& w);
/// Some infinite path of the model graph reads w (edge = positive upper bound).
bool trace_member(const Pts& pts, const Lasso& w);
bool trace_member(const Idtmc& s, const Lasso& w);
/// w is a trace of `model` in L(phi) and no trace outside L(phi) has the
/// same observation. `model` must be observation-live.
bool disclosure_member(const Idtmc& model, const Dpa& phi, const Observation& obs, const Lasso& w);

/// Max reachability per state by enumerating every memoryless deterministic
/// policy and solving each induced chain.
std::vector<Rational> reach_oracle(const Mdp& mdp, const std::vector<bool>& target);

/// States lying in some end component (state subset closed under a
/// non-empty set of actions, strongly connected) whose minimal colour is even.
std::vector<bool> winning_oracle(const Mdp& mdp, const std::vector<unsigned>& color);

/// Simulation of PTSs by enumerating candidate relations; each pair is
/// checked by max-flow.
bool sim_pts_oracle(const Pts& a1, const Pts& a2);
/// Satisfaction for closed intervals by enumerating candidate relations;
/// each pair is checked by a flow with lower bounds.
bool sat_closed_oracle(const Pts& pts, const Idtmc& spec);

}  // namespace opacity::testing
