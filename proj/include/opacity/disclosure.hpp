#pragma once

#include <vector>

#include "opacity/automata.hpp"
#include "opacity/model.hpp"

namespace opacity {

/// Finite MDP with exact transition probabilities.
struct Mdp {
  using Action = std::vector<std::pair<std::size_t, Rational>>;  // successor, probability
  std::vector<std::vector<Action>> actions;                      // [state][action]
  std::size_t init = 0;

  std::size_t size() const { return actions.size(); }
};

/// Same model with every bound closed.
Idtmc close_intervals(const Idtmc& spec);

/// Product of a closed IDTMC with a DPA, one action per polytope vertex. The
/// DPA component has already read the label of the IDTMC component.
struct VertexMdp {
  Mdp mdp;
  std::vector<std::pair<StateId, StateId>> states;  // (idtmc state, dpa state)
  std::vector<unsigned> color;
  std::vector<std::vector<Distribution>> vertex;    // [state][action], over idtmc states
};

/// Throws EmptyPolytope, AlphabetMismatch.
VertexMdp build_vertex_mdp(const Idtmc& closed, const Dpa& v);

struct EndComponent {
  std::vector<std::size_t> states;
  std::vector<std::vector<std::size_t>> actions;  // retained actions, per entry of `states`
};

/// Maximal end components among the states flagged in `within` (all when
/// empty), using only actions that stay inside.
std::vector<EndComponent> mec_decompose(const Mdp& mdp, const std::vector<bool>& within = {});

/// End components in which some policy keeps the minimal colour even
/// forever, found by peeling off odd minimal colours.
std::vector<EndComponent> winning_end_components(const VertexMdp& m);
/// States of winning_end_components().
std::vector<bool> winning_mecs(const VertexMdp& m);

struct Reachability {
  std::vector<Rational> value;
  std::vector<std::size_t> policy;  // action index per state
};

/// Exact maximal probability of reaching `target`, by policy iteration after
/// graph-based detection of the value-0 and value-1 states.
Reachability max_reachability(const Mdp& mdp, const std::vector<bool>& target);

struct DisclosureResult {
  Rational value;
  Dpa disclosure_dpa;
  /// Product states and, for each, the distribution over IDTMC successors
  /// that the witness policy plays there.
  std::vector<std::pair<StateId, StateId>> product_states;
  std::vector<Distribution> policy;
  bool closure_applied = false;     // some bound of the input was open
  bool supremum_attained = true;    // the policy respects the open bounds, or the value is 0
  DisclosureStats automata;
  std::size_t mdp_states = 0;
  std::size_t mdp_actions = 0;
};

/// Worst-case disclosure over the schedulers of a non-modal IDTMC. Throws
/// ModalEdgesPresent, NotObservationLive, StateBudgetExceeded.
DisclosureResult max_disclosure(const Idtmc& spec, const Observation& obs, const Dpa& phi,
                                const DeterminizeOptions& options = {});

/// The witness policy folded into a PTS over the product states; its
/// probability of L(disclosure_dpa) equals the value.
Pts scheduled_product(const Idtmc& spec, const DisclosureResult& result);

}  // namespace opacity
