#pragma once

#include <optional>
#include <vector>

#include "opacity/model.hpp"

namespace opacity {

struct MinProbability {
  Rational value;   // infimum of f(t) over f in T(s)
  bool attainable = false;
};

/// Throws EmptyPolytope.
MinProbability min_edge_probability(const Idtmc& spec, StateId s, StateId t);

struct ModalReport {
  struct Edge {
    StateId from = 0, to = 0;
    bool modal = false;
    MinProbability min;
  };
  std::vector<Edge> edges;  // every edge with a non-zero upper bound
  std::vector<Edge> modal() const;
  bool any_modal() const { return !modal().empty(); }
};

/// Classifies every edge by comparing the other edges' maxima with 1. Throws
/// EmptyPolytope.
ModalReport modal_edges(const Idtmc& spec);

/// Some f in T(s) with f(t) = p for every (t, p) in `fixed`, found by an
/// exact LP; nullopt if there is none.
std::optional<Distribution> feasible_distribution(const Idtmc& spec, StateId s,
                                                  const Distribution& fixed = {});

/// A memoryless choice giving probability 0 to the edge s -> t, if one exists.
std::optional<MemorylessChoice> blocking_choice(const Idtmc& spec, StateId s, StateId t);

}  // namespace opacity
