#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "opacity/model.hpp"

namespace opacity {

using StatePair = std::pair<StateId, StateId>;

/// Satisfaction witness for a PTS against an IDTMC.
struct SatWitness {
  std::set<StatePair> relation;                             // (pts state, idtmc state)
  std::map<StatePair, std::map<StatePair, Rational>> joint;  // per pair: δ over Q × S
};

/// Simulation witness: the second model simulates the first.
struct SimWitness {
  std::set<StatePair> relation;
  /// Per pair (s1, s2): δ(s1')(s2') for every successor s1' that some
  /// distribution of T1(s1) can reach.
  std::map<StatePair, std::map<StateId, Distribution>> delta;
};

/// Pairs removed by the fixpoint, in deletion order, and why the verdict is
/// negative.
struct Refutation {
  std::vector<StatePair> removed;
  std::string reason;
};

template <typename Witness>
struct RelationResult {
  std::optional<Witness> witness;
  Refutation refutation;  // meaningful only without a witness
  bool holds() const { return witness.has_value(); }
};

using SatResult = RelationResult<SatWitness>;
using SimResult = RelationResult<SimWitness>;

/// Greatest fixpoint of per-pair transportation problems. Throws
/// AlphabetMismatch, InvalidModel.
SatResult check_satisfaction(const Pts& pts, const Idtmc& spec);

/// Does s2 simulate s1? Throws AlphabetMismatch, InvalidModel.
SimResult check_simulation_idtmc(const Idtmc& s1, const Idtmc& s2);
SimResult check_simulation_pts(const Pts& a1, const Pts& a2);

/// Checks every clause of the satisfaction definition. On failure, `why`
/// receives a description.
bool validate_sat_witness(const Pts& pts, const Idtmc& spec, const SatWitness& w,
                          std::string* why = nullptr);
/// Checks every clause of the simulation definition. The image condition is
/// decided by one exact LP per target bound over the true (open-bounded)
/// polytope, independently of the vertex method used by the checker.
bool validate_sim_witness(const Idtmc& s1, const Idtmc& s2, const SimWitness& w,
                          std::string* why = nullptr);
bool validate_sim_witness(const Pts& a1, const Pts& a2, const SimWitness& w,
                          std::string* why = nullptr);

/// δ_sim(q')(s') = δ_sat(q', s') / δ_sat(q', S); a witness that the spec
/// simulates the PTS seen as an IDTMC with point intervals. Throws
/// DegenerateRow, or Error if the result fails re-validation.
SimWitness sat_witness_to_simulation(const Pts& pts, const Idtmc& spec, const SatWitness& w);

struct BisimResult {
  bool bisimilar = false;
  /// Block of every state of the disjoint union; states of the second PTS
  /// are offset by the size of the first.
  std::vector<std::size_t> block;
  std::size_t blocks = 0;
};

/// Coarsest probabilistic bisimulation on the disjoint union. Throws
/// AlphabetMismatch.
BisimResult check_prob_bisimulation(const Pts& a1, const Pts& a2);

enum class TransferWeighting {
  /// Weights each related run by its share of the coupling built so far;
  /// keeps cone probabilities equal.
  Coupling,
  /// Weights related runs proportionally to their probability in S1(A1),
  /// literally. Can break cone equality when sim classes differ from trace
  /// classes.
  RunProbability,
};

/// Builds a scheduler for s2, defined on every reachable run of at most
/// `depth` states, that mirrors `a1` through the witness. Throws
/// UnreachableSimClass when a reachable run has no related run of positive
/// probability.
DepthBoundedScheduler transfer_scheduler(const Idtmc& s1, const Idtmc& s2, const SimWitness& w,
                                         const DepthBoundedScheduler& a1, std::size_t depth,
                                         TransferWeighting weighting = TransferWeighting::Coupling);

struct ConeReport {
  Rational max_discrepancy;
  std::vector<Letter> worst_word;  // a word attaining it (empty if none)
  std::vector<std::vector<Letter>> only_first;   // traces of the first system only
  std::vector<std::vector<Letter>> only_second;  // and of the second only
  bool equal() const { return max_discrepancy == 0 && only_first.empty() && only_second.empty(); }
};

/// Compares cone probabilities of all words of length 1..k.
ConeReport verify_cone_equality(const Unfolding& u1, const Unfolding& u2, std::size_t k);
ConeReport verify_cone_equality(const Pts& a1, const Pts& a2, std::size_t k);

}  // namespace opacity
