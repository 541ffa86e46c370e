#pragma once

#include <cstddef>
#include <vector>

#include "opacity/automaton.hpp"
#include "opacity/model.hpp"

namespace opacity {

/// Ultimately periodic word prefix · cycle^ω. The cycle must be non-empty.
struct Lasso {
  std::vector<Letter> prefix;
  std::vector<Letter> cycle;
};

bool accepts(const Nba& nba, const Lasso& word);
bool accepts(const Dpa& dpa, const Lasso& word);

/// Language emptiness: no reachable cycle through an accepting state.
bool is_empty(const Nba& nba);
/// No reachable cycle whose minimal colour is even.
bool is_empty(const Dpa& dpa);

Dpa universal_dpa(const Alphabet& alphabet);
Dpa empty_dpa(const Alphabet& alphabet);

/// Re-indexes the letters of `dpa` to `alphabet`, which must hold the same
/// letters in any order.
Dpa with_alphabet(const Dpa& dpa, const Alphabet& alphabet);

/// Keeps the reachable part and renumbers colours to a dense range starting at
/// 1 or 2 with the same parity ordering.
Dpa compact(const Dpa& dpa);

/// Restricts to states that are reachable and can reach an accepting cycle.
Nba trim(const Nba& nba);

Dpa dpa_complement(const Dpa& dpa);
Nba dpa_to_nba(const Dpa& dpa);
/// Throws AlphabetMismatch.
Nba nba_intersect(const Nba& a, const Nba& b);

/// NBA over Σ_ob accepting the projections of the words of `a`. Throws
/// NotObservationLive if L(a) holds a word with finitely many observable
/// letters.
Nba nba_project(const Nba& a, const Observation& obs);
/// NBA over Σ for {w : π_ob(w) ∈ L(a)} restricted to words with infinitely
/// many observable letters.
Nba nba_inverse_project(const Nba& a, const Observation& obs);

struct DeterminizeOptions {
  std::size_t state_budget = 1'000'000;
};

/// Safra–Piterman determinization. Throws StateBudgetExceeded once the DPA
/// would exceed `options.state_budget` states.
Dpa nba_determinize(const Nba& nba, const DeterminizeOptions& options = {});

/// Every cycle reachable from the initial state visits an observable label.
bool check_observation_liveness(const Pts& pts, const Observation& obs);
bool check_observation_liveness(const Idtmc& idtmc, const Observation& obs);

/// Automaton sizes recorded while building the disclosure automaton.
struct DisclosureStats {
  std::size_t secret_violation_nba = 0;   // traces ∩ ¬φ
  std::size_t observed_nba = 0;           // after projection
  std::size_t masking_dpa = 0;            // O⁻¹(O(traces \ φ))
  std::size_t product_nba = 0;            // traces ∩ φ ∩ ¬masking
  std::size_t disclosure_dpa = 0;
};

/// DPA for (L(traces) ∩ L(phi)) \ O⁻¹(O(L(traces) \ L(phi))).
Dpa build_disclosure_dpa(const Nba& traces, const Dpa& phi, const Observation& obs,
                         const DeterminizeOptions& options = {},
                         DisclosureStats* stats = nullptr);

}  // namespace opacity
