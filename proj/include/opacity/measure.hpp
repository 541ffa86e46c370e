#pragma once

#include <cstdint>
#include <vector>

#include "opacity/automata.hpp"
#include "opacity/model.hpp"

namespace opacity {

/// P_pts(L(dpa)), exact. The DPA reads the label of the initial state first.
/// Throws AlphabetMismatch.
Rational omega_probability(const Pts& pts, const Dpa& dpa);

/// Probability of the cone of a finite word; the word starts with the
/// initial label. The empty word has probability 1.
Rational cone_probability(const Pts& pts, const std::vector<Letter>& word);

/// P_pts(V(pts, obs, phi)). Throws NotObservationLive, StateBudgetExceeded.
Rational disclosure_pts(const Pts& pts, const Observation& obs, const Dpa& phi,
                        const DeterminizeOptions& options = {}, DisclosureStats* stats = nullptr);

/// Disclosure of phi plus disclosure of its complement.
Rational symmetric_disclosure_pts(const Pts& pts, const Observation& obs, const Dpa& phi,
                                  const DeterminizeOptions& options = {});

struct MonteCarloEstimate {
  std::size_t samples = 0;
  std::size_t hits = 0;
  double estimate = 0;
  double lower = 0;  // Wilson score interval, 95%
  double upper = 0;
};

/// Samples runs until they enter a bottom SCC of the product with `dpa`.
/// Deterministic for a given seed. Throws HorizonTooShort if a run has not
/// reached a bottom SCC after `horizon` steps.
MonteCarloEstimate monte_carlo_probability(const Pts& pts, const Dpa& dpa, std::size_t samples,
                                           std::size_t horizon, std::uint64_t seed);

}  // namespace opacity
