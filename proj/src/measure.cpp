#include "opacity/measure.hpp"

#include <cmath>
#include <map>
#include <random>

#include "graph.hpp"
#include "linear_solve.hpp"
#include "opacity/errors.hpp"

namespace opacity {

namespace {

// Reachable part of pts × dpa. State i stands for (pts state, dpa state)
// where the dpa state has already read the pts label.
struct ProductChain {
  std::vector<std::pair<StateId, StateId>> states;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> edges;
  std::vector<unsigned> color;
  std::vector<bool> in_bscc;
  std::vector<bool> accepting_bscc;

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (const auto& [j, p] : edges[i]) adj[i].push_back(j);
    }
    return adj;
  }
};

ProductChain build_product(const Pts& pts, const Dpa& dpa_in) {
  const Dpa dpa = with_alphabet(dpa_in, pts.alphabet);
  ProductChain chain;
  std::map<std::pair<StateId, StateId>, std::size_t> index;
  auto get = [&](StateId s, StateId d) {
    auto [it, fresh] = index.emplace(std::make_pair(s, d), chain.states.size());
    if (fresh) {
      chain.states.push_back({s, d});
      chain.color.push_back(dpa.color[d]);
      chain.edges.emplace_back();
    }
    return it->second;
  };
  get(pts.init, dpa.next[dpa.init][pts.label[pts.init]]);
  for (std::size_t i = 0; i < chain.states.size(); ++i) {
    const auto [s, d] = chain.states[i];
    for (const auto& [t, p] : pts.delta[s]) {
      const std::size_t j = get(t, dpa.next[d][pts.label[t]]);
      chain.edges[i].push_back({j, p});
    }
  }

  const std::size_t n = chain.states.size();
  const auto adj = chain.adjacency();
  const auto scc = detail::strongly_connected_components(n, adj);
  std::vector<bool> bottom(scc.count, true);
  std::vector<unsigned> min_color(scc.count, ~0u);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = scc.component[i];
    min_color[c] = std::min(min_color[c], chain.color[i]);
    for (auto j : adj[i]) {
      if (scc.component[j] != c) bottom[c] = false;
    }
  }
  chain.in_bscc.resize(n);
  chain.accepting_bscc.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = scc.component[i];
    chain.in_bscc[i] = bottom[c];
    chain.accepting_bscc[i] = bottom[c] && min_color[c] % 2 == 0;
  }
  return chain;
}

}  // namespace

Rational omega_probability(const Pts& pts, const Dpa& dpa) {
  const ProductChain chain = build_product(pts, dpa);
  const std::size_t n = chain.states.size();
  const auto adj = chain.adjacency();
  std::vector<std::vector<std::size_t>> radj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : adj[i]) radj[j].push_back(i);
  }
  std::vector<std::size_t> good, bad;
  for (std::size_t i = 0; i < n; ++i) {
    if (chain.accepting_bscc[i]) good.push_back(i);
  }
  const auto can_win = detail::reachable_from(n, radj, good);
  for (std::size_t i = 0; i < n; ++i) {
    if (!can_win[i]) bad.push_back(i);
  }
  const auto can_lose = detail::reachable_from(n, radj, bad);
  if (!can_win[0]) return 0;
  if (!can_lose[0]) return 1;

  // x_i = sum_j P(i,j) x_j over the undecided states
  std::vector<std::size_t> var(n, SIZE_MAX);
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (can_win[i] && can_lose[i]) var[i] = m++;
  }
  std::vector<detail::SparseRow> rows(m);
  for (std::size_t i = 0; i < n; ++i) {
    if (var[i] == SIZE_MAX) continue;
    auto& row = rows[var[i]];
    row.coef[var[i]] += 1;
    for (const auto& [j, p] : chain.edges[i]) {
      if (var[j] != SIZE_MAX) {
        row.coef[var[j]] -= p;
      } else if (can_win[j]) {
        row.rhs += p;
      }
    }
    for (auto it = row.coef.begin(); it != row.coef.end();) {
      it = it->second == 0 ? row.coef.erase(it) : std::next(it);
    }
  }
  return detail::solve_linear(std::move(rows), m)[var[0]];
}

Rational cone_probability(const Pts& pts, const std::vector<Letter>& word) {
  if (word.empty()) return 1;
  if (pts.label[pts.init] != word[0]) return 0;
  std::map<StateId, Rational> mass{{pts.init, Rational(1)}};
  for (std::size_t k = 1; k < word.size() && !mass.empty(); ++k) {
    std::map<StateId, Rational> next;
    for (const auto& [s, p] : mass) {
      for (const auto& [t, q] : pts.delta[s]) {
        if (pts.label[t] == word[k]) next[t] += p * q;
      }
    }
    mass = std::move(next);
  }
  Rational total = 0;
  for (const auto& [s, p] : mass) total += p;
  return total;
}

Rational disclosure_pts(const Pts& pts, const Observation& obs, const Dpa& phi,
                        const DeterminizeOptions& options, DisclosureStats* stats) {
  if (!check_observation_liveness(pts, obs)) {
    throw NotObservationLive("a reachable cycle of the model has only unobservable labels");
  }
  const Dpa v = build_disclosure_dpa(trace_nba(pts), phi, obs, options, stats);
  return omega_probability(pts, v);
}

Rational symmetric_disclosure_pts(const Pts& pts, const Observation& obs, const Dpa& phi,
                                  const DeterminizeOptions& options) {
  return disclosure_pts(pts, obs, phi, options) + disclosure_pts(pts, obs, dpa_complement(phi), options);
}

MonteCarloEstimate monte_carlo_probability(const Pts& pts, const Dpa& dpa, std::size_t samples,
                                           std::size_t horizon, std::uint64_t seed) {
  const ProductChain chain = build_product(pts, dpa);
  std::vector<std::discrete_distribution<std::size_t>> step;
  for (const auto& out : chain.edges) {
    std::vector<double> w;
    for (const auto& [j, p] : out) w.push_back(p.get_d());
    step.emplace_back(w.begin(), w.end());
  }
  std::mt19937_64 rng(seed);
  MonteCarloEstimate est;
  est.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    std::size_t i = 0, steps = 0;
    while (!chain.in_bscc[i]) {
      if (steps++ == horizon) {
        throw HorizonTooShort("run did not reach a bottom component within " + std::to_string(horizon) +
                              " steps");
      }
      i = chain.edges[i][step[i](rng)].first;
    }
    if (chain.accepting_bscc[i]) ++est.hits;
  }
  if (samples == 0) return est;
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(est.hits) / n;
  const double z = 1.959963984540054;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  est.estimate = p;
  est.lower = est.hits == 0 ? 0.0 : std::max(0.0, centre - half);
  est.upper = est.hits == samples ? 1.0 : std::min(1.0, centre + half);
  return est;
}

}  // namespace opacity
