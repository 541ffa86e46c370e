#include "opacity/automata.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <tuple>
#include <deque>
#include <map>
#include <set>

#include "graph.hpp"
#include "opacity/errors.hpp"

namespace opacity {

namespace {

using detail::strongly_connected_components;

// Successor lists of an NBA with letters forgotten.
std::vector<std::vector<std::size_t>> flat_graph(const Nba& nba) {
  std::vector<std::vector<std::size_t>> adj(nba.size());
  for (StateId s = 0; s < nba.size(); ++s) {
    for (const auto& targets : nba.succ[s]) adj[s].insert(adj[s].end(), targets.begin(), targets.end());
    std::sort(adj[s].begin(), adj[s].end());
    adj[s].erase(std::unique(adj[s].begin(), adj[s].end()), adj[s].end());
  }
  return adj;
}

// Marks nodes lying in a non-trivial SCC (one with at least one internal edge).
template <typename Adjacency>
std::vector<bool> on_cycle(std::size_t n, const Adjacency& adj, const detail::SccDecomposition& scc,
                           const std::vector<bool>& active = {}) {
  std::vector<std::size_t> sizes(scc.count, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (scc.component[v] != detail::SccDecomposition::npos) ++sizes[scc.component[v]];
  }
  std::vector<bool> cyclic(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    const auto c = scc.component[v];
    if (c == detail::SccDecomposition::npos) continue;
    if (sizes[c] > 1) {
      cyclic[v] = true;
      continue;
    }
    for (auto w : adj[v]) {
      if (w == v && (active.empty() || active[w])) cyclic[v] = true;
    }
  }
  return cyclic;
}

std::vector<Letter> lasso_letters(const Lasso& word) {
  std::vector<Letter> all = word.prefix;
  all.insert(all.end(), word.cycle.begin(), word.cycle.end());
  return all;
}

}  // namespace

bool accepts(const Nba& nba, const Lasso& word) {
  if (word.cycle.empty()) throw std::invalid_argument("lasso cycle must not be empty");
  const auto letters = lasso_letters(word);
  const std::size_t len = letters.size(), p = word.prefix.size();
  const std::size_t n = nba.size() * len;
  auto node = [&](StateId q, std::size_t pos) { return q * len + pos; };
  std::vector<std::vector<std::size_t>> adj(n);
  for (StateId q = 0; q < nba.size(); ++q) {
    for (std::size_t pos = 0; pos < len; ++pos) {
      const std::size_t next = pos + 1 < len ? pos + 1 : p;
      for (StateId t : nba.succ[q][letters[pos]]) adj[node(q, pos)].push_back(node(t, next));
    }
  }
  std::vector<std::size_t> sources;
  for (StateId i : nba.initial) sources.push_back(node(i, 0));
  const auto reach = detail::reachable_from(n, adj, sources);
  const auto scc = strongly_connected_components(n, adj, reach);
  const auto cyclic = on_cycle(n, adj, scc, reach);
  for (std::size_t v = 0; v < n; ++v) {
    if (reach[v] && cyclic[v] && nba.accepting[v / len]) return true;
  }
  return false;
}

bool accepts(const Dpa& dpa, const Lasso& word) {
  if (word.cycle.empty()) throw std::invalid_argument("lasso cycle must not be empty");
  StateId q = dpa.init;
  for (Letter a : word.prefix) q = dpa.next[q][a];
  std::map<StateId, std::size_t> first_seen;  // state at the start of a cycle pass
  std::vector<unsigned> pass_min;
  while (!first_seen.contains(q)) {
    first_seen.emplace(q, pass_min.size());
    unsigned lowest = ~0u;
    for (Letter a : word.cycle) {
      q = dpa.next[q][a];
      lowest = std::min(lowest, dpa.color[q]);
    }
    pass_min.push_back(lowest);
  }
  unsigned inf_min = ~0u;
  for (std::size_t i = first_seen[q]; i < pass_min.size(); ++i) inf_min = std::min(inf_min, pass_min[i]);
  return inf_min % 2 == 0;
}

bool is_empty(const Nba& nba) {
  const auto adj = flat_graph(nba);
  const auto reach = detail::reachable_from(nba.size(), adj, nba.initial);
  const auto scc = strongly_connected_components(nba.size(), adj, reach);
  const auto cyclic = on_cycle(nba.size(), adj, scc, reach);
  for (StateId s = 0; s < nba.size(); ++s) {
    if (reach[s] && cyclic[s] && nba.accepting[s]) return false;
  }
  return true;
}

bool is_empty(const Dpa& dpa) {
  std::vector<std::vector<std::size_t>> adj(dpa.size());
  for (StateId s = 0; s < dpa.size(); ++s) adj[s].assign(dpa.next[s].begin(), dpa.next[s].end());
  const auto reach = detail::reachable_from(dpa.size(), adj, {dpa.init});
  std::set<unsigned> evens;
  for (StateId s = 0; s < dpa.size(); ++s) {
    if (reach[s] && dpa.color[s] % 2 == 0) evens.insert(dpa.color[s]);
  }
  for (unsigned c : evens) {
    std::vector<bool> active(dpa.size());
    for (StateId s = 0; s < dpa.size(); ++s) active[s] = reach[s] && dpa.color[s] >= c;
    const auto scc = strongly_connected_components(dpa.size(), adj, active);
    const auto cyclic = on_cycle(dpa.size(), adj, scc, active);
    for (StateId s = 0; s < dpa.size(); ++s) {
      if (active[s] && cyclic[s] && dpa.color[s] == c) return false;
    }
  }
  return true;
}

Dpa universal_dpa(const Alphabet& alphabet) {
  Dpa d;
  d.alphabet = alphabet;
  d.next = {std::vector<StateId>(alphabet.size(), 0)};
  d.color = {2};
  return d;
}

Dpa empty_dpa(const Alphabet& alphabet) {
  Dpa d = universal_dpa(alphabet);
  d.color = {1};
  return d;
}

Dpa with_alphabet(const Dpa& dpa, const Alphabet& alphabet) {
  if (dpa.alphabet == alphabet) return dpa;
  if (dpa.alphabet.size() != alphabet.size()) {
    require_same_alphabet(dpa.alphabet, alphabet, "automaton");
  }
  std::vector<Letter> from(alphabet.size());
  for (Letter l = 0; l < alphabet.size(); ++l) {
    auto old = dpa.alphabet.find(alphabet.name(l));
    if (!old) require_same_alphabet(dpa.alphabet, alphabet, "automaton");
    from[l] = *old;
  }
  Dpa out = dpa;
  out.alphabet = alphabet;
  for (StateId s = 0; s < dpa.size(); ++s) {
    for (Letter l = 0; l < alphabet.size(); ++l) out.next[s][l] = dpa.next[s][from[l]];
  }
  return out;
}

Dpa compact(const Dpa& dpa) {
  std::vector<StateId> order{dpa.init};
  std::vector<std::size_t> index(dpa.size(), SIZE_MAX);
  index[dpa.init] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (StateId t : dpa.next[order[i]]) {
      if (index[t] == SIZE_MAX) {
        index[t] = order.size();
        order.push_back(t);
      }
    }
  }
  std::set<unsigned> used;
  for (StateId s : order) used.insert(dpa.color[s]);
  std::map<unsigned, unsigned> remap;
  unsigned current = 0;
  bool first = true;
  unsigned previous = 0;
  for (unsigned c : used) {
    if (first) {
      current = c % 2 == 0 ? 2 : 1;
      first = false;
    } else if (c % 2 != previous % 2) {
      ++current;
    }
    remap[c] = current;
    previous = c;
  }
  Dpa out;
  out.alphabet = dpa.alphabet;
  out.init = 0;
  for (StateId s : order) {
    std::vector<StateId> row;
    for (StateId t : dpa.next[s]) row.push_back(index[t]);
    out.next.push_back(std::move(row));
    out.color.push_back(remap[dpa.color[s]]);
    if (!dpa.state_names.empty()) out.state_names.push_back(dpa.state_name(s));
  }
  return out;
}

Nba trim(const Nba& nba) {
  const auto adj = flat_graph(nba);
  const auto reach = detail::reachable_from(nba.size(), adj, nba.initial);
  const auto scc = strongly_connected_components(nba.size(), adj, reach);
  const auto cyclic = on_cycle(nba.size(), adj, scc, reach);
  // accepting states on a cycle, then everything that reaches one
  std::vector<std::vector<std::size_t>> radj(nba.size());
  for (StateId s = 0; s < nba.size(); ++s) {
    for (auto t : adj[s]) radj[t].push_back(s);
  }
  std::vector<std::size_t> good;
  for (StateId s = 0; s < nba.size(); ++s) {
    if (reach[s] && cyclic[s] && nba.accepting[s]) good.push_back(s);
  }
  const auto useful = detail::reachable_from(nba.size(), radj, good, reach);

  Nba out(nba.alphabet);
  std::vector<StateId> index(nba.size(), SIZE_MAX);
  for (StateId s = 0; s < nba.size(); ++s) {
    if (useful[s]) index[s] = out.add_state(nba.accepting[s]);
  }
  for (StateId s = 0; s < nba.size(); ++s) {
    if (!useful[s]) continue;
    for (Letter a = 0; a < nba.alphabet.size(); ++a) {
      for (StateId t : nba.succ[s][a]) {
        if (useful[t]) out.add_transition(index[s], a, index[t]);
      }
    }
  }
  for (StateId i : nba.initial) {
    if (useful[i]) out.initial.push_back(index[i]);
  }
  return out;
}

Dpa dpa_complement(const Dpa& dpa) {
  Dpa out = dpa;
  for (auto& c : out.color) ++c;
  return out;
}

Nba dpa_to_nba(const Dpa& dpa) {
  // Copy 0 tracks the run; copy c (c even) guesses that from now on no colour
  // below c occurs and that c occurs infinitely often.
  std::set<unsigned> evens;
  for (unsigned c : dpa.color) {
    if (c % 2 == 0) evens.insert(c);
  }
  std::vector<unsigned> copies{0};
  copies.insert(copies.end(), evens.begin(), evens.end());
  const std::size_t n = dpa.size();
  Nba nba(dpa.alphabet);
  std::vector<std::vector<StateId>> id(copies.size(), std::vector<StateId>(n, SIZE_MAX));
  for (std::size_t k = 0; k < copies.size(); ++k) {
    for (StateId q = 0; q < n; ++q) {
      if (k == 0 || dpa.color[q] >= copies[k]) id[k][q] = nba.add_state(k > 0 && dpa.color[q] == copies[k]);
    }
  }
  for (std::size_t k = 0; k < copies.size(); ++k) {
    if (id[k][dpa.init] != SIZE_MAX) nba.initial.push_back(id[k][dpa.init]);
  }
  for (StateId q = 0; q < n; ++q) {
    for (Letter a = 0; a < dpa.alphabet.size(); ++a) {
      const StateId t = dpa.next[q][a];
      nba.add_transition(id[0][q], a, id[0][t]);
      for (std::size_t k = 1; k < copies.size(); ++k) {
        if (id[k][t] == SIZE_MAX) continue;
        nba.add_transition(id[0][q], a, id[k][t]);
        if (id[k][q] != SIZE_MAX) nba.add_transition(id[k][q], a, id[k][t]);
      }
    }
  }
  return trim(nba);
}

Nba nba_intersect(const Nba& a, const Nba& b) {
  require_same_alphabet(a.alphabet, b.alphabet, "intersection");
  const bool a_all = std::all_of(a.accepting.begin(), a.accepting.end(), [](bool x) { return x; });
  const bool b_all = std::all_of(b.accepting.begin(), b.accepting.end(), [](bool x) { return x; });
  const bool plain = a_all || b_all;  // no flag needed when one side accepts everywhere

  Nba out(a.alphabet);
  std::map<std::tuple<StateId, StateId, int>, StateId> index;
  std::deque<std::tuple<StateId, StateId, int>> todo;
  auto accepting = [&](StateId p, StateId q, int flag) {
    if (plain) return a_all ? bool(b.accepting[q]) : bool(a.accepting[p]);
    return flag == 0 && a.accepting[p];
  };
  auto get = [&](StateId p, StateId q, int flag) {
    const auto key = std::make_tuple(p, q, flag);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const StateId id = out.add_state(accepting(p, q, flag));
    index.emplace(key, id);
    todo.push_back(key);
    return id;
  };
  for (StateId p : a.initial) {
    for (StateId q : b.initial) out.initial.push_back(get(p, q, 0));
  }
  while (!todo.empty()) {
    const auto [p, q, flag] = todo.front();
    todo.pop_front();
    const StateId from = index.at({p, q, flag});
    int next_flag = flag;
    if (!plain) {
      if (flag == 0 && a.accepting[p]) next_flag = 1;
      else if (flag == 1 && b.accepting[q]) next_flag = 0;
    }
    for (Letter l = 0; l < a.alphabet.size(); ++l) {
      for (StateId p2 : a.succ[p][l]) {
        for (StateId q2 : b.succ[q][l]) out.add_transition(from, l, get(p2, q2, next_flag));
      }
    }
  }
  return trim(out);
}

Nba nba_project(const Nba& input, const Observation& obs) {
  require_same_alphabet(input.alphabet, obs.alphabet(), "projection");
  const Nba a = trim(input);
  const std::size_t n = a.size();

  // An accepting state on a silent cycle means some accepted word has only
  // finitely many observable letters.
  std::vector<std::vector<std::size_t>> silent(n);
  for (StateId s = 0; s < n; ++s) {
    for (Letter l = 0; l < a.alphabet.size(); ++l) {
      if (!obs.observable(l)) silent[s].insert(silent[s].end(), a.succ[s][l].begin(), a.succ[s][l].end());
    }
  }
  {
    const auto scc = strongly_connected_components(n, silent);
    const auto cyclic = on_cycle(n, silent, scc);
    for (StateId s = 0; s < n; ++s) {
      if (cyclic[s] && a.accepting[s]) {
        throw NotObservationLive("an accepted word has finitely many observable letters");
      }
    }
  }

  // closure[s]: (state, visited-accepting) pairs reachable from s by silent moves
  std::vector<std::vector<std::pair<StateId, bool>>> closure(n);
  for (StateId s = 0; s < n; ++s) {
    std::vector<std::array<bool, 2>> seen(n, {false, false});
    std::vector<std::pair<StateId, bool>> stack{{s, a.accepting[s]}};
    seen[s][a.accepting[s]] = true;
    while (!stack.empty()) {
      const auto [v, flag] = stack.back();
      stack.pop_back();
      closure[s].push_back({v, flag});
      for (auto w : silent[v]) {
        const bool f = flag || a.accepting[w];
        if (!seen[w][f]) {
          seen[w][f] = true;
          stack.push_back({w, f});
        }
      }
    }
  }

  Nba out(obs.observed_alphabet());
  for (StateId s = 0; s < n; ++s) {
    out.add_state(false);
    out.add_state(true);
  }
  auto id = [](StateId s, bool flag) { return 2 * s + (flag ? 1 : 0); };
  for (StateId i : a.initial) {
    for (const auto& [q, f] : closure[i]) out.initial.push_back(id(q, f));
  }
  std::sort(out.initial.begin(), out.initial.end());
  out.initial.erase(std::unique(out.initial.begin(), out.initial.end()), out.initial.end());
  for (StateId s = 0; s < n; ++s) {
    for (Letter l = 0; l < a.alphabet.size(); ++l) {
      if (!obs.observable(l)) continue;
      const Letter ol = obs.to_observed(l);
      for (StateId t : a.succ[s][l]) {
        for (const auto& [q, f] : closure[t]) {
          out.add_transition(id(s, false), ol, id(q, f));
          out.add_transition(id(s, true), ol, id(q, f));
        }
      }
    }
  }
  return trim(out);
}

Nba nba_inverse_project(const Nba& a, const Observation& obs) {
  require_same_alphabet(a.alphabet, obs.observed_alphabet(), "inverse projection");
  const Alphabet& sigma = obs.alphabet();
  Nba out(sigma);
  // (q, 0): reached by an unobservable letter; (q, 1): by an observable one.
  for (StateId s = 0; s < a.size(); ++s) {
    out.add_state(false);
    out.add_state(a.accepting[s]);
  }
  for (StateId i : a.initial) out.initial.push_back(2 * i + 1);
  for (StateId s = 0; s < a.size(); ++s) {
    for (int o = 0; o < 2; ++o) {
      const StateId from = 2 * s + o;
      for (Letter l = 0; l < sigma.size(); ++l) {
        if (!obs.observable(l)) {
          out.add_transition(from, l, 2 * s);
          continue;
        }
        for (StateId t : a.succ[s][obs.to_observed(l)]) out.add_transition(from, l, 2 * t + 1);
      }
    }
  }
  return trim(out);
}

namespace {

template <typename Model, typename Successors>
bool liveness_impl(const Model& m, const Observation& obs, Successors&& successors) {
  require_same_alphabet(m.alphabet, obs.alphabet(), "observation");
  std::vector<std::vector<std::size_t>> adj(m.size());
  for (StateId s = 0; s < m.size(); ++s) adj[s] = successors(s);
  const auto reach = detail::reachable_from(m.size(), adj, {m.init});
  std::vector<bool> hidden(m.size());
  for (StateId s = 0; s < m.size(); ++s) hidden[s] = reach[s] && !obs.observable(m.label[s]);
  const auto scc = strongly_connected_components(m.size(), adj, hidden);
  const auto cyclic = on_cycle(m.size(), adj, scc, hidden);
  for (StateId s = 0; s < m.size(); ++s) {
    if (hidden[s] && cyclic[s]) return false;
  }
  return true;
}

}  // namespace

bool check_observation_liveness(const Pts& pts, const Observation& obs) {
  return liveness_impl(pts, obs, [&](StateId s) {
    std::vector<std::size_t> out;
    for (const auto& [t, p] : pts.delta[s]) out.push_back(t);
    return out;
  });
}

bool check_observation_liveness(const Idtmc& idtmc, const Observation& obs) {
  return liveness_impl(idtmc, obs, [&](StateId s) {
    const auto succ = idtmc.successors(s);
    return std::vector<std::size_t>(succ.begin(), succ.end());
  });
}

Dpa build_disclosure_dpa(const Nba& traces, const Dpa& phi_in, const Observation& obs,
                         const DeterminizeOptions& options, DisclosureStats* stats) {
  const Dpa phi = with_alphabet(phi_in, traces.alphabet);
  require_same_alphabet(traces.alphabet, obs.alphabet(), "disclosure");
  DisclosureStats local;

  // Words of the model outside the secret, and everything they look like.
  const Nba outside = nba_intersect(traces, dpa_to_nba(dpa_complement(phi)));
  local.secret_violation_nba = outside.size();
  const Nba observed = nba_project(outside, obs);
  local.observed_nba = observed.size();
  const Dpa masking = compact(nba_determinize(nba_inverse_project(observed, obs), options));
  local.masking_dpa = masking.size();

  const Nba inside = nba_intersect(traces, dpa_to_nba(phi));
  const Nba product = nba_intersect(inside, dpa_to_nba(dpa_complement(masking)));
  local.product_nba = product.size();
  Dpa result = product.size() == 0 ? empty_dpa(traces.alphabet)
                                   : compact(nba_determinize(product, options));
  local.disclosure_dpa = result.size();
  if (stats) *stats = local;
  return result;
}

}  // namespace opacity
