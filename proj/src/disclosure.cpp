#include "opacity/disclosure.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "graph.hpp"
#include "linear_solve.hpp"
#include "opacity/errors.hpp"
#include "opacity/modal.hpp"

namespace opacity {

Idtmc close_intervals(const Idtmc& spec) {
  Idtmc out = spec;
  for (auto& row : out.edges) {
    for (auto& [t, iv] : row) iv = iv.closure();
  }
  return out;
}

VertexMdp build_vertex_mdp(const Idtmc& closed, const Dpa& v_in) {
  const Dpa v = with_alphabet(v_in, closed.alphabet);
  VertexMdp m;
  std::map<std::pair<StateId, StateId>, std::size_t> index;
  std::vector<std::optional<std::vector<Distribution>>> vertices(closed.size());
  auto get = [&](StateId s, StateId d) {
    auto [it, fresh] = index.emplace(std::make_pair(s, d), m.states.size());
    if (fresh) {
      m.states.push_back({s, d});
      m.color.push_back(v.color[d]);
    }
    return it->second;
  };
  m.mdp.init = get(closed.init, v.next[v.init][closed.label[closed.init]]);
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    const auto [s, d] = m.states[i];
    if (!vertices[s]) vertices[s] = polytope_vertices(closed, s);
    std::vector<Mdp::Action> acts;
    for (const auto& f : *vertices[s]) {
      Mdp::Action act;
      for (const auto& [t, p] : f) act.push_back({get(t, v.next[d][closed.label[t]]), p});
      acts.push_back(std::move(act));
    }
    m.mdp.actions.push_back(std::move(acts));
    m.vertex.push_back(*vertices[s]);
  }
  return m;
}

std::vector<EndComponent> mec_decompose(const Mdp& mdp, const std::vector<bool>& within) {
  const std::size_t n = mdp.size();
  std::vector<bool> active = within.empty() ? std::vector<bool>(n, true) : within;
  std::vector<std::vector<bool>> allowed(n);
  for (std::size_t s = 0; s < n; ++s) allowed[s].assign(mdp.actions[s].size(), true);

  detail::SccDecomposition scc;
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t s = 0; s < n; ++s) {
      if (!active[s]) continue;
      for (std::size_t a = 0; a < mdp.actions[s].size(); ++a) {
        if (!allowed[s][a]) continue;
        for (const auto& [t, p] : mdp.actions[s][a]) adj[s].push_back(t);
      }
    }
    scc = detail::strongly_connected_components(n, adj, active);
    for (std::size_t s = 0; s < n; ++s) {
      if (!active[s]) continue;
      bool any = false;
      for (std::size_t a = 0; a < mdp.actions[s].size(); ++a) {
        if (!allowed[s][a]) continue;
        for (const auto& [t, p] : mdp.actions[s][a]) {
          if (!active[t] || scc.component[t] != scc.component[s]) {
            allowed[s][a] = false;
            changed = true;
            break;
          }
        }
        any = any || allowed[s][a];
      }
      if (!any) {
        active[s] = false;
        changed = true;
      }
    }
  }

  std::map<std::size_t, EndComponent> by_component;
  for (std::size_t s = 0; s < n; ++s) {
    if (!active[s]) continue;
    auto& ec = by_component[scc.component[s]];
    ec.states.push_back(s);
    std::vector<std::size_t> acts;
    for (std::size_t a = 0; a < allowed[s].size(); ++a) {
      if (allowed[s][a]) acts.push_back(a);
    }
    ec.actions.push_back(std::move(acts));
  }
  std::vector<EndComponent> out;
  for (auto& [c, ec] : by_component) out.push_back(std::move(ec));
  std::sort(out.begin(), out.end(),
            [](const EndComponent& x, const EndComponent& y) { return x.states.front() < y.states.front(); });
  return out;
}

namespace {

void peel(const VertexMdp& m, const std::vector<bool>& within, std::vector<EndComponent>& out) {
  for (auto& ec : mec_decompose(m.mdp, within)) {
    unsigned lowest = ~0u;
    for (auto s : ec.states) lowest = std::min(lowest, m.color[s]);
    if (lowest % 2 == 0) {
      out.push_back(std::move(ec));
      continue;
    }
    std::vector<bool> rest(m.mdp.size(), false);
    bool any = false;
    for (auto s : ec.states) {
      rest[s] = m.color[s] != lowest;
      any = any || rest[s];
    }
    if (any) peel(m, rest, out);
  }
}

}  // namespace

std::vector<EndComponent> winning_end_components(const VertexMdp& m) {
  std::vector<EndComponent> out;
  peel(m, {}, out);
  return out;
}

std::vector<bool> winning_mecs(const VertexMdp& m) {
  std::vector<bool> win(m.mdp.size(), false);
  for (const auto& ec : winning_end_components(m)) {
    for (auto s : ec.states) win[s] = true;
  }
  return win;
}

Reachability max_reachability(const Mdp& mdp, const std::vector<bool>& target) {
  const std::size_t n = mdp.size();
  std::vector<std::vector<std::size_t>> radj(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& act : mdp.actions[s]) {
      for (const auto& [t, p] : act) radj[t].push_back(s);
    }
  }
  std::vector<std::size_t> targets;
  for (std::size_t s = 0; s < n; ++s) {
    if (target[s]) targets.push_back(s);
  }
  const auto positive = detail::reachable_from(n, radj, targets);

  // Value-1 states: greatest set U from which the target is reachable with
  // actions that never leave U.
  std::vector<bool> sure = positive;
  std::vector<std::size_t> sure_action(n, 0);
  for (;;) {
    std::vector<bool> reach = target;
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t s = 0; s < n; ++s) {
        if (!sure[s] || reach[s]) continue;
        for (std::size_t a = 0; a < mdp.actions[s].size(); ++a) {
          bool inside = true, hits = false;
          for (const auto& [t, p] : mdp.actions[s][a]) {
            inside = inside && sure[t];
            hits = hits || reach[t];
          }
          if (inside && hits) {
            reach[s] = true;
            sure_action[s] = a;
            grew = true;
            break;
          }
        }
      }
    }
    if (reach == sure) break;
    sure = std::move(reach);
  }

  Reachability r;
  r.value.assign(n, Rational(0));
  r.policy.assign(n, 0);
  std::vector<std::size_t> var(n, SIZE_MAX);
  std::vector<std::size_t> undecided;
  for (std::size_t s = 0; s < n; ++s) {
    if (sure[s]) {
      r.value[s] = 1;
      if (!target[s]) r.policy[s] = sure_action[s];
    } else if (positive[s]) {
      var[s] = undecided.size();
      undecided.push_back(s);
    }
  }
  if (undecided.empty()) return r;

  // Initial proper policy: step towards the target along a shortest path.
  std::vector<std::size_t> dist(n, SIZE_MAX);
  std::deque<std::size_t> queue;
  for (auto s : targets) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const auto t = queue.front();
    queue.pop_front();
    for (auto s : radj[t]) {
      if (dist[s] == SIZE_MAX) {
        dist[s] = dist[t] + 1;
        queue.push_back(s);
      }
    }
  }
  for (auto s : undecided) {
    for (std::size_t a = 0; a < mdp.actions[s].size(); ++a) {
      bool closer = false;
      for (const auto& [t, p] : mdp.actions[s][a]) closer = closer || dist[t] < dist[s];
      if (closer) {
        r.policy[s] = a;
        break;
      }
    }
  }

  auto action_value = [&](std::size_t s, std::size_t a) {
    Rational v = 0;
    for (const auto& [t, p] : mdp.actions[s][a]) v += p * r.value[t];
    return v;
  };
  for (;;) {
    std::vector<detail::SparseRow> rows(undecided.size());
    for (std::size_t i = 0; i < undecided.size(); ++i) {
      const auto s = undecided[i];
      auto& row = rows[i];
      row.coef[i] += 1;
      for (const auto& [t, p] : mdp.actions[s][r.policy[s]]) {
        if (var[t] != SIZE_MAX) row.coef[var[t]] -= p;
        else if (sure[t]) row.rhs += p;
      }
      for (auto it = row.coef.begin(); it != row.coef.end();) {
        it = it->second == 0 ? row.coef.erase(it) : std::next(it);
      }
    }
    const auto x = detail::solve_linear(std::move(rows), undecided.size());
    for (std::size_t i = 0; i < undecided.size(); ++i) r.value[undecided[i]] = x[i];

    bool switched = false;
    for (auto s : undecided) {
      Rational best = action_value(s, r.policy[s]);
      std::size_t best_action = r.policy[s];
      for (std::size_t a = 0; a < mdp.actions[s].size(); ++a) {
        Rational v = action_value(s, a);
        if (v > best) {
          best = std::move(v);
          best_action = a;
        }
      }
      if (best_action != r.policy[s]) {
        r.policy[s] = best_action;
        switched = true;
      }
    }
    if (!switched) return r;
  }
}

DisclosureResult max_disclosure(const Idtmc& spec, const Observation& obs, const Dpa& phi,
                                const DeterminizeOptions& options) {
  const auto report = validate_model(spec);
  if (!report.ok()) throw InvalidModel(report.violations.front().message);
  const auto modal = modal_edges(spec).modal();
  if (!modal.empty()) {
    std::string list;
    for (const auto& e : modal) {
      if (!list.empty()) list += ", ";
      list += spec.state_names[e.from] + "->" + spec.state_names[e.to];
    }
    throw ModalEdgesPresent("modal edges: " + list);
  }
  if (!check_observation_liveness(spec, obs)) {
    throw NotObservationLive("a reachable cycle of the model has only unobservable labels");
  }

  DisclosureResult result;
  result.disclosure_dpa = build_disclosure_dpa(trace_nba(spec), phi, obs, options, &result.automata);
  for (const auto& row : spec.edges) {
    for (const auto& [t, iv] : row) {
      if (iv.lo_open() || iv.hi_open()) result.closure_applied = true;
    }
  }
  const VertexMdp m = build_vertex_mdp(close_intervals(spec), result.disclosure_dpa);
  result.mdp_states = m.mdp.size();
  for (const auto& acts : m.mdp.actions) result.mdp_actions += acts.size();

  const auto ecs = winning_end_components(m);
  std::vector<bool> win(m.mdp.size(), false);
  result.policy.assign(m.mdp.size(), {});
  for (const auto& ec : ecs) {
    // Mixing all retained actions visits every state of the component.
    for (std::size_t i = 0; i < ec.states.size(); ++i) {
      const auto s = ec.states[i];
      win[s] = true;
      Distribution mix;
      const Rational share(1, static_cast<unsigned long>(ec.actions[i].size()));
      for (auto a : ec.actions[i]) {
        for (const auto& [t, p] : m.vertex[s][a]) mix[t] += share * p;
      }
      result.policy[s] = std::move(mix);
    }
  }
  const auto reach = max_reachability(m.mdp, win);
  for (std::size_t s = 0; s < m.mdp.size(); ++s) {
    if (!win[s]) result.policy[s] = m.vertex[s][reach.policy[s]];
  }
  result.value = reach.value[m.mdp.init];
  result.product_states = m.states;

  // Does the policy stay inside the original, possibly open, intervals?
  std::map<std::pair<StateId, StateId>, std::size_t> index;
  for (std::size_t i = 0; i < m.states.size(); ++i) index[m.states[i]] = i;
  std::vector<bool> seen(m.mdp.size(), false);
  std::vector<std::size_t> todo{m.mdp.init};
  seen[m.mdp.init] = true;
  const Dpa v = with_alphabet(result.disclosure_dpa, spec.alphabet);
  while (!todo.empty()) {
    const auto i = todo.back();
    todo.pop_back();
    const auto [s, d] = m.states[i];
    if (!in_state_polytope(spec, s, result.policy[i])) result.supremum_attained = false;
    for (const auto& [t, p] : result.policy[i]) {
      const auto j = index.at({t, v.next[d][spec.label[t]]});
      if (!seen[j]) {
        seen[j] = true;
        todo.push_back(j);
      }
    }
  }
  // A zero supremum is attained by every scheduler.
  if (result.value == 0) result.supremum_attained = true;
  return result;
}

Pts scheduled_product(const Idtmc& spec, const DisclosureResult& result) {
  const Dpa v = with_alphabet(result.disclosure_dpa, spec.alphabet);
  std::map<std::pair<StateId, StateId>, std::size_t> index;
  for (std::size_t i = 0; i < result.product_states.size(); ++i) index[result.product_states[i]] = i;
  Pts pts;
  pts.alphabet = spec.alphabet;
  for (std::size_t i = 0; i < result.product_states.size(); ++i) {
    const auto [s, d] = result.product_states[i];
    pts.state_names.push_back(spec.state_names[s] + "/" + v.state_name(d));
    pts.label.push_back(spec.label[s]);
    Distribution out;
    for (const auto& [t, p] : result.policy[i]) out[index.at({t, v.next[d][spec.label[t]]})] += p;
    pts.delta.push_back(std::move(out));
  }
  pts.init = 0;
  return pts;
}

}  // namespace opacity
