#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "support.hpp"

namespace opacity::testing {

namespace {

using Dense = std::vector<Rational>;

std::vector<Interval> closed_row(const Idtmc& s, StateId q, const std::vector<StateId>& succ) {
  std::vector<Interval> out;
  for (auto t : succ) out.push_back(s.interval(q, t).closure());
  return out;
}

bool included(const Interval& iv, const Rational& x) {
  return (iv.lo_open() ? x > iv.lo() : x >= iv.lo()) && (iv.hi_open() ? x < iv.hi() : x <= iv.hi());
}

}  // namespace

std::vector<Distribution> vertex_oracle(const Idtmc& s, StateId q) {
  std::vector<StateId> succ;
  for (const auto& [t, iv] : s.edges[q]) {
    if (iv.hi() > 0) succ.push_back(t);
  }
  const auto ivs = closed_row(s, q, succ);
  const std::size_t d = succ.size();
  std::set<Dense> found;
  // free == d: every coordinate sits at a bound
  for (std::size_t free = 0; free <= d; ++free) {
    const std::size_t fixed = free == d ? d : d - 1;
    for (std::size_t mask = 0; mask < (std::size_t{1} << fixed); ++mask) {
      Dense f(d);
      Rational sum = 0;
      for (std::size_t i = 0, bit = 0; i < d; ++i) {
        if (i == free) continue;
        f[i] = (mask >> bit++) & 1 ? ivs[i].hi() : ivs[i].lo();
        sum += f[i];
      }
      if (free < d) {
        f[free] = 1 - sum;
        if (f[free] < ivs[free].lo() || f[free] > ivs[free].hi()) continue;
      } else if (sum != 1) {
        continue;
      }
      found.insert(f);
    }
  }
  std::vector<Distribution> out;
  for (const auto& f : found) {
    Distribution dist;
    for (std::size_t i = 0; i < d; ++i) {
      if (f[i] != 0) dist[succ[i]] = f[i];
    }
    out.push_back(dist);
  }
  return out;
}

Rational single_step_max(const Idtmc& s, StateId q, StateId target) {
  const auto vs = vertex_oracle(s, q);
  if (vs.empty()) throw std::logic_error("empty polytope");
  Rational best = -1;
  for (const auto& f : vs) {
    const auto it = f.find(target);
    best = std::max(best, it == f.end() ? Rational(0) : it->second);
  }
  return best;
}

MinOracle min_probability_oracle(const Idtmc& s, StateId q, StateId t) {
  MinOracle out;
  bool first = true;
  for (const auto& f : vertex_oracle(s, q)) {
    const auto it = f.find(t);
    const Rational v = it == f.end() ? Rational(0) : it->second;
    if (first || v < out.value) out.value = v;
    first = false;
  }
  // f(t) = value with the other coordinates summing to 1 - value
  const Interval own = s.interval(q, t);
  Rational lo = 0, hi = 0;
  bool lo_open = false, hi_open = false;
  for (const auto& [u, iv] : s.edges[q]) {
    if (u == t) continue;
    lo += iv.lo();
    hi += iv.hi();
    lo_open = lo_open || iv.lo_open();
    hi_open = hi_open || iv.hi_open();
  }
  const Rational rest = 1 - out.value;
  out.attainable = included(own, out.value) && (lo_open ? rest > lo : rest >= lo) &&
                   (hi_open ? rest < hi : rest <= hi);
  return out;
}

bool dpa_member(const Dpa& dpa, const Lasso& w) {
  StateId q = dpa.init;
  for (auto a : w.prefix) q = dpa.next[q][a];
  std::map<StateId, std::size_t> seen;  // state at the start of a cycle pass -> pass number
  std::vector<unsigned> pass_min;
  while (!seen.count(q)) {
    seen[q] = pass_min.size();
    unsigned m = ~0u;
    for (auto a : w.cycle) {
      q = dpa.next[q][a];
      m = std::min(m, dpa.color[q]);
    }
    pass_min.push_back(m);
  }
  unsigned m = ~0u;
  for (std::size_t i = seen[q]; i < pass_min.size(); ++i) m = std::min(m, pass_min[i]);
  return m % 2 == 0;
}

namespace {

// Directed graph with explicit nodes; answers "is some node with property P
// on a cycle reachable from the roots".
struct Graph {
  std::vector<std::vector<std::size_t>> adj;

  std::vector<bool> reach(const std::vector<std::size_t>& roots) const {
    std::vector<bool> seen(adj.size(), false);
    std::vector<std::size_t> stack = roots;
    for (auto r : roots) seen[r] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto u : adj[v]) {
        if (!seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    return seen;
  }

  bool on_cycle(std::size_t v) const {
    for (auto u : adj[v]) {
      if (u == v || reach({u})[v]) return true;
    }
    return false;
  }
};

// Node (state, position) of a product with the positions of a lasso.
struct LassoPositions {
  std::size_t prefix, length;
  explicit LassoPositions(const Lasso& w) : prefix(w.prefix.size()), length(w.prefix.size() + w.cycle.size()) {}
  std::size_t next(std::size_t i) const { return i + 1 < length ? i + 1 : prefix; }
};

Letter at(const Lasso& w, std::size_t i) {
  return i < w.prefix.size() ? w.prefix[i] : w.cycle[i - w.prefix.size()];
}

}  // namespace

bool nba_member(const Nba& nba, const Lasso& w) {
  const LassoPositions pos(w);
  const std::size_t n = nba.size();
  auto id = [&](StateId q, std::size_t i) { return q * pos.length + i; };
  Graph g;
  g.adj.resize(n * pos.length);
  for (StateId q = 0; q < n; ++q) {
    for (std::size_t i = 0; i < pos.length; ++i) {
      for (auto t : nba.succ[q][at(w, i)]) g.adj[id(q, i)].push_back(id(t, pos.next(i)));
    }
  }
  std::vector<std::size_t> roots;
  for (auto q : nba.initial) roots.push_back(id(q, 0));
  const auto seen = g.reach(roots);
  for (StateId q = 0; q < n; ++q) {
    if (!nba.accepting[q]) continue;
    for (std::size_t i = 0; i < pos.length; ++i) {
      if (seen[id(q, i)] && g.on_cycle(id(q, i))) return true;
    }
  }
  return false;
}

namespace {

bool model_reads(std::size_t n, StateId init, const std::vector<Letter>& label,
                 const std::function<std::vector<StateId>(StateId)>& succ, const Lasso& w) {
  const LassoPositions pos(w);
  if (label[init] != at(w, 0)) return false;
  auto id = [&](StateId q, std::size_t i) { return q * pos.length + i; };
  Graph g;
  g.adj.resize(n * pos.length);
  for (StateId q = 0; q < n; ++q) {
    for (std::size_t i = 0; i < pos.length; ++i) {
      if (label[q] != at(w, i)) continue;
      const auto j = pos.next(i);
      for (auto t : succ(q)) {
        if (label[t] == at(w, j)) g.adj[id(q, i)].push_back(id(t, j));
      }
    }
  }
  const auto seen = g.reach({id(init, 0)});
  for (std::size_t v = 0; v < g.adj.size(); ++v) {
    if (seen[v] && g.on_cycle(v)) return true;
  }
  return false;
}

}  // namespace

bool trace_member(const Pts& pts, const Lasso& w) {
  return model_reads(pts.size(), pts.init, pts.label, [&](StateId q) {
    std::vector<StateId> out;
    for (const auto& [t, p] : pts.delta[q]) {
      if (p > 0) out.push_back(t);
    }
    return out;
  }, w);
}

bool trace_member(const Idtmc& s, const Lasso& w) {
  return model_reads(s.size(), s.init, s.label, [&](StateId q) {
    std::vector<StateId> out;
    for (const auto& [t, iv] : s.edges[q]) {
      if (iv.hi() > 0) out.push_back(t);
    }
    return out;
  }, w);
}

bool disclosure_member(const Idtmc& model, const Dpa& phi, const Observation& obs, const Lasso& w) {
  if (!trace_member(model, w) || !dpa_member(phi, w)) return false;
  // The observed lasso π(w).
  Lasso seen;
  for (auto a : w.prefix) {
    if (obs.observable(a)) seen.prefix.push_back(a);
  }
  for (auto a : w.cycle) {
    if (obs.observable(a)) seen.cycle.push_back(a);
  }
  if (seen.cycle.empty()) throw std::logic_error("finite observation");
  const LassoPositions pos(seen);

  // Explicit search for a trace outside phi observed as π(w): nodes are
  // (model state, phi state, next observed position).
  std::map<std::tuple<StateId, StateId, std::size_t>, std::size_t> index;
  std::vector<std::tuple<StateId, StateId, std::size_t>> nodes;
  Graph g;
  std::vector<std::size_t> todo;
  auto visit = [&](StateId q, StateId d, std::size_t k) -> std::optional<std::size_t> {
    const Letter x = model.label[q];
    if (obs.observable(x)) {
      if (at(seen, k) != x) return std::nullopt;
      k = pos.next(k);
    }
    d = phi.next[d][x];
    auto [it, fresh] = index.emplace(std::make_tuple(q, d, k), nodes.size());
    if (fresh) {
      nodes.push_back(it->first);
      g.adj.emplace_back();
      todo.push_back(it->second);
    }
    return it->second;
  };
  const auto root = visit(model.init, phi.init, 0);
  if (!root) return true;
  while (!todo.empty()) {
    const auto v = todo.back();
    todo.pop_back();
    const auto [q, d, k] = nodes[v];
    for (const auto& [t, iv] : model.edges[q]) {
      if (iv.hi() == 0) continue;
      if (auto u = visit(t, d, k)) g.adj[v].push_back(*u);
    }
  }
  // A reachable cycle whose minimal phi colour is odd: for each odd c, a
  // node of colour c on a cycle inside the nodes of colour >= c.
  for (unsigned c = 1; c <= phi.max_color(); c += 2) {
    Graph sub;
    sub.adj.resize(nodes.size());
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      if (phi.color[std::get<1>(nodes[v])] < c) continue;
      for (auto u : g.adj[v]) {
        if (phi.color[std::get<1>(nodes[u])] >= c) sub.adj[v].push_back(u);
      }
    }
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      if (phi.color[std::get<1>(nodes[v])] == c && sub.on_cycle(v)) return false;
    }
  }
  return true;
}

namespace {

// Dense exact Gaussian elimination; the system must be non-singular.
std::vector<Rational> dense_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::logic_error("singular system");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational k = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= k * a[c][j];
      b[r] -= k * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

std::vector<Rational> chain_reach(const std::vector<const Mdp::Action*>& step, const std::vector<bool>& target) {
  const std::size_t n = step.size();
  Graph back;
  back.adj.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& [t, p] : *step[s]) back.adj[t].push_back(s);
  }
  std::vector<std::size_t> roots;
  for (std::size_t s = 0; s < n; ++s) {
    if (target[s]) roots.push_back(s);
  }
  const auto can = back.reach(roots);
  std::vector<std::size_t> var(n, n), unknown;
  for (std::size_t s = 0; s < n; ++s) {
    if (can[s] && !target[s]) {
      var[s] = unknown.size();
      unknown.push_back(s);
    }
  }
  std::vector<std::vector<Rational>> a(unknown.size(), std::vector<Rational>(unknown.size()));
  std::vector<Rational> b(unknown.size());
  for (std::size_t i = 0; i < unknown.size(); ++i) {
    a[i][i] += 1;
    for (const auto& [t, p] : *step[unknown[i]]) {
      if (target[t]) b[i] += p;
      else if (var[t] < n) a[i][var[t]] -= p;
    }
  }
  const auto x = unknown.empty() ? std::vector<Rational>{} : dense_solve(a, b);
  std::vector<Rational> out(n, Rational(0));
  for (std::size_t s = 0; s < n; ++s) {
    if (target[s]) out[s] = 1;
    else if (var[s] < n) out[s] = x[var[s]];
  }
  return out;
}

}  // namespace

std::vector<Rational> reach_oracle(const Mdp& mdp, const std::vector<bool>& target) {
  const std::size_t n = mdp.size();
  std::vector<std::size_t> choice(n, 0);
  std::vector<Rational> best(n, Rational(0));
  for (;;) {
    std::vector<const Mdp::Action*> step(n);
    for (std::size_t s = 0; s < n; ++s) step[s] = &mdp.actions[s][choice[s]];
    const auto v = chain_reach(step, target);
    for (std::size_t s = 0; s < n; ++s) best[s] = std::max(best[s], v[s]);
    std::size_t i = 0;
    while (i < n && ++choice[i] == mdp.actions[i].size()) choice[i++] = 0;
    if (i == n) return best;
  }
}

std::vector<bool> winning_oracle(const Mdp& mdp, const std::vector<unsigned>& color) {
  const std::size_t n = mdp.size();
  if (n > 16) throw std::logic_error("too many states for subset enumeration");
  std::vector<bool> win(n, false);
  for (std::size_t set = 1; set < (std::size_t{1} << n); ++set) {
    auto in = [&](std::size_t s) { return (set >> s) & 1; };
    Graph g;
    g.adj.resize(n);
    bool closed = true;
    std::size_t first = n;
    unsigned lowest = ~0u;
    for (std::size_t s = 0; s < n && closed; ++s) {
      if (!in(s)) continue;
      first = std::min(first, s);
      lowest = std::min(lowest, color[s]);
      bool any = false;
      for (const auto& act : mdp.actions[s]) {
        if (std::all_of(act.begin(), act.end(), [&](const auto& e) { return in(e.first); })) {
          any = true;
          for (const auto& [t, p] : act) g.adj[s].push_back(t);
        }
      }
      closed = any;
    }
    if (!closed || lowest % 2 != 0) continue;
    // strongly connected: first reaches all and all reach first
    Graph rev;
    rev.adj.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
      for (auto t : g.adj[s]) rev.adj[t].push_back(s);
    }
    const auto fwd = g.reach({first}), bwd = rev.reach({first});
    bool strong = true;
    for (std::size_t s = 0; s < n; ++s) strong = strong && (!in(s) || (fwd[s] && bwd[s]));
    if (!strong) continue;
    for (std::size_t s = 0; s < n; ++s) {
      if (in(s)) win[s] = true;
    }
  }
  return win;
}

namespace {

// Edmonds-Karp over exact rationals on a dense capacity matrix.
Rational max_flow(std::vector<std::vector<Rational>> cap, std::size_t source, std::size_t sink) {
  const std::size_t n = cap.size();
  Rational total = 0;
  for (;;) {
    std::vector<std::size_t> parent(n, n);
    parent[source] = source;
    std::vector<std::size_t> queue{source};
    for (std::size_t i = 0; i < queue.size() && parent[sink] == n; ++i) {
      const auto u = queue[i];
      for (std::size_t v = 0; v < n; ++v) {
        if (parent[v] == n && cap[u][v] > 0) {
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (parent[sink] == n) return total;
    Rational push = -1;
    for (auto v = sink; v != source; v = parent[v]) {
      const Rational& c = cap[parent[v]][v];
      if (push < 0 || c < push) push = c;
    }
    for (auto v = sink; v != source; v = parent[v]) {
      cap[parent[v]][v] -= push;
      cap[v][parent[v]] += push;
    }
    total += push;
  }
}

// Arcs with lower and upper bounds; decides whether a circulation exists.
struct BoundedFlow {
  struct Arc {
    std::size_t from, to;
    Rational lo, hi;
  };
  std::size_t nodes = 0;
  std::vector<Arc> arcs;

  bool feasible() const {
    const std::size_t s = nodes, t = nodes + 1;
    std::vector<std::vector<Rational>> cap(nodes + 2, std::vector<Rational>(nodes + 2));
    std::vector<Rational> excess(nodes);
    for (const auto& a : arcs) {
      cap[a.from][a.to] += a.hi - a.lo;
      excess[a.to] += a.lo;
      excess[a.from] -= a.lo;
    }
    Rational need = 0;
    for (std::size_t v = 0; v < nodes; ++v) {
      if (excess[v] > 0) {
        cap[s][v] += excess[v];
        need += excess[v];
      } else if (excess[v] < 0) {
        cap[v][t] -= excess[v];
      }
    }
    return max_flow(std::move(cap), s, t) == need;
  }
};

template <typename PairOk>
bool enumerate_relations(const std::vector<std::pair<StateId, StateId>>& pairs, std::size_t root,
                         const PairOk& ok) {
  const std::size_t m = pairs.size();
  if (m > 20) throw std::logic_error("too many candidate pairs");
  for (std::size_t set = 0; set < (std::size_t{1} << m); ++set) {
    if (!((set >> root) & 1)) continue;
    std::set<std::pair<StateId, StateId>> rel;
    for (std::size_t i = 0; i < m; ++i) {
      if ((set >> i) & 1) rel.insert(pairs[i]);
    }
    bool good = true;
    for (const auto& p : rel) {
      if (!ok(p, rel)) {
        good = false;
        break;
      }
    }
    if (good) return true;
  }
  return false;
}

}  // namespace

bool sim_pts_oracle(const Pts& a1, const Pts& a2) {
  std::vector<std::pair<StateId, StateId>> pairs;
  std::size_t root = SIZE_MAX;
  for (StateId x = 0; x < a1.size(); ++x) {
    for (StateId y = 0; y < a2.size(); ++y) {
      if (a1.label[x] != a2.label[y]) continue;
      if (x == a1.init && y == a2.init) root = pairs.size();
      pairs.push_back({x, y});
    }
  }
  if (root == SIZE_MAX) return false;
  return enumerate_relations(pairs, root, [&](const auto& p, const auto& rel) {
    // source, a1 successors, a2 successors, sink
    const std::size_t n1 = a1.size(), n2 = a2.size(), src = 0, snk = 1 + n1 + n2;
    std::vector<std::vector<Rational>> cap(snk + 1, std::vector<Rational>(snk + 1));
    for (const auto& [u, pu] : a1.delta[p.first]) cap[src][1 + u] = pu;
    for (const auto& [v, pv] : a2.delta[p.second]) cap[1 + n1 + v][snk] = pv;
    for (const auto& [u, pu] : a1.delta[p.first]) {
      for (const auto& [v, pv] : a2.delta[p.second]) {
        if (rel.count({u, v})) cap[1 + u][1 + n1 + v] = 2;
      }
    }
    return max_flow(std::move(cap), src, snk) == 1;
  });
}

bool sat_closed_oracle(const Pts& pts, const Idtmc& spec) {
  std::vector<std::pair<StateId, StateId>> pairs;
  std::size_t root = SIZE_MAX;
  for (StateId x = 0; x < pts.size(); ++x) {
    for (StateId y = 0; y < spec.size(); ++y) {
      if (pts.label[x] != spec.label[y]) continue;
      if (x == pts.init && y == spec.init) root = pairs.size();
      pairs.push_back({x, y});
    }
  }
  if (root == SIZE_MAX) return false;
  return enumerate_relations(pairs, root, [&](const auto& p, const auto& rel) {
    const std::size_t n1 = pts.size(), n2 = spec.size(), src = 0, snk = 1 + n1 + n2;
    BoundedFlow f;
    f.nodes = snk + 1;
    f.arcs.push_back({snk, src, 0, 2});
    for (const auto& [u, pu] : pts.delta[p.first]) f.arcs.push_back({src, 1 + u, pu, pu});
    for (StateId v = 0; v < n2; ++v) {
      const auto iv = spec.interval(p.second, v);
      if (iv.hi() > 0) f.arcs.push_back({1 + n1 + v, snk, iv.lo(), iv.hi()});
      else if (iv.lo() > 0) return false;
    }
    for (const auto& [u, pu] : pts.delta[p.first]) {
      for (StateId v = 0; v < n2; ++v) {
        if (rel.count({u, v}) && spec.interval(p.second, v).hi() > 0) f.arcs.push_back({1 + u, 1 + n1 + v, 0, 2});
      }
    }
    return f.feasible();
  });
}

}  // namespace opacity::testing
