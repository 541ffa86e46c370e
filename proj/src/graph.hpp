#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace opacity::detail {

struct SccDecomposition {
  std::vector<std::size_t> component;  // per node; npos for nodes not visited
  std::size_t count = 0;
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
};

/// Iterative Tarjan over the nodes with `active[v]` set (all when empty).
/// Components are numbered in reverse topological order: a component only
/// reaches components with smaller or equal ids.
template <typename Adjacency>
SccDecomposition strongly_connected_components(std::size_t n, const Adjacency& adj,
                                               const std::vector<bool>& active = {}) {
  constexpr std::size_t npos = SccDecomposition::npos;
  SccDecomposition out;
  out.component.assign(n, npos);
  std::vector<std::size_t> index(n, npos), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // node, next edge position
  std::size_t counter = 0;
  auto is_active = [&](std::size_t v) { return active.empty() || active[v]; };

  for (std::size_t root = 0; root < n; ++root) {
    if (!is_active(root) || index[root] != npos) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      const auto& edges = adj[v];
      if (pos < edges.size()) {
        const std::size_t w = edges[pos++];
        if (!is_active(w)) continue;
        if (index[w] == npos) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component[w] = out.count;
        } while (w != v);
        ++out.count;
      }
      const std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return out;
}

/// Nodes reachable from `sources` (restricted to `active` when non-empty).
template <typename Adjacency>
std::vector<bool> reachable_from(std::size_t n, const Adjacency& adj,
                                 const std::vector<std::size_t>& sources,
                                 const std::vector<bool>& active = {}) {
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> todo;
  for (auto s : sources) {
    if ((active.empty() || active[s]) && !seen[s]) {
      seen[s] = true;
      todo.push_back(s);
    }
  }
  while (!todo.empty()) {
    const auto v = todo.back();
    todo.pop_back();
    for (auto w : adj[v]) {
      if ((active.empty() || active[w]) && !seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace opacity::detail
