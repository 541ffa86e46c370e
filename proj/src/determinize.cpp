// Safra–Piterman determinization with history trees. Nodes carry names in
// creation order, so a node's name is its index in the tree vector and older
// siblings come first.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_map>

#include "opacity/automata.hpp"
#include "opacity/errors.hpp"

namespace opacity {

namespace {

using Bits = std::vector<std::uint64_t>;

bool any(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

struct Tree {
  std::vector<std::size_t> parent;  // parent[0] unused
  std::vector<Bits> label;

  std::vector<std::uint64_t> key() const {
    std::vector<std::uint64_t> k{parent.size()};
    for (std::size_t i = 0; i < parent.size(); ++i) {
      k.push_back(i == 0 ? 0 : parent[i]);
      k.insert(k.end(), label[i].begin(), label[i].end());
    }
    return k;
  }
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : k) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

class Determinizer {
 public:
  explicit Determinizer(const Nba& nba) : nba_(nba), words_((nba.size() + 63) / 64) {
    for (StateId s = 0; s < nba.size(); ++s) {
      if (nba.accepting[s]) set(final_, s);
    }
    post_.assign(nba.size(), std::vector<Bits>(nba.alphabet.size(), Bits(words_, 0)));
    for (StateId s = 0; s < nba.size(); ++s) {
      for (Letter a = 0; a < nba.alphabet.size(); ++a) {
        for (StateId t : nba.succ[s][a]) set(post_[s][a], t);
      }
    }
    none_color_ = static_cast<unsigned>(4 * nba.size() + 5);
  }

  unsigned none_color() const { return none_color_; }

  Tree initial() const {
    Tree t;
    Bits root(words_, 0);
    for (StateId i : nba_.initial) set(root, i);
    if (any(root)) {
      t.parent.push_back(0);
      t.label.push_back(root);
    }
    return t;
  }

  std::pair<Tree, unsigned> step(const Tree& in, Letter a) const {
    Tree t = in;
    const std::size_t old_size = t.parent.size();
    // spawn children for accepting states
    for (std::size_t v = 0; v < old_size; ++v) {
      Bits inter = meet(t.label[v], final_);
      if (any(inter)) {
        t.parent.push_back(v);
        t.label.push_back(std::move(inter));
      }
    }
    for (auto& l : t.label) l = post(l, a);

    const std::size_t m = t.parent.size();
    // horizontal merge: older siblings keep shared states
    std::vector<Bits> claimed(m, Bits(words_, 0));
    for (std::size_t v = 1; v < m; ++v) {
      const std::size_t p = t.parent[v];
      for (std::size_t w = 0; w < words_; ++w) {
        t.label[v][w] &= t.label[p][w] & ~claimed[p][w];
        claimed[p][w] |= t.label[v][w];
      }
    }

    std::vector<bool> alive(m);
    std::size_t removed = SIZE_MAX, green = SIZE_MAX;
    for (std::size_t v = 0; v < m; ++v) {
      alive[v] = any(t.label[v]);
      if (!alive[v]) removed = std::min(removed, v);
    }
    // vertical merge
    std::vector<bool> killed(m, false);
    for (std::size_t v = 0; v < m; ++v) {
      if (!alive[v] || killed[v]) continue;
      Bits children(words_, 0);
      bool has_child = false;
      for (std::size_t c = v + 1; c < m; ++c) {
        if (t.parent[c] == v && alive[c]) {
          has_child = true;
          for (std::size_t w = 0; w < words_; ++w) children[w] |= t.label[c][w];
        }
      }
      if (!has_child || children != t.label[v]) continue;
      green = std::min(green, v);
      for (std::size_t c = v + 1; c < m; ++c) {
        if (alive[c] && !killed[c] && (t.parent[c] == v || killed[t.parent[c]])) {
          killed[c] = true;
          removed = std::min(removed, c);
        }
      }
    }

    Tree out;
    std::vector<std::size_t> rename(m, SIZE_MAX);
    for (std::size_t v = 0; v < m; ++v) {
      if (!alive[v] || killed[v]) continue;
      rename[v] = out.parent.size();
      out.parent.push_back(v == 0 ? 0 : rename[t.parent[v]]);
      out.label.push_back(std::move(t.label[v]));
    }

    unsigned color = none_color_;
    // names are 1-based in the colour formula
    if (green != SIZE_MAX && (removed == SIZE_MAX || green < removed)) {
      color = static_cast<unsigned>(2 * (green + 1));
    } else if (removed != SIZE_MAX) {
      color = static_cast<unsigned>(2 * (removed + 1) - 1);
    }
    return {std::move(out), color};
  }

 private:
  void set(Bits& b, StateId s) const {
    if (b.empty()) b.assign(words_, 0);
    b[s / 64] |= std::uint64_t{1} << (s % 64);
  }

  Bits meet(const Bits& x, const Bits& y) const {
    Bits r(words_, 0);
    for (std::size_t w = 0; w < words_; ++w) r[w] = x[w] & (y.empty() ? 0 : y[w]);
    return r;
  }

  Bits post(const Bits& from, Letter a) const {
    Bits r(words_, 0);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = from[w];
      while (word) {
        const int bit = __builtin_ctzll(word);
        word &= word - 1;
        const auto& succ = post_[w * 64 + bit][a];
        for (std::size_t k = 0; k < words_; ++k) r[k] |= succ[k];
      }
    }
    return r;
  }

  const Nba& nba_;
  std::size_t words_;
  Bits final_;
  std::vector<std::vector<Bits>> post_;
  unsigned none_color_ = 1;
};

}  // namespace

Dpa nba_determinize(const Nba& input, const DeterminizeOptions& options) {
  const Nba nba = trim(input);
  const std::size_t sigma = nba.alphabet.size();
  if (nba.size() == 0) return empty_dpa(nba.alphabet);
  Determinizer det(nba);

  std::vector<Tree> trees;
  std::unordered_map<std::vector<std::uint64_t>, std::size_t, KeyHash> tree_index;
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> tree_step;  // lazily filled
  auto tree_id = [&](Tree t) {
    auto key = t.key();
    auto it = tree_index.find(key);
    if (it != tree_index.end()) return it->second;
    const std::size_t id = trees.size();
    tree_index.emplace(std::move(key), id);
    trees.push_back(std::move(t));
    tree_step.emplace_back();
    return id;
  };

  Dpa out;
  out.alphabet = nba.alphabet;
  std::unordered_map<std::uint64_t, StateId> state_index;  // (tree, colour) -> state
  std::vector<std::pair<std::size_t, unsigned>> states;
  std::deque<StateId> todo;
  const std::uint64_t color_span = det.none_color() + 1;
  auto state_id = [&](std::size_t tree, unsigned color) {
    const std::uint64_t key = tree * color_span + color;
    auto it = state_index.find(key);
    if (it != state_index.end()) return it->second;
    if (states.size() >= options.state_budget) {
      throw StateBudgetExceeded("determinization exceeded the budget of " +
                                std::to_string(options.state_budget) + " states");
    }
    const StateId id = states.size();
    state_index.emplace(key, id);
    states.push_back({tree, color});
    out.next.emplace_back(sigma, 0);
    out.color.push_back(color);
    todo.push_back(id);
    return id;
  };

  out.init = state_id(tree_id(det.initial()), det.none_color());
  while (!todo.empty()) {
    const StateId s = todo.front();
    todo.pop_front();
    const std::size_t tree = states[s].first;
    if (tree_step[tree].empty()) {
      std::vector<std::pair<std::size_t, unsigned>> row;
      for (Letter a = 0; a < sigma; ++a) {
        auto [next, color] = det.step(trees[tree], a);
        const std::size_t id = tree_id(std::move(next));
        row.push_back({id, color});
      }
      tree_step[tree] = std::move(row);
    }
    for (Letter a = 0; a < sigma; ++a) {
      const auto [t, c] = tree_step[tree][a];
      out.next[s][a] = state_id(t, c);
    }
  }
  return compact(out);
}

}  // namespace opacity
