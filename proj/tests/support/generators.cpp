#include <algorithm>

#include "opacity/dpa_io.hpp"
#include "opacity/modal.hpp"
#include "opacity/model_io.hpp"
#include "opacity/relations.hpp"
#include "support.hpp"

namespace opacity::testing {

std::string models_dir() { return OPACITY_MODELS_DIR; }

Pts fig_pts(const std::string& file) { return std::get<Pts>(load_model(models_dir() + "/" + file)); }

Idtmc fig_idtmc(const std::string& file) {
  return std::get<Idtmc>(load_model(models_dir() + "/" + file));
}

Dpa fig_dpa(const std::string& file) { return load_dpa(models_dir() + "/" + file); }

Alphabet letters(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return Alphabet(names);
}

Lasso lasso(const Alphabet& sigma, const std::string& prefix, const std::string& cycle) {
  Lasso w;
  for (char c : prefix) w.prefix.push_back(sigma.at(std::string(1, c)));
  for (char c : cycle) w.cycle.push_back(sigma.at(std::string(1, c)));
  return w;
}

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

std::vector<StateId> pick_distinct(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<StateId> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(k, n));
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

Rational random_probability(Rng& rng, int max_den) {
  const auto den = static_cast<long>(uniform(rng, 1, static_cast<std::size_t>(max_den)));
  const auto num = static_cast<long>(uniform(rng, 0, static_cast<std::size_t>(den)));
  return rational(num, den);
}

Distribution random_distribution(Rng& rng, const std::vector<StateId>& support) {
  std::vector<long> w;
  long total = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    w.push_back(static_cast<long>(uniform(rng, 1, 4)));
    total += w.back();
  }
  Distribution d;
  for (std::size_t i = 0; i < support.size(); ++i) d[support[i]] = rational(w[i], total);
  return d;
}

Pts random_pts(Rng& rng, std::size_t states, std::size_t letter_count, std::size_t max_succ) {
  Pts p;
  p.alphabet = letters(letter_count);
  for (std::size_t s = 0; s < states; ++s) {
    p.state_names.push_back("s" + std::to_string(s));
    p.label.push_back(uniform(rng, 0, letter_count - 1));
    p.delta.push_back(random_distribution(rng, pick_distinct(rng, states, uniform(rng, 1, max_succ))));
  }
  return p;
}

Pts random_branching_pts(Rng& rng, std::size_t states, std::size_t letter_count, std::size_t max_succ) {
  Pts p = random_pts(rng, states, letter_count, max_succ);
  const std::size_t bottom = std::max<std::size_t>(1, states / 3);
  for (std::size_t s = 0; s < states; ++s) {
    if (s + bottom >= states) {
      p.delta[s] = {{s, Rational(1)}};
      continue;
    }
    std::vector<StateId> later;
    for (StateId t = s + 1; t < states; ++t) later.push_back(t);
    std::shuffle(later.begin(), later.end(), rng);
    later.resize(std::min(later.size(), uniform(rng, 1, max_succ)));
    std::sort(later.begin(), later.end());
    p.delta[s] = random_distribution(rng, later);
  }
  return p;
}

namespace {

// A lower bound at most `lo`, from {lo, lo/2, 0}.
Rational lower_pick(Rng& rng, const Rational& lo, bool zero_ok) {
  switch (uniform(rng, 0, 2)) {
    case 0: return lo;
    case 1: return lo / 2;
    default: return zero_ok ? Rational(0) : Rational(lo / 2);
  }
}

Rational upper_pick(Rng& rng, const Rational& hi) {
  switch (uniform(rng, 0, 2)) {
    case 0: return hi;
    case 1: return (hi + 1) / 2;
    default: return Rational(1);
  }
}

// Grows `iv` to [lo, hi] with random openness, still containing `iv`.
Interval grow(Rng& rng, const Interval& iv, const IntervalStyle& style) {
  const Rational lo = lower_pick(rng, iv.lo(), style.zero_lower);
  const Rational hi = upper_pick(rng, iv.hi());
  bool lo_open = lo == iv.lo() ? iv.lo_open() : style.open_bounds && coin(rng);
  bool hi_open = hi == iv.hi() ? iv.hi_open() : style.open_bounds && coin(rng);
  // a closed zero lower bound makes an edge potentially modal
  if (!style.zero_lower && lo == 0) lo_open = true;
  if (lo == hi) lo_open = hi_open = false;
  return Interval(lo, hi, lo_open, hi_open);
}

}  // namespace

Idtmc around(Rng& rng, const Pts& base, const IntervalStyle& style) {
  Idtmc s;
  s.alphabet = base.alphabet;
  s.state_names = base.state_names;
  s.label = base.label;
  s.init = base.init;
  s.edges.resize(base.size());
  for (StateId q = 0; q < base.size(); ++q) {
    for (const auto& [t, p] : base.delta[q]) s.edges[q][t] = grow(rng, Interval::point(p), style);
  }
  return s;
}

Idtmc widen(Rng& rng, const Idtmc& s, const IntervalStyle& style) {
  Idtmc out = s;
  for (auto& row : out.edges) {
    for (auto& [t, iv] : row) iv = grow(rng, iv, style);
  }
  return out;
}

std::optional<Idtmc> split_state(Rng& rng, const Idtmc& s) {
  std::vector<StateId> candidates;
  for (StateId t = 0; t < s.size(); ++t) {
    if (t != s.init) candidates.push_back(t);
  }
  if (candidates.empty()) return std::nullopt;
  const StateId t = candidates[uniform(rng, 0, candidates.size() - 1)];
  Idtmc out = s;
  const StateId copy = out.size();
  out.state_names.push_back(s.state_names[t] + "_copy");
  out.label.push_back(s.label[t]);
  out.edges.push_back(s.edges[t]);
  for (auto& row : out.edges) {
    auto it = row.find(t);
    if (it == row.end()) continue;
    const Interval& iv = it->second;
    const Interval half(iv.lo() / 2, iv.hi() / 2, iv.lo_open(), iv.hi_open());
    it->second = half;
    row[copy] = half;
  }
  return out;
}

namespace {

// {f : f_i in I_i, sum f = 1} is non-empty.
bool sums_to_one(const std::vector<Interval>& ivs) {
  Rational lo = 0, hi = 0;
  bool lo_open = false, hi_open = false;
  for (const auto& iv : ivs) {
    lo += iv.lo();
    hi += iv.hi();
    lo_open = lo_open || iv.lo_open();
    hi_open = hi_open || iv.hi_open();
  }
  return (lo_open ? lo < 1 : lo <= 1) && (hi_open ? hi > 1 : hi >= 1);
}

}  // namespace

std::vector<Interval> random_state_intervals(Rng& rng, std::size_t succ) {
  for (;;) {
    std::vector<Interval> ivs;
    const std::size_t k = uniform(rng, 1, succ);
    for (std::size_t i = 0; i < k; ++i) {
      Rational a = uniform(rng, 0, 2) == 0 ? Rational(0) : random_probability(rng, 4);
      Rational b = uniform(rng, 0, 2) == 0 ? Rational(1) : random_probability(rng, 4);
      if (a > b) std::swap(a, b);
      const bool degenerate = a == b;
      ivs.emplace_back(a, b, !degenerate && coin(rng), !degenerate && coin(rng));
    }
    if (sums_to_one(ivs)) return ivs;
  }
}

Idtmc star(const std::vector<Interval>& intervals) {
  Idtmc s;
  s.alphabet = letters(2);
  s.state_names = {"s"};
  s.label = {0};
  s.edges.resize(1);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const StateId t = s.state_names.size();
    s.state_names.push_back("t" + std::to_string(i + 1));
    s.label.push_back(1);
    s.edges[0][t] = intervals[i];
    s.edges.push_back({{t, Interval::point(1)}});
  }
  return s;
}

Dpa random_dpa(Rng& rng, const Alphabet& sigma, std::size_t states, unsigned colors) {
  Dpa d;
  d.alphabet = sigma;
  for (std::size_t s = 0; s < states; ++s) {
    std::vector<StateId> row;
    for (std::size_t a = 0; a < sigma.size(); ++a) row.push_back(uniform(rng, 0, states - 1));
    d.next.push_back(row);
    d.color.push_back(static_cast<unsigned>(uniform(rng, 1, colors)));
  }
  return d;
}

Dpa random_prefix_dpa(Rng& rng, const Alphabet& sigma, std::size_t depth) {
  // a letter tree of the given depth whose leaves loop with a random colour
  Dpa d;
  d.alphabet = sigma;
  std::vector<StateId> layer{0};
  d.next.emplace_back();
  d.color.push_back(1);
  for (std::size_t level = 0; level <= depth; ++level) {
    std::vector<StateId> below;
    for (const StateId s : layer) {
      if (level == depth) {
        d.next[s].assign(sigma.size(), s);
        d.color[s] = static_cast<unsigned>(uniform(rng, 1, 2));
        continue;
      }
      for (std::size_t a = 0; a < sigma.size(); ++a) {
        d.next[s].push_back(d.next.size());
        below.push_back(d.next.size());
        d.next.emplace_back();
        d.color.push_back(1);
      }
    }
    layer = below;
  }
  return d;
}

Lasso random_lasso(Rng& rng, std::size_t letter_count, std::size_t max_prefix, std::size_t max_cycle) {
  Lasso w;
  const auto p = uniform(rng, 0, max_prefix), c = uniform(rng, 1, max_cycle);
  for (std::size_t i = 0; i < p; ++i) w.prefix.push_back(uniform(rng, 0, letter_count - 1));
  for (std::size_t i = 0; i < c; ++i) w.cycle.push_back(uniform(rng, 0, letter_count - 1));
  return w;
}

Observation random_observation(Rng& rng, const Alphabet& sigma) {
  std::vector<std::string> seen;
  for (const auto& l : sigma.letters()) {
    if (coin(rng)) seen.push_back(l);
  }
  if (seen.empty()) seen.push_back(sigma.name(uniform(rng, 0, sigma.size() - 1)));
  return Observation(sigma, seen);
}

Mdp random_mdp(Rng& rng, std::size_t states, std::size_t max_actions, std::size_t max_succ) {
  Mdp m;
  m.actions.resize(states);
  for (auto& acts : m.actions) {
    const auto k = uniform(rng, 1, max_actions);
    for (std::size_t a = 0; a < k; ++a) {
      Mdp::Action act;
      for (const auto& [t, p] : random_distribution(rng, pick_distinct(rng, states, uniform(rng, 1, max_succ)))) {
        act.push_back({t, p});
      }
      acts.push_back(std::move(act));
    }
  }
  return m;
}

bool non_modal(const Idtmc& s) { return !modal_edges(s).any_modal(); }

SimPair random_simulating_pair(Rng& rng, std::size_t max_states, std::size_t letter_count, bool branching) {
  const IntervalStyle style{true, false};
  for (;;) {
    const std::size_t n = uniform(rng, 2, max_states);
    const Pts base = branching ? random_branching_pts(rng, n + 1, letter_count, 3) : random_pts(rng, n, letter_count, 3);
    Idtmc s1 = around(rng, base, style);
    Idtmc s2 = widen(rng, s1, style);
    if (s1.size() < max_states && coin(rng)) {
      if (auto split = split_state(rng, s1)) s1 = std::move(*split);
    }
    if (!non_modal(s1) || !non_modal(s2)) continue;
    if (!check_simulation_idtmc(s1, s2).holds()) continue;
    return {std::move(s1), std::move(s2)};
  }
}

}  // namespace opacity::testing
