#include "opacity/modal.hpp"

#include <stdexcept>

#include "opacity/errors.hpp"
#include "opacity/lp.hpp"

namespace opacity {

namespace {

// Can values drawn from `ivs` sum to exactly `target`?
bool reachable_sum(const std::vector<Interval>& ivs, const Rational& target) {
  Rational lo = 0, hi = 0;
  bool lo_closed = true, hi_closed = true;
  for (const auto& iv : ivs) {
    lo += iv.lo();
    hi += iv.hi();
    lo_closed = lo_closed && !iv.lo_open();
    hi_closed = hi_closed && !iv.hi_open();
  }
  return (lo_closed ? lo <= target : lo < target) && (hi_closed ? target <= hi : target < hi);
}

}  // namespace

MinProbability min_edge_probability(const Idtmc& spec, StateId s, StateId t) {
  if (!state_polytope_nonempty(spec, s)) {
    throw EmptyPolytope("empty distribution polytope at state " + spec.state_names.at(s));
  }
  const Interval& edge = spec.interval(s, t);
  std::vector<Interval> others;
  Rational others_hi = 0;
  for (const auto& [u, iv] : spec.edges[s]) {
    if (u == t) continue;
    others.push_back(iv);
    others_hi += iv.hi();
  }
  MinProbability m;
  m.value = edge.lo();
  if (1 - others_hi > m.value) m.value = 1 - others_hi;
  m.attainable = edge.contains(m.value) && reachable_sum(others, 1 - m.value);
  return m;
}

std::vector<ModalReport::Edge> ModalReport::modal() const {
  std::vector<Edge> out;
  for (const auto& e : edges) {
    if (e.modal) out.push_back(e);
  }
  return out;
}

ModalReport modal_edges(const Idtmc& spec) {
  ModalReport report;
  for (StateId s = 0; s < spec.size(); ++s) {
    for (const auto& [t, iv] : spec.edges[s]) {
      if (iv.is_zero()) continue;
      ModalReport::Edge e;
      e.from = s;
      e.to = t;
      e.min = min_edge_probability(spec, s, t);
      if (iv.contains(0)) {
        Rational m = 0;
        bool all_closed = true;
        for (const auto& [u, other] : spec.edges[s]) {
          if (u == t) continue;
          m += other.hi();
          all_closed = all_closed && !other.hi_open();
        }
        e.modal = m > 1 || (m == 1 && all_closed);
      }
      if (e.modal != (e.min.value == 0 && e.min.attainable)) {
        throw std::logic_error("modal verdict disagrees with the minimum edge probability");
      }
      report.edges.push_back(e);
    }
  }
  return report;
}

std::optional<Distribution> feasible_distribution(const Idtmc& spec, StateId s, const Distribution& fixed) {
  const auto succ = spec.successors(s);
  LinearFeasibilityProblem lp;
  lp.variables = succ.size();
  std::vector<std::pair<std::size_t, Rational>> sum;
  for (std::size_t i = 0; i < succ.size(); ++i) {
    const Interval& iv = spec.interval(s, succ[i]);
    auto it = fixed.find(succ[i]);
    if (it != fixed.end()) {
      if (!iv.contains(it->second)) return std::nullopt;
      lp.add({{i, Rational(1)}}, Sense::Equal, it->second);
    } else {
      lp.add({{i, Rational(1)}}, iv.lo_open() ? Sense::Greater : Sense::GreaterEq, iv.lo());
      lp.add({{i, Rational(1)}}, iv.hi_open() ? Sense::Less : Sense::LessEq, iv.hi());
    }
    sum.push_back({i, Rational(1)});
  }
  for (const auto& [t, p] : fixed) {
    if (p != 0 && spec.interval(s, t).is_zero()) return std::nullopt;
  }
  lp.add(sum, Sense::Equal, Rational(1));
  auto x = lp_feasible(lp);
  if (!x) return std::nullopt;
  Distribution f;
  for (std::size_t i = 0; i < succ.size(); ++i) {
    if ((*x)[i] != 0) f[succ[i]] = (*x)[i];
  }
  return f;
}

std::optional<MemorylessChoice> blocking_choice(const Idtmc& spec, StateId s, StateId t) {
  MemorylessChoice c;
  for (StateId x = 0; x < spec.size(); ++x) {
    auto f = x == s ? feasible_distribution(spec, x, {{t, Rational(0)}}) : feasible_distribution(spec, x);
    if (!f) return std::nullopt;
    c.choice.push_back(std::move(*f));
  }
  return c;
}

}  // namespace opacity
