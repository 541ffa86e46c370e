#include "opacity/model.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "opacity/errors.hpp"

namespace opacity {

namespace {

const Interval kZeroInterval{};

std::optional<StateId> find_name(const std::vector<std::string>& names, std::string_view name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<StateId>(it - names.begin());
}

void check_common(const Alphabet& alphabet, const std::vector<std::string>& names,
                  const std::vector<Letter>& label, StateId init, std::size_t rows,
                  ValidationReport& report) {
  if (names.empty()) {
    report.violations.push_back({"no-states", "model has no states"});
    return;
  }
  if (init >= names.size()) {
    report.violations.push_back({"init", "initial state is not a state of the model"});
  }
  if (label.size() != names.size()) {
    report.violations.push_back({"labels", "labelling is not total"});
  } else {
    for (StateId s = 0; s < names.size(); ++s) {
      if (label[s] >= alphabet.size()) {
        report.violations.push_back({"labels", "state " + names[s] + " has a label outside the alphabet"});
      }
    }
  }
  if (rows != names.size()) {
    report.violations.push_back({"transitions", "transition function is not total"});
  }
}

}  // namespace

Rational mass(const Distribution& d) {
  Rational total = 0;
  for (const auto& [s, p] : d) total += p;
  return total;
}

std::optional<StateId> Pts::find_state(std::string_view name) const {
  return find_name(state_names, name);
}

std::optional<StateId> Idtmc::find_state(std::string_view name) const {
  return find_name(state_names, name);
}

const Interval& Idtmc::interval(StateId s, StateId t) const {
  const auto& row = edges.at(s);
  const auto it = row.find(t);
  return it == row.end() ? kZeroInterval : it->second;
}

std::vector<StateId> Idtmc::successors(StateId s) const {
  std::vector<StateId> out;
  for (const auto& [t, iv] : edges.at(s)) {
    if (!iv.is_zero()) out.push_back(t);
  }
  return out;
}

ValidationReport validate_model(const Pts& pts) {
  ValidationReport report;
  check_common(pts.alphabet, pts.state_names, pts.label, pts.init, pts.delta.size(), report);
  if (!report.ok()) return report;
  for (StateId s = 0; s < pts.size(); ++s) {
    for (const auto& [t, p] : pts.delta[s]) {
      if (t >= pts.size()) {
        report.violations.push_back({"support", "state " + pts.state_names[s] + " has a successor outside the model"});
      }
      if (p <= 0 || p > 1) {
        report.violations.push_back({"probability", "edge " + pts.state_names[s] + "->" +
                                                        (t < pts.size() ? pts.state_names[t] : "?") +
                                                        " has probability " + to_string(p)});
      }
    }
    if (mass(pts.delta[s]) != 1) {
      report.violations.push_back({"distribution-sum", "distribution sum != 1 at state " +
                                                           pts.state_names[s] + " (sum " +
                                                           to_string(mass(pts.delta[s])) + ")"});
    }
  }
  return report;
}

ValidationReport validate_model(const Idtmc& idtmc) {
  ValidationReport report;
  check_common(idtmc.alphabet, idtmc.state_names, idtmc.label, idtmc.init, idtmc.edges.size(),
               report);
  if (!report.ok()) return report;
  for (StateId s = 0; s < idtmc.size(); ++s) {
    bool targets_ok = true;
    for (const auto& [t, iv] : idtmc.edges[s]) {
      if (t >= idtmc.size()) {
        targets_ok = false;
        report.violations.push_back({"support", "state " + idtmc.state_names[s] + " has a successor outside the model"});
      }
    }
    if (targets_ok && !state_polytope_nonempty(idtmc, s)) {
      report.violations.push_back({"empty-polytope", "empty distribution polytope at state " +
                                                         idtmc.state_names[s]});
    }
  }
  return report;
}

bool polytope_nonempty(const std::vector<Interval>& intervals) {
  // The achievable sums form an interval from sum(lo) to sum(hi); each end is
  // attained only if every bound contributing to it is closed.
  Rational lo_sum = 0, hi_sum = 0;
  bool lo_attained = true, hi_attained = true;
  for (const auto& iv : intervals) {
    lo_sum += iv.lo();
    hi_sum += iv.hi();
    lo_attained = lo_attained && !iv.lo_open();
    hi_attained = hi_attained && !iv.hi_open();
  }
  const bool above = lo_attained ? lo_sum <= 1 : lo_sum < 1;
  const bool below = hi_attained ? hi_sum >= 1 : hi_sum > 1;
  return above && below;
}

bool state_polytope_nonempty(const Idtmc& idtmc, StateId s) {
  std::vector<Interval> ivs;
  for (const auto& [t, iv] : idtmc.edges.at(s)) ivs.push_back(iv);
  return polytope_nonempty(ivs);
}

bool in_state_polytope(const Idtmc& idtmc, StateId s, const Distribution& f) {
  if (mass(f) != 1) return false;
  for (const auto& [t, p] : f) {
    if (t >= idtmc.size() || !idtmc.interval(s, t).contains(p)) return false;
  }
  for (const auto& [t, iv] : idtmc.edges.at(s)) {
    if (!f.contains(t) && !iv.contains(0)) return false;
  }
  return true;
}

std::vector<Distribution> polytope_vertices(const Idtmc& idtmc, StateId s) {
  const auto succ = idtmc.successors(s);
  std::vector<Interval> closed;
  for (StateId t : succ) closed.push_back(idtmc.interval(s, t).closure());
  if (!polytope_nonempty(closed)) {
    throw EmptyPolytope("empty distribution polytope at state " + idtmc.state_names.at(s));
  }
  const std::size_t d = succ.size();
  // suffix sums bound what the unassigned coordinates can still contribute
  std::vector<Rational> lo_rest(d + 1, 0), hi_rest(d + 1, 0);
  for (std::size_t i = d; i-- > 0;) {
    lo_rest[i] = lo_rest[i + 1] + closed[i].lo();
    hi_rest[i] = hi_rest[i + 1] + closed[i].hi();
  }

  std::set<std::vector<Rational>> found;
  std::vector<Rational> point(d);
  // Assign coordinates left to right; `free_index` is the single coordinate
  // allowed strictly between its bounds, resolved once all others are fixed.
  auto search = [&](auto&& self, std::size_t i, const Rational& sum,
                    std::optional<std::size_t> free_index) -> void {
    if (i == d) {
      if (free_index) {
        const Rational value = 1 - sum;
        if (value < closed[*free_index].lo() || value > closed[*free_index].hi()) return;
        point[*free_index] = value;
      } else if (sum != 1) {
        return;
      }
      found.insert(point);
      return;
    }
    Rational lo_more = lo_rest[i + 1], hi_more = hi_rest[i + 1];
    if (free_index) {
      // the free coordinate has already been counted as unassigned
      lo_more += closed[*free_index].lo();
      hi_more += closed[*free_index].hi();
    }
    for (const Rational* bound : {&closed[i].lo(), &closed[i].hi()}) {
      if (bound == &closed[i].hi() && closed[i].is_point()) break;
      const Rational next = sum + *bound;
      if (next + lo_more > 1 || next + hi_more < 1) continue;
      point[i] = *bound;
      self(self, i + 1, next, free_index);
    }
    if (!free_index && !closed[i].is_point()) {
      if (sum + lo_rest[i] <= 1 && sum + hi_rest[i] >= 1) self(self, i + 1, sum, i);
    }
  };
  search(search, 0, Rational(0), std::nullopt);

  std::vector<Distribution> out;
  for (const auto& v : found) {
    Distribution f;
    for (std::size_t i = 0; i < d; ++i) {
      if (v[i] != 0) f.emplace(succ[i], v[i]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

Pts schedule_memoryless(const Idtmc& idtmc, const MemorylessChoice& choice) {
  if (choice.choice.size() != idtmc.size()) {
    throw ChoiceOutsideInterval("memoryless choice does not cover every state");
  }
  Pts pts;
  pts.alphabet = idtmc.alphabet;
  pts.state_names = idtmc.state_names;
  pts.label = idtmc.label;
  pts.init = idtmc.init;
  for (StateId s = 0; s < idtmc.size(); ++s) {
    const auto& f = choice.choice[s];
    const auto& name = idtmc.state_names[s];
    for (const auto& [t, p] : f) {
      if (t >= idtmc.size()) throw ChoiceOutsideInterval("choice at " + name + " leaves the model");
      const auto& iv = idtmc.interval(s, t);
      if (p <= 0 || !iv.contains(p)) {
        throw ChoiceOutsideInterval("edge " + name + "->" + idtmc.state_names[t] + ": " +
                                    to_string(p) + " not in " + to_string(iv));
      }
    }
    for (const auto& [t, iv] : idtmc.edges[s]) {
      if (!f.contains(t) && !iv.contains(0)) {
        throw ChoiceOutsideInterval("edge " + name + "->" + idtmc.state_names[t] +
                                    ": 0/1 not in " + to_string(iv));
      }
    }
    if (mass(f) != 1) {
      throw ChoiceOutsideInterval("choice at " + name + " sums to " + to_string(mass(f)));
    }
    pts.delta.push_back(f);
  }
  return pts;
}

Idtmc as_idtmc(const Pts& pts) {
  Idtmc out;
  out.alphabet = pts.alphabet;
  out.state_names = pts.state_names;
  out.label = pts.label;
  out.init = pts.init;
  out.edges.resize(pts.size());
  for (StateId s = 0; s < pts.size(); ++s) {
    for (const auto& [t, p] : pts.delta[s]) out.edges[s].emplace(t, Interval::point(p));
  }
  return out;
}

namespace {

template <typename Successors>
Nba trace_nba_impl(const Alphabet& alphabet, const std::vector<Letter>& label, StateId init,
                   std::size_t n, Successors&& successors) {
  Nba nba(alphabet);
  for (StateId s = 0; s < n; ++s) nba.add_state(true);
  const StateId dispatch = nba.add_state(true);
  nba.initial = {dispatch};
  nba.add_transition(dispatch, label[init], init);
  for (StateId s = 0; s < n; ++s) {
    for (StateId t : successors(s)) nba.add_transition(s, label[t], t);
  }
  return nba;
}

}  // namespace

Nba trace_nba(const Pts& pts) {
  return trace_nba_impl(pts.alphabet, pts.label, pts.init, pts.size(), [&](StateId s) {
    std::vector<StateId> out;
    for (const auto& [t, p] : pts.delta[s]) {
      if (p > 0) out.push_back(t);
    }
    return out;
  });
}

Nba trace_nba(const Idtmc& idtmc) {
  return trace_nba_impl(idtmc.alphabet, idtmc.label, idtmc.init, idtmc.size(),
                        [&](StateId s) { return idtmc.successors(s); });
}

namespace {

template <typename Step>
Unfolding unfold_impl(const Alphabet& alphabet, const std::vector<Letter>& label, StateId init,
                      std::size_t length, Step&& step) {
  Unfolding u;
  u.alphabet = alphabet;
  if (length == 0) return u;
  u.nodes.push_back({init, label[init], Rational(1), 0, 1});
  Run run;
  for (std::size_t i = 0; i < u.nodes.size(); ++i) {
    if (u.nodes[i].length >= length) continue;
    // rebuild the run of node i
    run.clear();
    for (std::size_t j = i;; j = u.nodes[j].parent) {
      run.push_back(u.nodes[j].state);
      if (j == 0) break;
    }
    std::reverse(run.begin(), run.end());
    const Distribution dist = step(run);
    for (const auto& [t, p] : dist) {
      if (p == 0) continue;
      // copy first: push_back may reallocate
      Unfolding::Node parent = u.nodes[i];
      u.nodes.push_back({t, label[t], parent.probability * p, i, parent.length + 1});
    }
  }
  return u;
}

}  // namespace

Unfolding unfold(const Pts& pts, std::size_t length) {
  return unfold_impl(pts.alphabet, pts.label, pts.init, length,
                     [&](const Run& run) { return pts.delta.at(run.back()); });
}

Unfolding unfold(const Idtmc& idtmc, const DepthBoundedScheduler& scheduler, std::size_t length) {
  return unfold_impl(idtmc.alphabet, idtmc.label, idtmc.init, length, [&](const Run& run) {
    const auto it = scheduler.choice.find(run);
    if (it == scheduler.choice.end()) {
      throw std::out_of_range("scheduler has no choice for a reached run of length " +
                              std::to_string(run.size()));
    }
    if (!in_state_polytope(idtmc, run.back(), it->second)) {
      throw ChoiceOutsideInterval("scheduler choice violates the intervals of state " +
                                  idtmc.state_names.at(run.back()));
    }
    return it->second;
  });
}

bool scheduler_respects_intervals(const Idtmc& idtmc, const DepthBoundedScheduler& scheduler) {
  for (const auto& [run, f] : scheduler.choice) {
    if (run.empty() || run.size() > scheduler.depth) return false;
    if (!in_state_polytope(idtmc, run.back(), f)) return false;
  }
  return true;
}

DepthBoundedScheduler memoryless_scheduler(const Idtmc& idtmc, const MemorylessChoice& choice,
                                           std::size_t depth) {
  DepthBoundedScheduler sched;
  sched.depth = depth;
  if (depth == 0) return sched;
  std::deque<Run> queue{{idtmc.init}};
  while (!queue.empty()) {
    Run run = std::move(queue.front());
    queue.pop_front();
    const auto& f = choice.choice.at(run.back());
    sched.choice.emplace(run, f);
    if (run.size() == depth) continue;
    for (const auto& [t, p] : f) {
      if (p == 0) continue;
      Run next = run;
      next.push_back(t);
      queue.push_back(std::move(next));
    }
  }
  return sched;
}

}  // namespace opacity
