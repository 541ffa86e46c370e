#include "opacity/relations.hpp"

#include <algorithm>
#include <functional>

#include "opacity/errors.hpp"
#include "opacity/lp.hpp"

namespace opacity {

namespace {

using Terms = std::vector<std::pair<std::size_t, Rational>>;
using RelationMatrix = std::vector<std::vector<bool>>;

void require_valid(const Pts& m, const char* what) {
  const auto report = validate_model(m);
  if (!report.ok()) throw InvalidModel(std::string(what) + ": " + report.violations.front().message);
}

void require_valid(const Idtmc& m, const char* what) {
  const auto report = validate_model(m);
  if (!report.ok()) throw InvalidModel(std::string(what) + ": " + report.violations.front().message);
}

// Adds lo/hi constraints on `terms` for membership in `iv`, skipping the ones
// implied by non-negativity and by the terms summing to at most 1.
void add_interval(LinearFeasibilityProblem& lp, const Terms& terms, const Interval& iv) {
  if (iv.lo_open()) lp.add(terms, Sense::Greater, iv.lo());
  else if (iv.lo() > 0) lp.add(terms, Sense::GreaterEq, iv.lo());
  if (iv.hi_open()) lp.add(terms, Sense::Less, iv.hi());
  else if (iv.hi() < 1) lp.add(terms, Sense::LessEq, iv.hi());
}

struct FixpointOutcome {
  RelationMatrix rel;
  std::vector<StatePair> removed;
};

// Greatest fixpoint: sweeps pairs in lexicographic order and drops every pair
// whose local problem is infeasible under the current relation.
template <typename Feasible>
FixpointOutcome greatest_fixpoint(RelationMatrix rel, Feasible&& feasible) {
  FixpointOutcome out;
  bool changed = true;
  while (changed) {
    changed = false;
    for (StateId a = 0; a < rel.size(); ++a) {
      for (StateId b = 0; b < rel[a].size(); ++b) {
        if (rel[a][b] && !feasible(a, b, rel)) {
          rel[a][b] = false;
          out.removed.push_back({a, b});
          changed = true;
        }
      }
    }
  }
  out.rel = std::move(rel);
  return out;
}

template <typename M1, typename M2>
RelationMatrix label_matching(const M1& m1, const M2& m2) {
  RelationMatrix rel(m1.size(), std::vector<bool>(m2.size(), false));
  for (StateId a = 0; a < m1.size(); ++a) {
    for (StateId b = 0; b < m2.size(); ++b) rel[a][b] = m1.label[a] == m2.label[b];
  }
  return rel;
}

template <typename M1, typename M2>
Refutation refute(const M1& m1, const M2& m2, std::vector<StatePair> removed) {
  Refutation r;
  r.removed = std::move(removed);
  if (m1.label[m1.init] != m2.label[m2.init]) {
    r.reason = "initial labels differ (" + m1.alphabet.name(m1.label[m1.init]) + " vs " +
               m2.alphabet.name(m2.label[m2.init]) + ")";
  } else {
    r.reason = "pair (" + m1.state_names[m1.init] + ", " + m2.state_names[m2.init] +
               ") was removed by the fixpoint";
  }
  return r;
}

// ---------------------------------------------------------------- satisfaction

std::optional<std::map<StatePair, Rational>> solve_sat_pair(const Pts& pts, const Idtmc& spec,
                                                            StateId q, StateId s,
                                                            const RelationMatrix& rel) {
  LinearFeasibilityProblem lp;
  std::vector<StatePair> var_pair;
  std::map<StateId, Terms> column;
  const auto succ = spec.successors(s);
  for (const auto& [q2, p] : pts.delta[q]) {
    Terms row;
    for (StateId s2 : succ) {
      if (!rel[q2][s2]) continue;
      const std::size_t v = lp.add_variable();
      var_pair.push_back({q2, s2});
      row.push_back({v, Rational(1)});
      column[s2].push_back({v, Rational(1)});
    }
    if (row.empty()) return std::nullopt;
    lp.add(row, Sense::Equal, p);
  }
  for (const auto& [s2, iv] : spec.edges[s]) {
    auto it = column.find(s2);
    if (it == column.end()) {
      if (!iv.contains(0)) return std::nullopt;
      continue;
    }
    add_interval(lp, it->second, iv);
  }
  auto x = lp_feasible(lp);
  if (!x) return std::nullopt;
  std::map<StatePair, Rational> joint;
  for (std::size_t v = 0; v < x->size(); ++v) {
    if ((*x)[v] != 0) joint[var_pair[v]] = (*x)[v];
  }
  return joint;
}

// ------------------------------------------------------------------ simulation

// Data about T1(s1) shared by all pairs (s1, ·).
struct SourcePolytope {
  std::vector<StateId> relevant;        // successors in the support of some vertex
  std::vector<Distribution> vertices;   // of the closure
  /// Each option lists, per vertex, whether a strict target bound must hold
  /// strictly there. A strict bound holds on the open polytope iff the
  /// vertices where it is tight all lie on one open facet hyperplane.
  std::vector<std::vector<bool>> strict_options;
};

SourcePolytope describe_source(const Idtmc& s1, StateId a) {
  SourcePolytope sp;
  sp.vertices = polytope_vertices(s1, a);
  std::set<StateId> relevant;
  for (const auto& v : sp.vertices) {
    for (const auto& [t, p] : v) relevant.insert(t);
  }
  sp.relevant.assign(relevant.begin(), relevant.end());

  const std::size_t nv = sp.vertices.size();
  auto coord = [&](std::size_t v, StateId t) {
    auto it = sp.vertices[v].find(t);
    return it == sp.vertices[v].end() ? Rational(0) : it->second;
  };
  std::vector<std::vector<bool>> on_face;  // per open hyperplane
  for (const auto& [t, iv] : s1.edges[a]) {
    if (iv.is_zero()) continue;
    for (int side = 0; side < 2; ++side) {
      const bool open = side == 0 ? iv.lo_open() : iv.hi_open();
      if (!open) continue;
      const Rational& value = side == 0 ? iv.lo() : iv.hi();
      std::vector<bool> in(nv);
      bool any = false;
      for (std::size_t v = 0; v < nv; ++v) {
        in[v] = coord(v, t) == value;
        any = any || in[v];
      }
      if (any) on_face.push_back(std::move(in));
    }
  }
  // keep only maximal faces; a larger face is a weaker requirement
  std::sort(on_face.begin(), on_face.end());
  on_face.erase(std::unique(on_face.begin(), on_face.end()), on_face.end());
  auto subset = [](const std::vector<bool>& x, const std::vector<bool>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] && !y[i]) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < on_face.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < on_face.size() && !dominated; ++j) {
      dominated = j != i && on_face[i] != on_face[j] && subset(on_face[i], on_face[j]);
    }
    if (dominated) continue;
    std::vector<bool> strict(nv);
    for (std::size_t v = 0; v < nv; ++v) strict[v] = !on_face[i][v];
    sp.strict_options.push_back(std::move(strict));
  }
  if (sp.strict_options.empty()) sp.strict_options.push_back(std::vector<bool>(nv, true));
  return sp;
}

std::optional<std::map<StateId, Distribution>> solve_sim_pair(const SourcePolytope& sp,
                                                              const Idtmc& s2, StateId b,
                                                              const RelationMatrix& rel) {
  LinearFeasibilityProblem base;
  std::map<std::pair<StateId, StateId>, std::size_t> var;
  for (StateId t : sp.relevant) {
    Terms row;
    for (StateId u = 0; u < s2.size(); ++u) {
      if (!rel[t][u]) continue;
      const std::size_t v = base.add_variable();
      var[{t, u}] = v;
      row.push_back({v, Rational(1)});
    }
    if (row.empty()) return std::nullopt;
    base.add(row, Sense::Equal, Rational(1));
  }

  struct StrictBound {
    std::vector<Terms> image;  // per vertex
    Sense strict, loose;
    Rational bound;
  };
  std::vector<StrictBound> strict_bounds;
  for (StateId u = 0; u < s2.size(); ++u) {
    const Interval& iv = s2.interval(b, u);
    std::vector<Terms> image(sp.vertices.size());
    bool has_terms = false;
    for (std::size_t v = 0; v < sp.vertices.size(); ++v) {
      for (const auto& [t, p] : sp.vertices[v]) {
        auto it = var.find({t, u});
        if (it != var.end()) {
          image[v].push_back({it->second, p});
          has_terms = true;
        }
      }
    }
    if (!has_terms) {
      if (!iv.contains(0)) return std::nullopt;
      continue;
    }
    if (iv.lo_open()) strict_bounds.push_back({image, Sense::Greater, Sense::GreaterEq, iv.lo()});
    else if (iv.lo() > 0) {
      for (const auto& img : image) base.add(img, Sense::GreaterEq, iv.lo());
    }
    if (iv.hi_open()) strict_bounds.push_back({image, Sense::Less, Sense::LessEq, iv.hi()});
    else if (iv.hi() < 1) {
      for (const auto& img : image) base.add(img, Sense::LessEq, iv.hi());
    }
  }

  const std::size_t options = sp.strict_options.size();
  std::vector<std::size_t> chosen;
  // Depth-first search over one open facet per strict bound; unassigned
  // bounds are imposed non-strictly, which keeps every prefix a relaxation.
  std::function<std::optional<std::vector<Rational>>()> search = [&]() -> std::optional<std::vector<Rational>> {
    LinearFeasibilityProblem lp = base;
    for (std::size_t i = 0; i < strict_bounds.size(); ++i) {
      const auto& sb = strict_bounds[i];
      for (std::size_t v = 0; v < sb.image.size(); ++v) {
        const bool strict = i < chosen.size() && sp.strict_options[chosen[i]][v];
        lp.add(sb.image[v], strict ? sb.strict : sb.loose, sb.bound);
      }
    }
    auto x = lp_feasible(lp);
    if (!x || chosen.size() == strict_bounds.size()) return x;
    for (std::size_t o = 0; o < options; ++o) {
      chosen.push_back(o);
      auto r = search();
      chosen.pop_back();
      if (r) return r;
    }
    return std::nullopt;
  };
  auto x = search();
  if (!x) return std::nullopt;

  std::map<StateId, Distribution> delta;
  for (const auto& [key, v] : var) {
    if ((*x)[v] != 0) delta[key.first][key.second] = (*x)[v];
  }
  return delta;
}

}  // namespace

SatResult check_satisfaction(const Pts& pts, const Idtmc& spec) {
  require_same_alphabet(pts.alphabet, spec.alphabet, "satisfaction");
  require_valid(pts, "implementation");
  require_valid(spec, "specification");
  auto outcome = greatest_fixpoint(label_matching(pts, spec), [&](StateId q, StateId s, const RelationMatrix& rel) {
    return solve_sat_pair(pts, spec, q, s, rel).has_value();
  });
  SatResult result;
  if (!outcome.rel[pts.init][spec.init]) {
    result.refutation = refute(pts, spec, std::move(outcome.removed));
    return result;
  }
  SatWitness w;
  for (StateId q = 0; q < pts.size(); ++q) {
    for (StateId s = 0; s < spec.size(); ++s) {
      if (!outcome.rel[q][s]) continue;
      w.relation.insert({q, s});
      w.joint[{q, s}] = *solve_sat_pair(pts, spec, q, s, outcome.rel);
    }
  }
  result.witness = std::move(w);
  return result;
}

SimResult check_simulation_idtmc(const Idtmc& s1, const Idtmc& s2) {
  require_same_alphabet(s1.alphabet, s2.alphabet, "simulation");
  require_valid(s1, "simulated model");
  require_valid(s2, "simulating model");
  std::vector<SourcePolytope> sources;
  for (StateId a = 0; a < s1.size(); ++a) sources.push_back(describe_source(s1, a));
  auto outcome = greatest_fixpoint(label_matching(s1, s2), [&](StateId a, StateId b, const RelationMatrix& rel) {
    return solve_sim_pair(sources[a], s2, b, rel).has_value();
  });
  SimResult result;
  if (!outcome.rel[s1.init][s2.init]) {
    result.refutation = refute(s1, s2, std::move(outcome.removed));
    return result;
  }
  SimWitness w;
  for (StateId a = 0; a < s1.size(); ++a) {
    for (StateId b = 0; b < s2.size(); ++b) {
      if (!outcome.rel[a][b]) continue;
      w.relation.insert({a, b});
      w.delta[{a, b}] = *solve_sim_pair(sources[a], s2, b, outcome.rel);
    }
  }
  result.witness = std::move(w);
  return result;
}

SimResult check_simulation_pts(const Pts& a1, const Pts& a2) {
  return check_simulation_idtmc(as_idtmc(a1), as_idtmc(a2));
}

bool validate_sat_witness(const Pts& pts, const Idtmc& spec, const SatWitness& w, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!w.relation.contains({pts.init, spec.init})) return fail("initial states are not related");
  for (const auto& [q, s] : w.relation) {
    const std::string pair = "(" + pts.state_names.at(q) + ", " + spec.state_names.at(s) + ")";
    if (pts.label[q] != spec.label[s]) return fail("labels differ at " + pair);
    auto jt = w.joint.find({q, s});
    if (jt == w.joint.end()) return fail("no joint distribution for " + pair);
    std::map<StateId, Rational> row, col;
    for (const auto& [key, p] : jt->second) {
      if (p < 0) return fail("negative weight in " + pair);
      if (p == 0) continue;
      if (!w.relation.contains(key)) return fail("support leaves the relation at " + pair);
      row[key.first] += p;
      col[key.second] += p;
    }
    for (const auto& [q2, p] : row) {
      if (!pts.delta[q].contains(q2)) return fail("row outside the support of the PTS at " + pair);
    }
    for (const auto& [q2, p] : pts.delta[q]) {
      if (row[q2] != p) return fail("row marginal differs from the PTS at " + pair);
    }
    for (StateId s2 = 0; s2 < spec.size(); ++s2) {
      const Rational c = col.contains(s2) ? col[s2] : Rational(0);
      if (!spec.interval(s, s2).contains(c)) return fail("column marginal outside the interval at " + pair);
    }
  }
  return true;
}

bool validate_sim_witness(const Idtmc& s1, const Idtmc& s2, const SimWitness& w, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!w.relation.contains({s1.init, s2.init})) return fail("initial states are not related");
  for (const auto& [a, b] : w.relation) {
    const std::string pair = "(" + s1.state_names.at(a) + ", " + s2.state_names.at(b) + ")";
    if (s1.label[a] != s2.label[b]) return fail("labels differ at " + pair);
    static const std::map<StateId, Distribution> none;
    auto dt = w.delta.find({a, b});
    const auto& delta = dt == w.delta.end() ? none : dt->second;
    std::set<StateId> relevant;
    for (const auto& v : polytope_vertices(s1, a)) {
      for (const auto& [t, p] : v) relevant.insert(t);
    }
    for (StateId t : relevant) {
      auto it = delta.find(t);
      if (it == delta.end()) return fail("δ undefined for a successor at " + pair);
      Rational sum = 0;
      for (const auto& [u, p] : it->second) {
        if (p < 0) return fail("negative δ at " + pair);
        if (p > 0 && !w.relation.contains({t, u})) return fail("δ support leaves the relation at " + pair);
        sum += p;
      }
      if (sum != 1) return fail("δ row does not sum to 1 at " + pair);
    }
    // Image condition: no f in T1(a) may push the image outside T2(b)(u).
    const auto succ = s1.successors(a);
    LinearFeasibilityProblem polytope;
    polytope.variables = succ.size();
    Terms sum_f;
    for (std::size_t i = 0; i < succ.size(); ++i) {
      const Interval& iv = s1.interval(a, succ[i]);
      polytope.add({{i, Rational(1)}}, iv.lo_open() ? Sense::Greater : Sense::GreaterEq, iv.lo());
      polytope.add({{i, Rational(1)}}, iv.hi_open() ? Sense::Less : Sense::LessEq, iv.hi());
      sum_f.push_back({i, Rational(1)});
    }
    polytope.add(sum_f, Sense::Equal, Rational(1));
    for (StateId u = 0; u < s2.size(); ++u) {
      Terms image;
      for (std::size_t i = 0; i < succ.size(); ++i) {
        auto it = delta.find(succ[i]);
        if (it == delta.end()) continue;
        auto jt = it->second.find(u);
        if (jt != it->second.end() && jt->second != 0) image.push_back({i, jt->second});
      }
      const Interval& iv = s2.interval(b, u);
      LinearFeasibilityProblem below = polytope;
      below.add(image, iv.lo_open() ? Sense::LessEq : Sense::Less, iv.lo());
      LinearFeasibilityProblem above = polytope;
      above.add(image, iv.hi_open() ? Sense::GreaterEq : Sense::Greater, iv.hi());
      if (lp_feasible(below) || lp_feasible(above)) {
        return fail("some f in T1 maps outside T2 towards " + s2.state_names[u] + " at " + pair);
      }
    }
  }
  return true;
}

bool validate_sim_witness(const Pts& a1, const Pts& a2, const SimWitness& w, std::string* why) {
  return validate_sim_witness(as_idtmc(a1), as_idtmc(a2), w, why);
}

SimWitness sat_witness_to_simulation(const Pts& pts, const Idtmc& spec, const SatWitness& w) {
  SimWitness out;
  out.relation = w.relation;
  for (const auto& [q, s] : w.relation) {
    auto& delta = out.delta[{q, s}];
    const auto jt = w.joint.find({q, s});
    for (const auto& [q2, p] : pts.delta[q]) {
      Rational row = 0;
      if (jt != w.joint.end()) {
        for (const auto& [key, x] : jt->second) {
          if (key.first == q2) row += x;
        }
      }
      if (row == 0) {
        throw DegenerateRow("δ_sat(" + pts.state_names[q2] + ", S) = 0 for pair (" + pts.state_names[q] +
                            ", " + spec.state_names[s] + ")");
      }
      for (const auto& [key, x] : jt->second) {
        if (key.first == q2 && x != 0) delta[q2][key.second] = x / row;
      }
    }
  }
  std::string why;
  if (!validate_sim_witness(as_idtmc(pts), spec, out, &why)) {
    throw Error("derived simulation witness is invalid: " + why);
  }
  return out;
}

BisimResult check_prob_bisimulation(const Pts& a1, const Pts& a2) {
  require_same_alphabet(a1.alphabet, a2.alphabet, "bisimulation");
  const std::size_t n1 = a1.size(), n = a1.size() + a2.size();
  auto label = [&](std::size_t s) { return s < n1 ? a1.label[s] : a2.label[s - n1]; };
  auto delta = [&](std::size_t s) {
    std::vector<std::pair<std::size_t, Rational>> out;
    if (s < n1) {
      for (const auto& [t, p] : a1.delta[s]) out.push_back({t, p});
    } else {
      for (const auto& [t, p] : a2.delta[s - n1]) out.push_back({t + n1, p});
    }
    return out;
  };
  std::vector<std::size_t> block(n);
  for (std::size_t s = 0; s < n; ++s) block[s] = label(s);
  std::size_t count = 0;
  for (;;) {
    // signature: current block and the mass sent to every block
    std::map<std::pair<std::size_t, std::map<std::size_t, Rational>>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::map<std::size_t, Rational> masses;
      for (const auto& [t, p] : delta(s)) masses[block[t]] += p;
      auto key = std::make_pair(block[s], std::move(masses));
      auto [it, fresh] = ids.emplace(std::move(key), ids.size());
      next[s] = it->second;
    }
    const bool stable = ids.size() == count;
    count = ids.size();
    block = std::move(next);
    if (stable) break;
  }
  BisimResult r;
  r.block = std::move(block);
  r.blocks = count;
  r.bisimilar = r.block[a1.init] == r.block[n1 + a2.init];
  return r;
}

DepthBoundedScheduler transfer_scheduler(const Idtmc& s1, const Idtmc& s2, const SimWitness& w,
                                         const DepthBoundedScheduler& a1, std::size_t depth,
                                         TransferWeighting weighting) {
  require_same_alphabet(s1.alphabet, s2.alphabet, "scheduler transfer");
  DepthBoundedScheduler a2;
  a2.depth = depth;
  if (depth == 0) return a2;
  if (!w.relation.contains({s1.init, s2.init})) {
    throw UnreachableSimClass("initial states are not related by the witness");
  }

  auto choice1 = [&](const Run& r1) -> const Distribution& {
    auto it = a1.choice.find(r1);
    if (it == a1.choice.end()) {
      throw std::out_of_range("source scheduler has no choice for a reached run of length " +
                              std::to_string(r1.size()));
    }
    return it->second;
  };
  auto delta = [&](StateId x1, StateId x2, StateId t) -> const Distribution& {
    auto it = w.delta.find({x1, x2});
    if (it != w.delta.end()) {
      auto jt = it->second.find(t);
      if (jt != it->second.end()) return jt->second;
    }
    throw Error("witness has no δ for successor " + s1.state_names.at(t) + " of pair (" +
                s1.state_names.at(x1) + ", " + s2.state_names.at(x2) + ")");
  };
  auto related = [&](const Run& r1, const Run& r2) {
    for (std::size_t i = 0; i < r1.size(); ++i) {
      if (!w.relation.contains({r1[i], r2[i]})) return false;
    }
    return true;
  };

  // Runs of S1(A1) with positive probability at the current length; used by
  // the literal weighting only.
  std::map<Run, Rational> runs1{{{s1.init}, Rational(1)}};
  // Per run of S2(A2): related runs of S1(A1) with their weights.
  std::map<Run, std::map<Run, Rational>> level;
  level[{s2.init}][{s1.init}] = 1;

  for (std::size_t len = 1; len <= depth && !level.empty(); ++len) {
    std::map<Run, std::map<Run, Rational>> next_level;
    for (auto& [r2, weights] : level) {
      if (weighting == TransferWeighting::RunProbability) {
        weights.clear();
        for (const auto& [r1, p] : runs1) {
          if (p > 0 && related(r1, r2)) weights[r1] = p;
        }
      }
      Rational total = 0;
      for (const auto& [r1, x] : weights) total += x;
      if (total == 0) {
        std::string names;
        for (StateId s : r2) names += (names.empty() ? "" : " ") + s2.state_names[s];
        throw UnreachableSimClass("no related run of positive probability for run [" + names + "]");
      }
      Distribution f2;
      std::map<std::pair<StateId, StateId>, Rational> step;  // (s1', s2') -> coupled mass
      for (const auto& [r1, x] : weights) {
        for (const auto& [t1, p] : choice1(r1)) {
          if (p == 0) continue;
          for (const auto& [t2, d] : delta(r1.back(), r2.back(), t1)) {
            if (d == 0) continue;
            f2[t2] += x / total * p * d;
            if (len < depth && weighting == TransferWeighting::Coupling) {
              Run c1 = r1;
              c1.push_back(t1);
              Run c2 = r2;
              c2.push_back(t2);
              next_level[c2][c1] += x * p * d;
            }
          }
        }
      }
      if (len < depth && weighting == TransferWeighting::RunProbability) {
        for (const auto& [t2, p] : f2) {
          Run c2 = r2;
          c2.push_back(t2);
          next_level[c2];
        }
      }
      a2.choice.emplace(r2, std::move(f2));
    }
    if (weighting == TransferWeighting::RunProbability && len < depth) {
      std::map<Run, Rational> grown;
      for (const auto& [r1, p] : runs1) {
        for (const auto& [t, q] : choice1(r1)) {
          if (q == 0) continue;
          Run c = r1;
          c.push_back(t);
          grown[c] += p * q;
        }
      }
      runs1 = std::move(grown);
    }
    level = std::move(next_level);
  }
  return a2;
}

namespace {

std::map<std::vector<Letter>, Rational> word_cones(const Unfolding& u, std::size_t k) {
  std::map<std::vector<Letter>, Rational> cones;
  std::vector<std::vector<Letter>> words(u.nodes.size());
  for (std::size_t i = 0; i < u.nodes.size(); ++i) {
    const auto& node = u.nodes[i];
    if (i > 0) words[i] = words[node.parent];
    words[i].push_back(node.letter);
    if (node.length <= k && node.probability > 0) cones[words[i]] += node.probability;
  }
  return cones;
}

}  // namespace

ConeReport verify_cone_equality(const Unfolding& u1, const Unfolding& u2, std::size_t k) {
  require_same_alphabet(u1.alphabet, u2.alphabet, "cone comparison");
  const auto c1 = word_cones(u1, k);
  const auto c2 = word_cones(u2, k);
  ConeReport report;
  report.max_discrepancy = 0;
  auto consider = [&](const std::vector<Letter>& word, const Rational& p1, const Rational& p2) {
    Rational diff = abs(p1 - p2);
    if (diff > report.max_discrepancy) {
      report.max_discrepancy = diff;
      report.worst_word = word;
    }
  };
  for (const auto& [word, p] : c1) {
    auto it = c2.find(word);
    if (it == c2.end()) {
      report.only_first.push_back(word);
      consider(word, p, 0);
    } else {
      consider(word, p, it->second);
    }
  }
  for (const auto& [word, p] : c2) {
    if (!c1.contains(word)) {
      report.only_second.push_back(word);
      consider(word, 0, p);
    }
  }
  return report;
}

ConeReport verify_cone_equality(const Pts& a1, const Pts& a2, std::size_t k) {
  return verify_cone_equality(unfold(a1, k), unfold(a2, k), k);
}

}  // namespace opacity
