#include <doctest.h>

#include "opacity/lp.hpp"
#include "support.hpp"

using namespace opacity;
using namespace opacity::testing;

TEST_CASE("feasible system returns a satisfying point") {
  LinearFeasibilityProblem p;
  const auto x = p.add_variable(), y = p.add_variable();
  p.add({{x, 1}, {y, 1}}, Sense::Equal, 1);
  p.add({{x, 1}}, Sense::GreaterEq, rational(1, 3));
  p.add({{y, 1}}, Sense::GreaterEq, rational(1, 2));
  const auto sol = lp_feasible(p);
  REQUIRE(sol);
  CHECK((*sol)[x] + (*sol)[y] == 1);
  CHECK((*sol)[x] >= rational(1, 3));
  CHECK((*sol)[y] >= rational(1, 2));
}

TEST_CASE("strict inequalities are honoured exactly") {
  LinearFeasibilityProblem p;
  const auto x = p.add_variable(), y = p.add_variable();
  p.add({{x, 1}, {y, 1}}, Sense::Equal, 1);
  p.add({{x, 1}}, Sense::Less, rational(1, 2));
  p.add({{y, 1}}, Sense::LessEq, rational(1, 2));
  CHECK_FALSE(lp_feasible(p));

  p.constraints.back().sense = Sense::Less;
  p.constraints.back().rhs = rational(2, 3);
  const auto sol = lp_feasible(p);
  REQUIRE(sol);
  CHECK((*sol)[x] < rational(1, 2));
  CHECK((*sol)[y] < rational(2, 3));
}

TEST_CASE("maximize reports optimal, infeasible and unbounded") {
  LinearFeasibilityProblem p;
  const auto x = p.add_variable(), y = p.add_variable();
  p.add({{x, 1}, {y, 2}}, Sense::LessEq, 4);
  p.add({{x, 3}, {y, 1}}, Sense::LessEq, 6);
  auto opt = lp_maximize(p, {{x, 1}, {y, 1}});
  REQUIRE(opt.status == LpOptimum::Status::Optimal);
  CHECK(opt.value == rational(14, 5));

  LinearFeasibilityProblem q;
  const auto z = q.add_variable();
  q.add({{z, 1}}, Sense::GreaterEq, 1);
  CHECK(lp_maximize(q, {{z, 1}}).status == LpOptimum::Status::Unbounded);
  q.add({{z, 1}}, Sense::LessEq, rational(1, 2));
  CHECK(lp_maximize(q, {{z, 1}}).status == LpOptimum::Status::Infeasible);
}

TEST_CASE("Fig 1c single-step maximum is 55/72") {
  const auto s = fig_idtmc("fig1c.idtmc");
  // oracle value, frozen
  CHECK(single_step_max(s, 0, 1) == rational(55, 72));

  LinearFeasibilityProblem p;
  std::vector<std::size_t> v;
  for (const auto& [t, iv] : s.edges[0]) {
    v.push_back(p.add_variable());
    p.add({{v.back(), 1}}, Sense::GreaterEq, iv.lo());
    p.add({{v.back(), 1}}, Sense::LessEq, iv.hi());
  }
  p.add({{v[0], 1}, {v[1], 1}, {v[2], 1}}, Sense::Equal, 1);
  CHECK(lp_maximize(p, {{v[0], 1}}).value == rational(55, 72));
}

TEST_CASE("LP maxima over state polytopes agree with vertex enumeration") {
  Rng rng(21);
  for (int i = 0; i < 150; ++i) {
    const auto ivs = random_state_intervals(rng, 5);
    const auto s = star(ivs);
    LinearFeasibilityProblem p;
    std::vector<std::pair<std::size_t, Rational>> all;
    for (const auto& iv : ivs) {
      const auto x = p.add_variable();
      p.add({{x, 1}}, Sense::GreaterEq, iv.lo());
      p.add({{x, 1}}, Sense::LessEq, iv.hi());
      all.push_back({x, 1});
    }
    p.add(all, Sense::Equal, 1);
    const auto target = std::uniform_int_distribution<std::size_t>(0, ivs.size() - 1)(rng);
    const auto opt = lp_maximize(p, {{target, 1}});
    REQUIRE(opt.status == LpOptimum::Status::Optimal);
    CHECK(opt.value == single_step_max(s, 0, target + 1));
  }
}
