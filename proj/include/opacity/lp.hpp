#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "opacity/rational.hpp"

namespace opacity {

enum class Sense { LessEq, GreaterEq, Equal, Less, Greater };

struct LinearConstraint {
  std::vector<std::pair<std::size_t, Rational>> terms;  // variable, coefficient
  Sense sense = Sense::LessEq;
  Rational rhs;
};

/// Linear system over variables x_0..x_{n-1}, all implicitly >= 0.
struct LinearFeasibilityProblem {
  std::size_t variables = 0;
  std::vector<LinearConstraint> constraints;

  std::size_t add_variable() { return variables++; }
  void add(std::vector<std::pair<std::size_t, Rational>> terms, Sense sense, Rational rhs) {
    constraints.push_back({std::move(terms), sense, std::move(rhs)});
  }
};

/// A satisfying assignment, or nullopt when the system is infeasible. Strict
/// inequalities are handled by maximising a common slack t <= 1 and asking
/// for t > 0. Exact; no tolerances.
std::optional<std::vector<Rational>> lp_feasible(const LinearFeasibilityProblem& problem);

struct LpOptimum {
  enum class Status { Optimal, Infeasible, Unbounded } status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// Maximises objective·x. Strict senses are treated as non-strict here.
LpOptimum lp_maximize(const LinearFeasibilityProblem& problem,
                      const std::vector<std::pair<std::size_t, Rational>>& objective);

}  // namespace opacity
