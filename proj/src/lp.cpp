// Dense two-phase primal simplex over exact rationals with Bland's rule.

#include "opacity/lp.hpp"

namespace opacity {

namespace {

class Simplex {
 public:
  Simplex(std::size_t rows, std::size_t cols) : a_(rows, std::vector<Rational>(cols + 1)), basis_(rows), cols_(cols) {}

  std::vector<Rational>& row(std::size_t i) { return a_[i]; }
  void set_basis(std::size_t i, std::size_t col) { basis_[i] = col; }
  std::size_t rows() const { return a_.size(); }
  std::size_t basis(std::size_t i) const { return basis_[i]; }
  const Rational& rhs(std::size_t i) const { return a_[i][cols_]; }

  // Maximises cost·x over the columns flagged in `allowed`. Returns false if
  // unbounded.
  bool maximize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    obj_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) obj_[j] = cost[j];
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational cb = cost[basis_[i]];
      if (cb != 0) axpy(obj_, -cb, a_[i]);
    }
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed[j] && sgn(obj_[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (sgn(a_[i][enter]) <= 0) continue;
        Rational ratio = a_[i][cols_] / a_[i][enter];
        if (leave == rows() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
    }
  }

  Rational value() const { return -obj_[cols_]; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = a_[r][c];
    for (auto& v : a_[r]) {
      if (v != 0) v /= p;
    }
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i != r && a_[i][c] != 0) {
        const Rational f = a_[i][c];
        axpy(a_[i], -f, a_[r]);
      }
    }
    if (!obj_.empty() && obj_[c] != 0) {
      const Rational f = obj_[c];
      axpy(obj_, -f, a_[r]);
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  static void axpy(std::vector<Rational>& y, const Rational& f, const std::vector<Rational>& x) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] != 0) y[j] += f * x[j];
    }
  }

  std::vector<std::vector<Rational>> a_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> obj_;
  std::size_t cols_;
};

Sense flipped(Sense s) {
  switch (s) {
    case Sense::LessEq: return Sense::GreaterEq;
    case Sense::GreaterEq: return Sense::LessEq;
    case Sense::Less: return Sense::Greater;
    case Sense::Greater: return Sense::Less;
    case Sense::Equal: return Sense::Equal;
  }
  return s;
}

}  // namespace

LpOptimum lp_maximize(const LinearFeasibilityProblem& problem,
                      const std::vector<std::pair<std::size_t, Rational>>& objective) {
  const std::size_t n = problem.variables;
  const std::size_t m = problem.constraints.size();

  // Dense rows with non-negative right-hand sides.
  std::vector<std::vector<Rational>> dense(m, std::vector<Rational>(n));
  std::vector<Sense> sense(m);
  std::vector<Rational> b(m);
  std::size_t slacks = 0, artificials = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    for (const auto& [var, coef] : c.terms) dense[i].at(var) += coef;
    sense[i] = c.sense;
    b[i] = c.rhs;
    if (sgn(b[i]) < 0) {
      for (auto& v : dense[i]) v = -v;
      b[i] = -b[i];
      sense[i] = flipped(sense[i]);
    }
    if (sense[i] != Sense::Equal) ++slacks;
    if (sense[i] != Sense::LessEq && sense[i] != Sense::Less) ++artificials;
  }

  const std::size_t cols = n + slacks + artificials;
  Simplex tab(m, cols);
  std::vector<bool> is_artificial(cols, false);
  std::size_t next_slack = n, next_art = n + slacks;
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = tab.row(i);
    for (std::size_t j = 0; j < n; ++j) row[j] = dense[i][j];
    row[cols] = b[i];
    const bool upper = sense[i] == Sense::LessEq || sense[i] == Sense::Less;
    if (sense[i] != Sense::Equal) row[next_slack] = upper ? 1 : -1;
    if (upper) {
      tab.set_basis(i, next_slack);
    } else {
      row[next_art] = 1;
      is_artificial[next_art] = true;
      tab.set_basis(i, next_art++);
    }
    if (sense[i] != Sense::Equal) ++next_slack;
  }

  LpOptimum out;
  std::vector<bool> allowed(cols, true);
  if (artificials > 0) {
    std::vector<Rational> phase1(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      if (is_artificial[j]) phase1[j] = -1;
    }
    tab.maximize(phase1, allowed);
    if (sgn(tab.value()) < 0) return out;  // infeasible
    // Pivot remaining (zero-valued) artificials out of the basis.
    for (std::size_t i = 0; i < tab.rows();) {
      if (!is_artificial[tab.basis(i)]) {
        ++i;
        continue;
      }
      std::size_t col = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!is_artificial[j] && tab.row(i)[j] != 0) {
          col = j;
          break;
        }
      }
      if (col == cols) {
        tab.drop_row(i);  // redundant equation
      } else {
        tab.pivot(i, col);
        ++i;
      }
    }
    for (std::size_t j = 0; j < cols; ++j) allowed[j] = !is_artificial[j];
  }

  std::vector<Rational> cost(cols);
  for (const auto& [var, coef] : objective) cost.at(var) += coef;
  if (!tab.maximize(cost, allowed)) {
    out.status = LpOptimum::Status::Unbounded;
    return out;
  }
  out.status = LpOptimum::Status::Optimal;
  out.value = tab.value();
  out.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    if (tab.basis(i) < n) out.x[tab.basis(i)] = tab.rhs(i);
  }
  return out;
}

std::optional<std::vector<Rational>> lp_feasible(const LinearFeasibilityProblem& problem) {
  bool strict = false;
  for (const auto& c : problem.constraints) {
    if (c.sense == Sense::Less || c.sense == Sense::Greater) strict = true;
  }
  if (!strict) {
    auto r = lp_maximize(problem, {});
    if (r.status != LpOptimum::Status::Optimal) return std::nullopt;
    return r.x;
  }
  LinearFeasibilityProblem relaxed = problem;
  const std::size_t t = relaxed.add_variable();
  for (auto& c : relaxed.constraints) {
    if (c.sense == Sense::Less) {
      c.terms.push_back({t, Rational(1)});
      c.sense = Sense::LessEq;
    } else if (c.sense == Sense::Greater) {
      c.terms.push_back({t, Rational(-1)});
      c.sense = Sense::GreaterEq;
    }
  }
  relaxed.add({{t, Rational(1)}}, Sense::LessEq, Rational(1));
  auto r = lp_maximize(relaxed, {{t, Rational(1)}});
  if (r.status != LpOptimum::Status::Optimal || sgn(r.value) <= 0) return std::nullopt;
  r.x.pop_back();
  return r.x;
}

}  // namespace opacity
