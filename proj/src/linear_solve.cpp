#include "linear_solve.hpp"

#include <stdexcept>

namespace opacity::detail {

std::vector<Rational> solve_linear(std::vector<SparseRow> rows, std::size_t n) {
  if (rows.size() != n) throw std::domain_error("system is not square");
  std::vector<bool> used(n, false);
  std::vector<std::size_t> pivot_row(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    // sparsest unused row with a non-zero entry in this column
    std::size_t best = n;
    for (std::size_t r = 0; r < n; ++r) {
      if (used[r]) continue;
      auto it = rows[r].coef.find(col);
      if (it == rows[r].coef.end() || it->second == 0) continue;
      if (best == n || rows[r].coef.size() < rows[best].coef.size()) best = r;
    }
    if (best == n) throw std::domain_error("singular system");
    used[best] = true;
    pivot_row[col] = best;
    SparseRow& p = rows[best];
    const Rational inv = 1 / p.coef.at(col);
    for (auto& [c, v] : p.coef) v *= inv;
    p.rhs *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == best) continue;
      auto it = rows[r].coef.find(col);
      if (it == rows[r].coef.end()) continue;
      const Rational f = it->second;
      rows[r].coef.erase(it);
      for (const auto& [c, v] : p.coef) {
        if (c == col) continue;
        Rational& target = rows[r].coef[c];
        target -= f * v;
        if (target == 0) rows[r].coef.erase(c);
      }
      rows[r].rhs -= f * p.rhs;
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t col = 0; col < n; ++col) x[col] = rows[pivot_row[col]].rhs;
  return x;
}

}  // namespace opacity::detail
