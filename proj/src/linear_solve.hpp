#pragma once

#include <map>
#include <vector>

#include "opacity/rational.hpp"

namespace opacity::detail {

/// Sparse row: column -> coefficient, with the right-hand side kept apart.
struct SparseRow {
  std::map<std::size_t, Rational> coef;
  Rational rhs;
};

/// Solves a square non-singular system exactly by Gauss–Jordan elimination on
/// sparse rows. Throws std::domain_error if the system is singular.
std::vector<Rational> solve_linear(std::vector<SparseRow> rows, std::size_t n);

}  // namespace opacity::detail
