#pragma once

#include <cstddef>
#include <vector>

#include "modanom/rational.hpp"

namespace modanom {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Outcome of an exact row reduction of A·X = B.
struct LinearSolution {
  RationalMatrix x;  ///< x[j] solves for column j of B; free unknowns are 0
  std::size_t rank = 0;
  bool consistent = true;
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

/// Gauss-Jordan elimination over the rationals. A has rows.size() equations
/// and `unknowns` columns; B holds one column per right-hand side
/// (B[row][rhs]). Leftmost pivots are chosen, so when the system is
/// underdetermined the later unknowns are the free ones.
LinearSolution solve_exact(const RationalMatrix& a, std::size_t unknowns, const RationalMatrix& b);

}  // namespace modanom
