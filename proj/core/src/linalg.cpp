#include "modanom/linalg.hpp"

#include "modanom/errors.hpp"

namespace modanom {

LinearSolution solve_exact(const RationalMatrix& a, std::size_t unknowns, const RationalMatrix& b) {
  if (a.size() != b.size()) throw ShapeError("solve_exact: row count mismatch");
  const std::size_t rows = a.size();
  const std::size_t rhs = rows == 0 ? 0 : b.front().size();
  RationalMatrix m(rows, std::vector<Rational>(unknowns + rhs));
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != unknowns || b[i].size() != rhs) throw ShapeError("solve_exact: ragged input");
    for (std::size_t j = 0; j < unknowns; ++j) m[i][j] = a[i][j];
    for (std::size_t j = 0; j < rhs; ++j) m[i][unknowns + j] = b[i][j];
  }

  LinearSolution out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < unknowns && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && sgn(m[p][col]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || sgn(m[i][col]) == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = col; j < unknowns + rhs; ++j) m[i][j] -= f * m[row][j];
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = row;
  for (std::size_t i = row; i < rows; ++i)
    for (std::size_t j = 0; j < rhs; ++j)
      if (sgn(m[i][unknowns + j]) != 0) out.consistent = false;

  out.x.assign(rhs, std::vector<Rational>(unknowns));
  for (std::size_t r = 0; r < out.rank; ++r)
    for (std::size_t j = 0; j < rhs; ++j) out.x[j][out.pivots[r]] = m[r][unknowns + j];
  return out;
}

}  // namespace modanom
