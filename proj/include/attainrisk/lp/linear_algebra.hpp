#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "attainrisk/rational.hpp"

namespace attainrisk::lp {

using Matrix = std::vector<RationalVector>;  // row-major

struct RowEchelon {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column per nonzero row
  std::size_t rank() const { return pivots.size(); }
};

RowEchelon row_reduce(Matrix a);

std::size_t rank(const Matrix& a);

// Indices of a maximal linearly independent subfamily, chosen greedily in order.
std::vector<std::size_t> independent_subset(const Matrix& vectors);

// Some x with A x = b, or nullopt when inconsistent. Free variables are zero.
std::optional<RationalVector> solve_linear(const Matrix& a, const RationalVector& b);

// Basis of {x : A x = 0}; `columns` is needed when A has no rows.
Matrix null_space(const Matrix& a, std::size_t columns);

}  // namespace attainrisk::lp
