#include "attainrisk/lp/linear_algebra.hpp"

namespace attainrisk::lp {

RowEchelon row_reduce(Matrix a) {
  RowEchelon out;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) {
      if (x != 0) x *= inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational factor = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (a[r][j] != 0) a[i][j] -= factor * a[r][j];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

std::size_t rank(const Matrix& a) { return row_reduce(a).rank(); }

std::vector<std::size_t> independent_subset(const Matrix& vectors) {
  std::vector<std::size_t> chosen;
  Matrix basis;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    basis.push_back(vectors[i]);
    if (rank(basis) == basis.size()) {
      chosen.push_back(i);
    } else {
      basis.pop_back();
    }
  }
  return chosen;
}

std::optional<RationalVector> solve_linear(const Matrix& a, const RationalVector& b) {
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  Matrix augmented = a;
  for (std::size_t i = 0; i < augmented.size(); ++i) augmented[i].push_back(b[i]);
  const auto echelon = row_reduce(std::move(augmented));
  RationalVector x(cols, Rational(0));
  for (std::size_t r = 0; r < echelon.rank(); ++r) {
    const auto c = echelon.pivots[r];
    if (c == cols) return std::nullopt;  // 0 = nonzero
    x[c] = echelon.reduced[r][cols];
  }
  return x;
}

Matrix null_space(const Matrix& a, std::size_t columns) {
  const auto echelon = row_reduce(a);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : echelon.pivots) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(columns, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < echelon.rank(); ++r) {
      v[echelon.pivots[r]] = -echelon.reduced[r][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace attainrisk::lp
