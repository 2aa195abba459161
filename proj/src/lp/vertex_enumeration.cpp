#include "attainrisk/lp/vertex_enumeration.hpp"

#include <algorithm>
#include <cstdint>

#include "attainrisk/errors.hpp"
#include "attainrisk/lp/linear_algebra.hpp"

namespace attainrisk::lp {
namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

// The index-th k-subset of {0..n-1} in lexicographic order.
std::vector<std::size_t> unrank_combination(std::uint64_t index, std::size_t n, std::size_t k) {
  std::vector<std::size_t> out;
  out.reserve(k);
  std::size_t c = 0;
  for (std::size_t p = 0; p < k; ++p) {
    for (;; ++c) {
      const auto count = binomial(n - c - 1, k - p - 1);
      if (index < count) break;
      index -= count;
    }
    out.push_back(c++);
  }
  return out;
}

bool satisfies(const Constraint& row, const RationalVector& x) {
  Rational lhs = 0;
  for (std::size_t j = 0; j < x.size(); ++j) lhs += row.coefficients[j] * x[j];
  switch (row.relation) {
    case Relation::kEqual:
      return lhs == row.rhs;
    case Relation::kLessEqual:
      return lhs <= row.rhs;
    case Relation::kGreaterEqual:
      return lhs >= row.rhs;
  }
  return false;
}

void require_bounded(const HalfspaceSystem& system, bool& empty) {
  LinearProgram probe(system.dimension);
  probe.constraints = system.rows;
  empty = false;
  for (std::size_t k = 0; k < system.dimension; ++k) {
    for (int sense : {1, -1}) {
      std::fill(probe.objective.begin(), probe.objective.end(), Rational(0));
      probe.objective[k] = sense;
      const auto out = solve(probe);
      if (out.status == Status::kInfeasible) {
        empty = true;
        return;
      }
      if (out.status == Status::kUnbounded) {
        throw PreconditionError("vertex_enumeration: region is unbounded along coordinate " +
                                std::to_string(k));
      }
    }
  }
  if (system.dimension == 0) {
    empty = std::any_of(system.rows.begin(), system.rows.end(),
                        [](const Constraint& c) { return !satisfies(c, {}); });
  }
}

}  // namespace

std::vector<RationalVector> vertex_enumeration(const HalfspaceSystem& system,
                                               ExecutionPolicy policy) {
  const std::size_t d = system.dimension;
  for (const auto& row : system.rows) {
    if (row.coefficients.size() != d) {
      throw ValidationError("vertex_enumeration: row length differs from dimension");
    }
  }
  if (d > kMaxVertexDimension) {
    throw PreconditionError("vertex_enumeration: dimension " + std::to_string(d) +
                            " exceeds the cap of " + std::to_string(kMaxVertexDimension));
  }
  bool empty = false;
  require_bounded(system, empty);
  if (empty) return {};

  Matrix equalities;
  RationalVector equality_rhs;
  std::vector<std::size_t> inequalities;
  for (std::size_t i = 0; i < system.rows.size(); ++i) {
    if (system.rows[i].relation == Relation::kEqual) {
      equalities.push_back(system.rows[i].coefficients);
      equality_rhs.push_back(system.rows[i].rhs);
    } else {
      inequalities.push_back(i);
    }
  }
  const std::size_t equality_rank = rank(equalities);
  const std::size_t pick = d - equality_rank;
  const std::uint64_t total = binomial(inequalities.size(), pick);

  auto candidate = [&](std::uint64_t index) -> std::optional<RationalVector> {
    Matrix a = equalities;
    RationalVector b = equality_rhs;
    for (auto k : unrank_combination(index, inequalities.size(), pick)) {
      a.push_back(system.rows[inequalities[k]].coefficients);
      b.push_back(system.rows[inequalities[k]].rhs);
    }
    if (rank(a) != d) return std::nullopt;
    auto x = solve_linear(a, b);
    if (!x) return std::nullopt;
    for (const auto& row : system.rows) {
      if (!satisfies(row, *x)) return std::nullopt;
    }
    return x;
  };

  std::vector<RationalVector> vertices;
  if (policy == ExecutionPolicy::kSerial) {
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      if (auto x = candidate(idx)) vertices.push_back(std::move(*x));
    }
  } else {
    const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel
    {
      std::vector<RationalVector> local;
#pragma omp for schedule(dynamic, 16) nowait
      for (std::int64_t idx = 0; idx < count; ++idx) {
        if (auto x = candidate(static_cast<std::uint64_t>(idx))) local.push_back(std::move(*x));
      }
#pragma omp critical(attainrisk_vertex_merge)
      for (auto& v : local) vertices.push_back(std::move(v));
    }
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

}  // namespace attainrisk::lp
