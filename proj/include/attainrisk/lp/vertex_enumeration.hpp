#pragma once

#include <cstddef>
#include <vector>

#include "attainrisk/execution.hpp"
#include "attainrisk/lp/linear_program.hpp"

namespace attainrisk::lp {

// Largest dimension accepted by vertex_enumeration.
inline constexpr std::size_t kMaxVertexDimension = 8;

// {x in R^d : rows hold}. Equality rows are always active at a vertex.
struct HalfspaceSystem {
  std::size_t dimension = 0;
  std::vector<Constraint> rows;
};

// Vertices of a bounded polyhedron by brute-force basis enumeration: every
// choice of d linearly independent active rows, solved exactly, kept when
// feasible. Output is deduplicated and sorted lexicographically; empty when
// the system is infeasible. Throws PreconditionError for an unbounded region
// or d above kMaxVertexDimension, ValidationError on malformed rows.
std::vector<RationalVector> vertex_enumeration(const HalfspaceSystem& system,
                                               ExecutionPolicy policy = kDefaultPolicy);

}  // namespace attainrisk::lp
