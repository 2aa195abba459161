#pragma once

#include <optional>
#include <vector>

#include "attainrisk/core/probability_space.hpp"
#include "attainrisk/extended_value.hpp"
#include "attainrisk/geometry/convex_body.hpp"
#include "attainrisk/risk/risk_function.hpp"

// Slow reference computations that avoid the simplex engine. Each one
// enumerates a finite candidate set that is known to contain the answer.
namespace attainrisk::testing {

// Unique solution of the column-full-rank system A x = b, if consistent.
// A is given column by column.
std::optional<RationalVector> solve_columns(const std::vector<RationalVector>& columns,
                                            const RationalVector& b);

// The feasible set {eps : mu(|h| > eps) <= eps} is closed, so the minimum is
// either 0, a value |h_i| or a tail mass; test each candidate.
Rational brute_ky_fan(const RandomVariable& f, const RandomVariable& g);

// Minimum l1 norm over all representations x = sum c_j v_j supported on a
// linearly independent set of generators.
ExtendedValue basic_solution_gauge(const AbsolutelyConvexBody& body, const RandomVariable& x);

// Searches a grid of points f of K (coefficients in {0, ±1/2, ±1}) and
// vectors y with y_i in {0, ±1/2, ±1} * |f_i| for some y outside K.
bool grid_solid(const AbsolutelyConvexBody& body);

// min sum lambda_j alpha_j over vertices of the dual feasible set, found by
// enumerating supports of basic solutions. +inf when no vertex exists.
ExtendedValue vertex_conjugate(const PolyhedralRiskFunction& phi, const RandomVariable& g);

// Risk-neutral up probability of a one-period binomial step.
Rational binomial_up_probability(const Rational& s0, const Rational& up, const Rational& down);

}  // namespace attainrisk::testing
