#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "attainrisk/core/probability_space.hpp"
#include "attainrisk/execution.hpp"
#include "attainrisk/extended_value.hpp"
#include "attainrisk/lp/linear_program.hpp"

namespace attainrisk {

// Sign-pattern scans enumerate 2^(n-1) patterns; inputs above this many atoms
// are rejected.
inline constexpr std::size_t kMaxPatternAtoms = 12;

// A linear subspace of L0 given by an exactly independent basis.
class Subspace {
 public:
  Subspace(SpacePtr space, std::vector<RandomVariable> basis);

  const SpacePtr& space() const { return space_; }
  const std::vector<RandomVariable>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }

  bool contains(const RandomVariable& x) const;
  // Coefficients of x in the basis, or nullopt when x is outside.
  std::optional<RationalVector> coordinates(const RandomVariable& x) const;

 private:
  SpacePtr space_;
  std::vector<RandomVariable> basis_;
};

// K = {sum_j c_j v_j : sum_j |c_j| <= 1}, the absolutely convex hull of the
// generators. Closed, bounded and absolutely convex by construction.
class AbsolutelyConvexBody {
 public:
  AbsolutelyConvexBody(SpacePtr space, std::vector<RandomVariable> generators);

  const SpacePtr& space() const { return space_; }
  const std::vector<RandomVariable>& generators() const { return generators_; }
  std::size_t atoms() const { return space_->size(); }

  // The body with every generator scaled by lambda (lambda != 0).
  AbsolutelyConvexBody scaled(const Rational& lambda) const;

 private:
  SpacePtr space_;
  std::vector<RandomVariable> generators_;
};

// K from H-form: the polytope {x : rows hold} over the atoms of `space`,
// converted by vertex enumeration and kept as one generator per pair +-v.
// ValidationError unless the region is nonempty and symmetric about 0;
// PreconditionError when it is unbounded or has more atoms than
// lp::kMaxVertexDimension.
AbsolutelyConvexBody body_from_halfspaces(SpacePtr space, std::vector<lp::Constraint> rows);

// Minkowski functional p_K(x) = inf{t > 0 : x in tK}; +inf off span(K).
ExtendedValue gauge(const AbsolutelyConvexBody& body, const RandomVariable& x);

// Coefficients c attaining the gauge (sum |c_j| = p_K(x)), when finite.
std::optional<RationalVector> gauge_representation(const AbsolutelyConvexBody& body,
                                                   const RandomVariable& x);

bool member(const AbsolutelyConvexBody& body, const RandomVariable& x);

Subspace span_basis(const AbsolutelyConvexBody& body);

// sup_{f in K} int |f g| dmu, attained at a generator.
Rational polar_gauge(const AbsolutelyConvexBody& body, const RandomVariable& g);

struct SolidHullResult {
  bool member = false;
  std::optional<RandomVariable> witness;  // g in K with |f| <= |g|
};

// f in sol(K) = {f : exists g in K, |f| <= |g|}, decided by one feasibility LP
// per sign pattern on the support of f. The witness comes from the first
// feasible pattern in enumeration order under either policy.
SolidHullResult solid_hull_member(const AbsolutelyConvexBody& body, const RandomVariable& f,
                                  ExecutionPolicy policy = kDefaultPolicy);

// sup_{g in polar(K)} int |f g| dmu, +inf when unbounded.
ExtendedValue bipolar_gauge(const AbsolutelyConvexBody& body, const RandomVariable& f);

// f in the bipolar of K: bipolar_gauge(K, f) <= 1.
bool bipolar_member(const AbsolutelyConvexBody& body, const RandomVariable& f);

struct SolidCheckResult {
  bool solid = false;
  std::optional<RandomVariable> counterexample;  // f with |f| <= |v_j|, f not in K
};

// K is solid iff s (.) |v_j| is in K for every generator and sign pattern.
SolidCheckResult solid_check(const AbsolutelyConvexBody& body,
                             ExecutionPolicy policy = kDefaultPolicy);

// The smallest convex solid body containing K: absconv of all s (.) |v_j|.
AbsolutelyConvexBody convex_solid_hull(const AbsolutelyConvexBody& body);

bool convex_solid_hull_member(const AbsolutelyConvexBody& body, const RandomVariable& f);

// Sign patterns over `support` with the first entry fixed to +1, in order.
// Pattern p assigns -1 to support[k + 1] iff bit k of p is set.
std::size_t sign_pattern_count(std::size_t support_size);
RandomVariable apply_sign_pattern(const RandomVariable& magnitude,
                                  const std::vector<std::size_t>& support, std::size_t pattern);

}  // namespace attainrisk
