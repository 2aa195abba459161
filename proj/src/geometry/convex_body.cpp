#include "attainrisk/geometry/convex_body.hpp"

#include <algorithm>

#include "attainrisk/detail/first_accepted.hpp"
#include "attainrisk/errors.hpp"
#include "attainrisk/lp/linear_algebra.hpp"
#include "attainrisk/lp/linear_program.hpp"
#include "attainrisk/lp/vertex_enumeration.hpp"

namespace attainrisk {
namespace {

void require_same(const SpacePtr& a, const SpacePtr& b) {
  if (!same_space(a, b)) throw SpaceMismatch();
}

void require_pattern_cap(std::size_t atoms) {
  if (atoms > kMaxPatternAtoms) {
    throw PreconditionError("sign-pattern enumeration is capped at " +
                            std::to_string(kMaxPatternAtoms) + " atoms, got " +
                            std::to_string(atoms));
  }
}

std::vector<std::size_t> support_of(const RandomVariable& f) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] != 0) s.push_back(i);
  }
  return s;
}

// Split coefficients c = a - b, a, b >= 0: variables 0..m-1 are a, m..2m-1 are b.
lp::LinearProgram split_coefficient_program(std::size_t generators) {
  lp::LinearProgram p(2 * generators);
  std::fill(p.bounds.begin(), p.bounds.end(), lp::VariableBound::non_negative());
  return p;
}

RandomVariable combine(const AbsolutelyConvexBody& body, const RationalVector& split) {
  const auto m = body.generators().size();
  RandomVariable g = RandomVariable::zero(body.space());
  for (std::size_t j = 0; j < m; ++j) {
    const Rational c = split[j] - split[m + j];
    if (c != 0) g += c * body.generators()[j];
  }
  return g;
}

}  // namespace

std::size_t sign_pattern_count(std::size_t support_size) {
  return support_size == 0 ? 1 : std::size_t{1} << (support_size - 1);
}

RandomVariable apply_sign_pattern(const RandomVariable& magnitude,
                                  const std::vector<std::size_t>& support, std::size_t pattern) {
  RationalVector v = magnitude.values();
  for (std::size_t k = 1; k < support.size(); ++k) {
    if (pattern & (std::size_t{1} << (k - 1))) v[support[k]] = -v[support[k]];
  }
  return RandomVariable(magnitude.space(), std::move(v));
}

Subspace::Subspace(SpacePtr space, std::vector<RandomVariable> basis)
    : space_(std::move(space)), basis_(std::move(basis)) {
  lp::Matrix rows;
  for (const auto& b : basis_) {
    require_same(space_, b.space());
    rows.push_back(b.values());
  }
  if (lp::rank(rows) != basis_.size()) throw ValidationError("subspace basis is linearly dependent");
}

std::optional<RationalVector> Subspace::coordinates(const RandomVariable& x) const {
  require_same(space_, x.space());
  const auto n = space_->size();
  lp::Matrix a(n, RationalVector(basis_.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < basis_.size(); ++k) a[i][k] = basis_[k][i];
  }
  auto c = lp::solve_linear(a, x.values());
  if (!c) return std::nullopt;
  return c;
}

bool Subspace::contains(const RandomVariable& x) const { return coordinates(x).has_value(); }

AbsolutelyConvexBody::AbsolutelyConvexBody(SpacePtr space, std::vector<RandomVariable> generators)
    : space_(std::move(space)), generators_(std::move(generators)) {
  if (!space_) throw ValidationError("body without a space");
  bool any_nonzero = false;
  for (const auto& g : generators_) {
    require_same(space_, g.space());
    any_nonzero = any_nonzero || !g.is_zero();
  }
  if (!any_nonzero) throw ValidationError("body needs at least one nonzero generator");
}

AbsolutelyConvexBody AbsolutelyConvexBody::scaled(const Rational& lambda) const {
  if (lambda == 0) throw ValidationError("cannot scale a body by zero");
  std::vector<RandomVariable> g;
  for (const auto& v : generators_) g.push_back(lambda * v);
  return AbsolutelyConvexBody(space_, std::move(g));
}

std::optional<RationalVector> gauge_representation(const AbsolutelyConvexBody& body,
                                                   const RandomVariable& x) {
  require_same(body.space(), x.space());
  const auto m = body.generators().size();
  auto p = split_coefficient_program(m);
  std::fill(p.objective.begin(), p.objective.end(), Rational(1));
  for (std::size_t i = 0; i < body.atoms(); ++i) {
    RationalVector row(2 * m);
    for (std::size_t j = 0; j < m; ++j) {
      row[j] = body.generators()[j][i];
      row[m + j] = -body.generators()[j][i];
    }
    p.add(std::move(row), lp::Relation::kEqual, x[i]);
  }
  const auto out = lp::solve(p);
  if (!out.optimal()) return std::nullopt;
  RationalVector c(m);
  for (std::size_t j = 0; j < m; ++j) c[j] = out.point[j] - out.point[m + j];
  return c;
}

ExtendedValue gauge(const AbsolutelyConvexBody& body, const RandomVariable& x) {
  const auto c = gauge_representation(body, x);
  if (!c) return ExtendedValue::infinity();
  Rational total = 0;
  for (const auto& cj : *c) total += abs(cj);
  return total;
}

bool member(const AbsolutelyConvexBody& body, const RandomVariable& x) {
  return gauge(body, x) <= ExtendedValue(Rational(1));
}

Subspace span_basis(const AbsolutelyConvexBody& body) {
  lp::Matrix rows;
  for (const auto& g : body.generators()) rows.push_back(g.values());
  std::vector<RandomVariable> basis;
  for (auto k : lp::independent_subset(rows)) basis.push_back(body.generators()[k]);
  return Subspace(body.space(), std::move(basis));
}

Rational polar_gauge(const AbsolutelyConvexBody& body, const RandomVariable& g) {
  require_same(body.space(), g.space());
  Rational best = 0;
  for (const auto& v : body.generators()) best = std::max(best, abs_pairing(v, g));
  return best;
}

SolidHullResult solid_hull_member(const AbsolutelyConvexBody& body, const RandomVariable& f,
                                  ExecutionPolicy policy) {
  require_same(body.space(), f.space());
  require_pattern_cap(body.atoms());
  const auto support = support_of(f);
  if (support.empty()) return {true, RandomVariable::zero(body.space())};

  const auto m = body.generators().size();
  const RandomVariable magnitude = f.abs();
  // g = sum (a_j - b_j) v_j with sum (a + b) <= 1 and s_i g_i >= |f_i| on the
  // support. The smallest-gauge solution, rescaled onto the boundary of K, is
  // the witness.
  auto program_for = [&](std::size_t pattern) {
    auto p = split_coefficient_program(m);
    std::fill(p.objective.begin(), p.objective.end(), Rational(1));
    p.add(RationalVector(2 * m, Rational(1)), lp::Relation::kLessEqual, Rational(1));
    const auto signs = apply_sign_pattern(
        RandomVariable::constant(body.space(), Rational(1)), support, pattern);
    for (auto i : support) {
      RationalVector row(2 * m);
      for (std::size_t j = 0; j < m; ++j) {
        row[j] = signs[i] * body.generators()[j][i];
        row[m + j] = -row[j];
      }
      p.add(std::move(row), lp::Relation::kGreaterEqual, magnitude[i]);
    }
    return p;
  };

  const auto first = detail::first_accepted(sign_pattern_count(support.size()), policy,
                                    [&](std::size_t pattern) {
                                      return lp::solve(program_for(pattern)).optimal();
                                    });
  if (!first) return {false, std::nullopt};
  const auto out = lp::solve(program_for(*first));
  return {true, (1 / out.value) * combine(body, out.point)};
}

ExtendedValue bipolar_gauge(const AbsolutelyConvexBody& body, const RandomVariable& f) {
  require_same(body.space(), f.space());
  // The polar depends on |g| only, so its supremum is reached with g >= 0 and
  // every sign pattern of g linearizes to the same program.
  const auto n = body.atoms();
  const auto& mu = body.space()->weights();
  lp::LinearProgram p(n);
  std::fill(p.bounds.begin(), p.bounds.end(), lp::VariableBound::non_negative());
  for (std::size_t i = 0; i < n; ++i) p.objective[i] = -(mu[i] * abs(f[i]));
  for (const auto& v : body.generators()) {
    RationalVector row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = mu[i] * abs(v[i]);
    p.add(std::move(row), lp::Relation::kLessEqual, Rational(1));
  }
  const auto out = lp::solve(p);
  if (out.status == lp::Status::kUnbounded) return ExtendedValue::infinity();
  return Rational(-out.value);
}

bool bipolar_member(const AbsolutelyConvexBody& body, const RandomVariable& f) {
  return bipolar_gauge(body, f) <= ExtendedValue(Rational(1));
}

SolidCheckResult solid_check(const AbsolutelyConvexBody& body, ExecutionPolicy policy) {
  require_pattern_cap(body.atoms());
  struct Candidate {
    std::size_t generator;
    std::vector<std::size_t> support;
    std::size_t pattern;
  };
  std::vector<Candidate> candidates;
  for (std::size_t j = 0; j < body.generators().size(); ++j) {
    const auto support = support_of(body.generators()[j]);
    if (support.empty()) continue;
    for (std::size_t p = 0; p < sign_pattern_count(support.size()); ++p) {
      candidates.push_back({j, support, p});
    }
  }
  auto vector_of = [&](const Candidate& c) {
    return apply_sign_pattern(body.generators()[c.generator].abs(), c.support, c.pattern);
  };
  const auto first = detail::first_accepted(candidates.size(), policy, [&](std::size_t k) {
    return !member(body, vector_of(candidates[k]));
  });
  if (!first) return {true, std::nullopt};
  return {false, vector_of(candidates[*first])};
}

AbsolutelyConvexBody convex_solid_hull(const AbsolutelyConvexBody& body) {
  require_pattern_cap(body.atoms());
  std::vector<RationalVector> seen;
  std::vector<RandomVariable> generators;
  for (const auto& v : body.generators()) {
    const auto support = support_of(v);
    if (support.empty()) continue;
    for (std::size_t p = 0; p < sign_pattern_count(support.size()); ++p) {
      auto g = apply_sign_pattern(v.abs(), support, p);
      if (std::find(seen.begin(), seen.end(), g.values()) != seen.end()) continue;
      seen.push_back(g.values());
      generators.push_back(std::move(g));
    }
  }
  return AbsolutelyConvexBody(body.space(), std::move(generators));
}

bool convex_solid_hull_member(const AbsolutelyConvexBody& body, const RandomVariable& f) {
  return member(convex_solid_hull(body), f);
}

AbsolutelyConvexBody body_from_halfspaces(SpacePtr space, std::vector<lp::Constraint> rows) {
  const std::size_t n = space->size();
  const auto vertices = lp::vertex_enumeration({n, std::move(rows)});
  if (vertices.empty()) throw ValidationError("H-form body: the region is empty");
  std::vector<RandomVariable> generators;
  for (const auto& v : vertices) {
    RationalVector negated(n);
    std::transform(v.begin(), v.end(), negated.begin(), [](const Rational& x) { return -x; });
    if (!std::binary_search(vertices.begin(), vertices.end(), negated)) {
      throw ValidationError("H-form body: the region is not symmetric about 0");
    }
    const auto lead = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (lead != v.end() && *lead > 0) generators.emplace_back(space, v);
  }
  return AbsolutelyConvexBody(std::move(space), std::move(generators));
}

}  // namespace attainrisk
