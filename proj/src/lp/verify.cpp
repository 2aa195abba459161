#include "attainrisk/lp/linear_program.hpp"

namespace attainrisk::lp {
namespace {

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  }
  return s;
}

std::string check_feasible(const LinearProgram& p, const RationalVector& x) {
  if (x.size() != p.variable_count()) return "point has wrong length";
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& c = p.constraints[i];
    const Rational lhs = dot(c.coefficients, x);
    const bool ok = c.relation == Relation::kEqual       ? lhs == c.rhs
                    : c.relation == Relation::kLessEqual ? lhs <= c.rhs
                                                         : lhs >= c.rhs;
    if (!ok) return "point violates constraint " + std::to_string(i);
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto& b = p.bounds[j];
    if ((b.lower && x[j] < *b.lower) || (b.upper && x[j] > *b.upper)) {
      return "point violates bound on variable " + std::to_string(j);
    }
  }
  return {};
}

// Sign conditions shared by optimality and Farkas certificates; returns the
// dual objective through `dual_value` and the combination A^T row + lower - upper.
std::string check_multipliers(const LinearProgram& p, const DualCertificate& d,
                              RationalVector& combination, Rational& dual_value) {
  const auto n = p.variable_count();
  if (d.row.size() != p.constraints.size() || d.lower.size() != n || d.upper.size() != n) {
    return "certificate has wrong shape";
  }
  combination.assign(n, Rational(0));
  dual_value = 0;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& c = p.constraints[i];
    const auto& y = d.row[i];
    if ((c.relation == Relation::kLessEqual && y > 0) ||
        (c.relation == Relation::kGreaterEqual && y < 0)) {
      return "multiplier of constraint " + std::to_string(i) + " has the wrong sign";
    }
    if (y == 0) continue;
    for (std::size_t j = 0; j < n; ++j) combination[j] += y * c.coefficients[j];
    dual_value += y * c.rhs;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = p.bounds[j];
    if (d.lower[j] < 0 || d.upper[j] < 0) return "negative bound multiplier";
    if ((!b.lower && d.lower[j] != 0) || (!b.upper && d.upper[j] != 0)) {
      return "multiplier on an absent bound of variable " + std::to_string(j);
    }
    combination[j] += d.lower[j] - d.upper[j];
    if (b.lower) dual_value += d.lower[j] * *b.lower;
    if (b.upper) dual_value -= d.upper[j] * *b.upper;
  }
  return {};
}

}  // namespace

std::string verify(const LinearProgram& p, const LPOutcome& out) {
  switch (out.status) {
    case Status::kOptimal: {
      if (auto e = check_feasible(p, out.point); !e.empty()) return e;
      if (dot(p.objective, out.point) != out.value) return "reported value differs from c.x";
      RationalVector combination;
      Rational dual_value;
      if (auto e = check_multipliers(p, out.certificate, combination, dual_value); !e.empty()) {
        return e;
      }
      if (combination != p.objective) return "dual certificate does not reproduce the objective";
      if (dual_value != out.value) return "dual objective differs from primal value";
      return {};
    }
    case Status::kInfeasible: {
      RationalVector combination;
      Rational dual_value;
      if (auto e = check_multipliers(p, out.certificate, combination, dual_value); !e.empty()) {
        return e;
      }
      for (const auto& x : combination) {
        if (x != 0) return "Farkas combination is not zero";
      }
      if (dual_value <= 0) return "Farkas right-hand side is not positive";
      return {};
    }
    case Status::kUnbounded: {
      if (auto e = check_feasible(p, out.point); !e.empty()) return e;
      const auto& r = out.ray;
      if (r.size() != p.variable_count()) return "ray has wrong length";
      if (dot(p.objective, r) >= 0) return "ray does not improve the objective";
      for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const auto& c = p.constraints[i];
        const Rational lhs = dot(c.coefficients, r);
        const bool ok = c.relation == Relation::kEqual       ? lhs == 0
                        : c.relation == Relation::kLessEqual ? lhs <= 0
                                                             : lhs >= 0;
        if (!ok) return "ray leaves constraint " + std::to_string(i);
      }
      for (std::size_t j = 0; j < r.size(); ++j) {
        if ((p.bounds[j].lower && r[j] < 0) || (p.bounds[j].upper && r[j] > 0)) {
          return "ray leaves bound of variable " + std::to_string(j);
        }
      }
      return {};
    }
  }
  return "unknown status";
}

}  // namespace attainrisk::lp
