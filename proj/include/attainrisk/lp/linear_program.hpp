#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "attainrisk/rational.hpp"

namespace attainrisk::lp {

enum class Relation { kEqual, kLessEqual, kGreaterEqual };

struct Constraint {
  RationalVector coefficients;
  Relation relation = Relation::kEqual;
  Rational rhs;
};

// Absent bound = unbounded on that side.
struct VariableBound {
  std::optional<Rational> lower;
  std::optional<Rational> upper;

  static VariableBound free() { return {}; }
  static VariableBound non_negative() { return {Rational(0), std::nullopt}; }
};

// minimize objective . x subject to constraints and variable bounds.
struct LinearProgram {
  RationalVector objective;
  std::vector<Constraint> constraints;
  std::vector<VariableBound> bounds;

  // n free variables with zero objective.
  explicit LinearProgram(std::size_t variables = 0);

  std::size_t variable_count() const { return objective.size(); }
  void add(RationalVector coefficients, Relation relation, Rational rhs);
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

std::string to_string(Status status);

// Multipliers for an exact dual statement about the program.
//
// Optimal: c = A^T row + lower - upper with row_i <= 0 on <= rows, >= 0 on
// >= rows, lower, upper >= 0 (nonzero only where the bound exists), and
// b . row + l . lower - u . upper equals the optimal value.
//
// Infeasible (Farkas): same sign pattern, A^T row + lower - upper = 0 and
// b . row + l . lower - u . upper > 0.
struct DualCertificate {
  RationalVector row;
  RationalVector lower;
  RationalVector upper;
};

struct LPOutcome {
  Status status = Status::kInfeasible;
  Rational value;           // Optimal only
  RationalVector point;     // Optimal: optimum. Unbounded: a feasible point.
  DualCertificate certificate;  // Optimal or Infeasible
  RationalVector ray;       // Unbounded: feasible direction with objective . ray < 0

  bool optimal() const { return status == Status::kOptimal; }
};

// Exact two-phase primal simplex with Bland's rule. Throws ValidationError
// on dimension mismatch or inverted bounds.
LPOutcome solve(const LinearProgram& program);

// Independent re-check of an outcome against the program; empty string on
// success, otherwise a description of the first violated condition.
std::string verify(const LinearProgram& program, const LPOutcome& outcome);

// Every solve() while an Audit is active is re-verified and tallied.
// Counters are process-wide and thread-safe; audits do not nest.
struct AuditTally {
  std::uint64_t optimal = 0;
  std::uint64_t infeasible = 0;
  std::uint64_t unbounded = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  std::uint64_t total() const { return optimal + infeasible + unbounded; }
};

class Audit {
 public:
  Audit();
  ~Audit();
  Audit(const Audit&) = delete;
  Audit& operator=(const Audit&) = delete;

  AuditTally tally() const;
};

}  // namespace attainrisk::lp
