#include <atomic>
#include <mutex>

#include "attainrisk/errors.hpp"
#include "attainrisk/lp/linear_program.hpp"

namespace attainrisk::lp {

LinearProgram::LinearProgram(std::size_t variables)
    : objective(variables, Rational(0)), bounds(variables, VariableBound::free()) {}

void LinearProgram::add(RationalVector coefficients, Relation relation, Rational rhs) {
  constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
}

std::string to_string(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

void check_dimensions(const LinearProgram& p) {
  const auto n = p.variable_count();
  if (p.bounds.size() != n) throw ValidationError("LP: bounds length differs from variable count");
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = p.bounds[j];
    if (b.lower && b.upper && *b.lower > *b.upper) {
      throw ValidationError("LP: variable " + std::to_string(j) + " has lower bound above upper bound");
    }
  }
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    if (p.constraints[i].coefficients.size() != n) {
      throw ValidationError("LP: constraint " + std::to_string(i) + " has " +
                            std::to_string(p.constraints[i].coefficients.size()) +
                            " coefficients, expected " + std::to_string(n));
    }
  }
}

// How an original variable is expressed through non-negative columns.
enum class VarKind { kFree, kLower, kUpper, kBoth };

struct InternalRow {
  RationalVector coeffs;  // over structural columns
  Relation relation;
  Rational rhs;
  int upper_of = -1;  // original variable whose upper bound this row encodes
};

class Tableau {
 public:
  // Standard form over non-negative columns: structural, slack, artificial.
  explicit Tableau(const LinearProgram& p) : program_(p) { build(); }

  LPOutcome run() {
    LPOutcome out;
    if (artificial_count_ > 0) {
      RationalVector phase_one(cols_, Rational(0));
      for (std::size_t j = first_artificial_; j < cols_; ++j) phase_one[j] = 1;
      iterate(phase_one);  // bounded below by zero
      Rational infeasibility = 0;
      for (std::size_t r = 0; r < rows_; ++r) infeasibility += phase_one[basis_[r]] * rhs(r);
      if (infeasibility > 0) {
        out.status = Status::kInfeasible;
        out.certificate = certificate(phase_one, /*with_objective=*/false);
        return out;
      }
      drive_out_artificials();
    }

    RationalVector cost(cols_, Rational(0));
    for (std::size_t j = 0; j < program_.variable_count(); ++j) {
      cost[col_of_[j]] = kind_[j] == VarKind::kUpper ? Rational(-program_.objective[j])
                                                     : program_.objective[j];
      if (kind_[j] == VarKind::kFree) cost[col_of_[j] + 1] = -program_.objective[j];
    }
    const auto unbounded_column = iterate(cost);
    out.point = primal_point();
    if (unbounded_column) {
      out.status = Status::kUnbounded;
      out.ray = ray(*unbounded_column);
      return out;
    }
    out.status = Status::kOptimal;
    out.value = 0;
    for (std::size_t j = 0; j < program_.variable_count(); ++j) {
      out.value += program_.objective[j] * out.point[j];
    }
    out.certificate = certificate(cost, /*with_objective=*/true);
    return out;
  }

 private:
  void build() {
    const auto n = program_.variable_count();
    kind_.resize(n);
    col_of_.resize(n);
    shift_.assign(n, Rational(0));
    std::size_t structural = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& b = program_.bounds[j];
      col_of_[j] = structural;
      if (b.lower && b.upper) {
        kind_[j] = VarKind::kBoth;
        shift_[j] = *b.lower;
        structural += 1;
      } else if (b.lower) {
        kind_[j] = VarKind::kLower;
        shift_[j] = *b.lower;
        structural += 1;
      } else if (b.upper) {
        kind_[j] = VarKind::kUpper;
        shift_[j] = *b.upper;
        structural += 1;
      } else {
        kind_[j] = VarKind::kFree;
        structural += 2;
      }
    }

    std::vector<InternalRow> internal;
    for (const auto& c : program_.constraints) {
      InternalRow row{RationalVector(structural, Rational(0)), c.relation, c.rhs};
      for (std::size_t j = 0; j < n; ++j) {
        const auto& a = c.coefficients[j];
        if (a == 0) continue;
        switch (kind_[j]) {
          case VarKind::kFree:
            row.coeffs[col_of_[j]] = a;
            row.coeffs[col_of_[j] + 1] = -a;
            break;
          case VarKind::kUpper:
            row.coeffs[col_of_[j]] = -a;
            row.rhs -= a * shift_[j];
            break;
          default:
            row.coeffs[col_of_[j]] = a;
            row.rhs -= a * shift_[j];
            break;
        }
      }
      internal.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (kind_[j] != VarKind::kBoth) continue;
      InternalRow row{RationalVector(structural, Rational(0)), Relation::kLessEqual,
                      Rational(*program_.bounds[j].upper - *program_.bounds[j].lower)};
      row.coeffs[col_of_[j]] = 1;
      row.upper_of = static_cast<int>(j);
      internal.push_back(std::move(row));
    }

    rows_ = internal.size();
    std::size_t slacks = 0;
    for (const auto& r : internal) slacks += r.relation != Relation::kEqual;

    sign_.assign(rows_, 1);
    std::vector<int> slack_sign(rows_, 0);
    std::vector<bool> needs_artificial(rows_, false);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (internal[r].relation == Relation::kLessEqual) slack_sign[r] = 1;
      if (internal[r].relation == Relation::kGreaterEqual) slack_sign[r] = -1;
      if (internal[r].rhs < 0) sign_[r] = -1;
      needs_artificial[r] = slack_sign[r] * sign_[r] != 1;
      artificial_count_ += needs_artificial[r];
    }

    first_slack_ = structural;
    first_artificial_ = structural + slacks;
    cols_ = first_artificial_ + artificial_count_;
    table_.assign(rows_, RationalVector(cols_ + 1, Rational(0)));
    basis_.assign(rows_, 0);
    initial_col_.assign(rows_, 0);
    row_meta_ = internal;

    std::size_t next_slack = first_slack_;
    std::size_t next_artificial = first_artificial_;
    for (std::size_t r = 0; r < rows_; ++r) {
      auto& t = table_[r];
      const Rational s(sign_[r]);
      for (std::size_t j = 0; j < structural; ++j) {
        if (internal[r].coeffs[j] != 0) t[j] = s * internal[r].coeffs[j];
      }
      t[cols_] = s * internal[r].rhs;
      if (slack_sign[r] != 0) {
        t[next_slack] = Rational(slack_sign[r] * sign_[r]);
        if (!needs_artificial[r]) initial_col_[r] = next_slack;
        ++next_slack;
      }
      if (needs_artificial[r]) {
        t[next_artificial] = 1;
        initial_col_[r] = next_artificial++;
      }
      basis_[r] = initial_col_[r];
    }
    is_basic_.assign(cols_, false);
    for (auto b : basis_) is_basic_[b] = true;
  }

  const Rational& rhs(std::size_t r) const { return table_[r][cols_]; }

  void pivot(std::size_t pr, std::size_t pc) {
    auto& prow = table_[pr];
    const Rational inv = 1 / prow[pc];
    for (auto& x : prow) {
      if (x != 0) x *= inv;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr || table_[r][pc] == 0) continue;
      const Rational factor = table_[r][pc];
      auto& row = table_[r];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (prow[j] != 0) row[j] -= factor * prow[j];
      }
    }
    is_basic_[basis_[pr]] = false;
    basis_[pr] = pc;
    is_basic_[pc] = true;
  }

  // Bland's rule: lowest-index improving column enters; ties in the ratio
  // test go to the lowest-index basic variable. Returns the entering column
  // of an unbounded ray, if one is found.
  std::optional<std::size_t> iterate(const RationalVector& cost) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (is_basic_[j]) continue;
        Rational reduced = cost[j];
        for (std::size_t r = 0; r < rows_; ++r) {
          if (table_[r][j] != 0) reduced -= cost[basis_[r]] * table_[r][j];
        }
        if (reduced < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return std::nullopt;

      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        const auto& a = table_[r][*entering];
        if (a <= 0) continue;
        Rational ratio = rhs(r) / a;
        if (!leaving || ratio < best || (ratio == best && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best = std::move(ratio);
        }
      }
      if (!leaving) return entering;
      pivot(*leaving, *entering);
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (!is_basic_[j] && table_[r][j] != 0) {
          pivot(r, j);
          break;
        }
      }
      // Otherwise the row is redundant; its artificial stays basic at zero.
    }
  }

  RationalVector column_values() const {
    RationalVector v(cols_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r) v[basis_[r]] = rhs(r);
    return v;
  }

  RationalVector to_original(const RationalVector& internal, bool direction) const {
    const auto n = program_.variable_count();
    RationalVector x(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& y = internal[col_of_[j]];
      switch (kind_[j]) {
        case VarKind::kFree:
          x[j] = y - internal[col_of_[j] + 1];
          break;
        case VarKind::kUpper:
          x[j] = direction ? Rational(-y) : Rational(shift_[j] - y);
          break;
        default:
          x[j] = direction ? y : Rational(shift_[j] + y);
          break;
      }
    }
    return x;
  }

  RationalVector primal_point() const { return to_original(column_values(), false); }

  RationalVector ray(std::size_t entering) const {
    RationalVector z(cols_, Rational(0));
    z[entering] = 1;
    for (std::size_t r = 0; r < rows_; ++r) z[basis_[r]] = -table_[r][entering];
    return to_original(z, true);
  }

  // y = c_B B^-1, read off the columns that formed the initial identity.
  DualCertificate certificate(const RationalVector& cost, bool with_objective) const {
    RationalVector y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < rows_; ++k) {
        const auto& entry = table_[k][initial_col_[i]];
        if (entry != 0) y[i] += cost[basis_[k]] * entry;
      }
      if (sign_[i] < 0) y[i] = -y[i];
    }

    const auto n = program_.variable_count();
    const auto m = program_.constraints.size();
    DualCertificate cert{RationalVector(m, Rational(0)), RationalVector(n, Rational(0)),
                         RationalVector(n, Rational(0))};
    for (std::size_t i = 0; i < m; ++i) cert.row[i] = y[i];
    for (std::size_t r = m; r < rows_; ++r) {
      cert.upper[static_cast<std::size_t>(row_meta_[r].upper_of)] = -y[r];
    }
    for (std::size_t j = 0; j < n; ++j) {
      Rational residual = with_objective ? program_.objective[j] : Rational(0);
      for (std::size_t i = 0; i < m; ++i) {
        const auto& a = program_.constraints[i].coefficients[j];
        if (a != 0) residual -= cert.row[i] * a;
      }
      switch (kind_[j]) {
        case VarKind::kBoth:
          cert.lower[j] = residual + cert.upper[j];
          break;
        case VarKind::kLower:
          cert.lower[j] = residual;
          break;
        case VarKind::kUpper:
          cert.upper[j] = -residual;
          break;
        case VarKind::kFree:
          break;
      }
    }
    return cert;
  }

  const LinearProgram& program_;
  std::vector<VarKind> kind_;
  std::vector<std::size_t> col_of_;
  RationalVector shift_;
  std::vector<InternalRow> row_meta_;
  std::vector<int> sign_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t first_slack_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t artificial_count_ = 0;
  std::vector<RationalVector> table_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> initial_col_;
  std::vector<bool> is_basic_;
};

std::atomic<bool> g_audit_active{false};
std::mutex g_audit_mutex;
AuditTally g_audit_tally;

void record(const LinearProgram& program, const LPOutcome& outcome) {
  const auto problem = verify(program, outcome);
  std::lock_guard lock(g_audit_mutex);
  switch (outcome.status) {
    case Status::kOptimal:
      ++g_audit_tally.optimal;
      break;
    case Status::kInfeasible:
      ++g_audit_tally.infeasible;
      break;
    case Status::kUnbounded:
      ++g_audit_tally.unbounded;
      break;
  }
  if (!problem.empty()) {
    if (g_audit_tally.failures++ == 0) g_audit_tally.first_failure = problem;
  }
}

}  // namespace

LPOutcome solve(const LinearProgram& program) {
  check_dimensions(program);
  LPOutcome outcome = Tableau(program).run();
  if (g_audit_active.load(std::memory_order_relaxed)) record(program, outcome);
  return outcome;
}

Audit::Audit() {
  std::lock_guard lock(g_audit_mutex);
  g_audit_tally = {};
  g_audit_active = true;
}

Audit::~Audit() { g_audit_active = false; }

AuditTally Audit::tally() const {
  std::lock_guard lock(g_audit_mutex);
  return g_audit_tally;
}

}  // namespace attainrisk::lp
