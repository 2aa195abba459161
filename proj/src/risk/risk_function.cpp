#include "attainrisk/risk/risk_function.hpp"

#include <algorithm>

#include "attainrisk/errors.hpp"
#include "attainrisk/lp/linear_program.hpp"

namespace attainrisk {
namespace {

void require_same(const SpacePtr& a, const SpacePtr& b) {
  if (!same_space(a, b)) throw SpaceMismatch();
}

// Rows "sum_j lambda_j <g_j, e> (- <g, e>) = rhs" for each basis vector e of
// span K, written over variables laid out as [g (optional, n) | lambda (k)].
struct DualLayout {
  std::size_t g_offset = 0;
  std::size_t lambda_offset = 0;
  std::size_t variables = 0;
};

void add_agreement_rows(const PolyhedralRiskFunction& phi, const DualLayout& layout,
                        bool free_g, const RandomVariable* fixed_g, lp::LinearProgram& p) {
  const auto& mu = phi.space()->weights();
  const auto n = phi.space()->size();
  for (const auto& e : phi.domain().basis()) {
    RationalVector row(layout.variables, Rational(0));
    for (std::size_t j = 0; j < phi.scenarios().size(); ++j) {
      row[layout.lambda_offset + j] = pairing(phi.scenarios()[j].density, e);
    }
    if (free_g) {
      for (std::size_t i = 0; i < n; ++i) row[layout.g_offset + i] = -(mu[i] * e[i]);
    }
    const Rational rhs = fixed_g ? pairing(*fixed_g, e) : Rational(0);
    p.add(std::move(row), lp::Relation::kEqual, rhs);
  }
  RationalVector simplex(layout.variables, Rational(0));
  for (std::size_t j = 0; j < phi.scenarios().size(); ++j) simplex[layout.lambda_offset + j] = 1;
  p.add(std::move(simplex), lp::Relation::kEqual, Rational(1));
  for (std::size_t j = 0; j < phi.scenarios().size(); ++j) {
    p.bounds[layout.lambda_offset + j] = lp::VariableBound::non_negative();
  }
}

}  // namespace

PolyhedralRiskFunction::PolyhedralRiskFunction(std::shared_ptr<const AbsolutelyConvexBody> body,
                                               std::vector<Scenario> scenarios)
    : body_(std::move(body)),
      scenarios_(std::move(scenarios)),
      domain_(body_ ? span_basis(*body_) : throw ValidationError("risk function without a body")) {
  if (scenarios_.empty()) throw ValidationError("risk function needs at least one scenario");
  for (const auto& s : scenarios_) require_same(body_->space(), s.density.space());
}

PolyhedralRiskFunction::PolyhedralRiskFunction(AbsolutelyConvexBody body,
                                               std::vector<Scenario> scenarios)
    : PolyhedralRiskFunction(std::make_shared<const AbsolutelyConvexBody>(std::move(body)),
                             std::move(scenarios)) {}

ExtendedValue evaluate(const PolyhedralRiskFunction& phi, const RandomVariable& f) {
  require_same(phi.space(), f.space());
  if (!phi.domain().contains(f)) return ExtendedValue::infinity();
  std::optional<Rational> best;
  for (const auto& s : phi.scenarios()) {
    Rational v = pairing(f, s.density) - s.penalty;
    if (!best || v > *best) best = std::move(v);
  }
  return *best;
}

ExtendedValue conjugate(const PolyhedralRiskFunction& phi, const RandomVariable& g) {
  require_same(phi.space(), g.space());
  const auto k = phi.scenarios().size();
  DualLayout layout{0, 0, k};
  lp::LinearProgram p(k);
  for (std::size_t j = 0; j < k; ++j) p.objective[j] = phi.scenarios()[j].penalty;
  add_agreement_rows(phi, layout, /*free_g=*/false, &g, p);
  const auto out = lp::solve(p);
  if (!out.optimal()) return ExtendedValue::infinity();
  return out.value;
}

ExtendedValue dual_rep_evaluate(const PolyhedralRiskFunction& phi, const RandomVariable& f,
                                std::span<const RandomVariable> dual_points) {
  require_same(phi.space(), f.space());
  if (dual_points.empty()) throw ValidationError("dual_rep_evaluate: empty set of dual points");
  if (!phi.domain().contains(f)) {
    throw PreconditionError("dual_rep_evaluate: f is outside span(K)");
  }
  std::optional<Rational> best;
  for (const auto& g : dual_points) {
    const auto penalty = conjugate(phi, g);
    if (penalty.is_infinite()) {
      throw PreconditionError("dual_rep_evaluate: a dual point has infinite conjugate");
    }
    Rational v = pairing(f, g) - penalty.value();
    if (!best || v > *best) best = std::move(v);
  }
  return *best;
}

ExtendedValue extend(const PolyhedralRiskFunction& phi, const RandomVariable& f,
                     ExtensionMode mode) {
  require_same(phi.space(), f.space());
  const auto n = phi.space()->size();
  const auto k = phi.scenarios().size();
  const auto& mu = phi.space()->weights();
  DualLayout layout{0, n, n + k};
  lp::LinearProgram p(n + k);
  // maximize <f, g> - sum lambda_j alpha_j
  for (std::size_t i = 0; i < n; ++i) p.objective[i] = -(mu[i] * f[i]);
  for (std::size_t j = 0; j < k; ++j) p.objective[n + j] = phi.scenarios()[j].penalty;
  if (mode == ExtensionMode::kMonotone) {
    for (std::size_t i = 0; i < n; ++i) p.bounds[i] = lp::VariableBound::non_negative();
  }
  add_agreement_rows(phi, layout, /*free_g=*/true, nullptr, p);
  const auto out = lp::solve(p);
  switch (out.status) {
    case lp::Status::kUnbounded:
      return ExtendedValue::infinity();
    case lp::Status::kInfeasible:
      throw PreconditionError(
          "extend: no positive dual point has a finite conjugate; the monotone extension is "
          "identically -inf");
    case lp::Status::kOptimal:
      break;
  }
  return Rational(-out.value);
}

bool monotone_certifiable(const PolyhedralRiskFunction& phi) {
  const auto n = phi.space()->size();
  const auto& mu = phi.space()->weights();
  for (const auto& s : phi.scenarios()) {
    lp::LinearProgram p(n);
    std::fill(p.bounds.begin(), p.bounds.end(), lp::VariableBound::non_negative());
    for (const auto& e : phi.domain().basis()) {
      RationalVector row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = mu[i] * e[i];
      p.add(std::move(row), lp::Relation::kEqual, pairing(s.density, e));
    }
    if (lp::solve(p).status == lp::Status::kInfeasible) return false;
  }
  return true;
}

FatouProbeResult fatou_probe(const Evaluator& evaluator, const AbsolutelyConvexBody& body,
                             std::span<const RandomVariable> sequence,
                             const RandomVariable& limit, const Rational& bound) {
  require_same(body.space(), limit.space());
  if (sequence.size() < kMinFatouPrefix) {
    throw PreconditionError("fatou_probe: prefix of length " + std::to_string(sequence.size()) +
                            " is shorter than " + std::to_string(kMinFatouPrefix));
  }
  std::vector<Rational> distance;
  for (std::size_t n = 0; n < sequence.size(); ++n) {
    const auto& fn = sequence[n];
    require_same(body.space(), fn.space());
    if (gauge(body, fn) > ExtendedValue(bound)) {
      throw KBoundednessViolation("fatou_probe: element " + std::to_string(n) +
                                  " has gauge above " + to_string(bound));
    }
    distance.push_back(ky_fan_distance(fn, limit));
    if (n > 0 && distance[n] > distance[n - 1]) {
      throw PreconditionError("fatou_probe: Ky-Fan distance to the limit increases at element " +
                              std::to_string(n));
    }
  }

  FatouProbeResult result;
  result.limit_value = evaluator(limit);
  const std::size_t tail_begin = sequence.size() / 2;
  std::vector<ExtendedValue> values;
  for (std::size_t n = tail_begin; n < sequence.size(); ++n) values.push_back(evaluator(sequence[n]));
  result.tail_minimum = *std::min_element(values.begin(), values.end());

  const auto& before = values[values.size() - 2];
  const auto& last = values.back();
  const auto& d_before = distance[distance.size() - 2];
  const auto& d_last = distance.back();
  if (before.is_finite() && last.is_finite() && d_before != d_last) {
    const Rational slope = (before.value() - last.value()) / (d_before - d_last);
    result.secant_limit = last.value() - slope * d_last;
  }

  ExtendedValue proxy = result.tail_minimum;
  if (result.secant_limit) proxy = max(proxy, ExtendedValue(*result.secant_limit));
  result.passed = result.limit_value <= proxy;
  return result;
}

}  // namespace attainrisk
