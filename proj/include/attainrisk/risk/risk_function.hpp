#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "attainrisk/core/probability_space.hpp"
#include "attainrisk/extended_value.hpp"
#include "attainrisk/geometry/convex_body.hpp"

namespace attainrisk {

// One affine minorant: f -> int f g dmu - penalty.
struct Scenario {
  RandomVariable density;
  Rational penalty;
};

// phi(f) = max_j (int f g_j dmu - alpha_j) on span(K), +inf elsewhere.
class PolyhedralRiskFunction {
 public:
  PolyhedralRiskFunction(std::shared_ptr<const AbsolutelyConvexBody> body,
                         std::vector<Scenario> scenarios);
  PolyhedralRiskFunction(AbsolutelyConvexBody body, std::vector<Scenario> scenarios);

  const AbsolutelyConvexBody& body() const { return *body_; }
  const std::shared_ptr<const AbsolutelyConvexBody>& body_ptr() const { return body_; }
  const std::vector<Scenario>& scenarios() const { return scenarios_; }
  const Subspace& domain() const { return domain_; }
  const SpacePtr& space() const { return body_->space(); }

 private:
  std::shared_ptr<const AbsolutelyConvexBody> body_;
  std::vector<Scenario> scenarios_;
  Subspace domain_;
};

ExtendedValue evaluate(const PolyhedralRiskFunction& phi, const RandomVariable& f);

// phi*(g) = sup_{h in span K} {int h g dmu - phi(h)}, computed as the dual
// program min sum lambda_j alpha_j over the simplex with sum lambda_j g_j
// equal to g as functionals on span K. +inf when that program is infeasible.
ExtendedValue conjugate(const PolyhedralRiskFunction& phi, const RandomVariable& g);

// max_{g in G} (int f g dmu - phi*(g)). Requires f in span K, G nonempty and
// every phi*(g) finite.
ExtendedValue dual_rep_evaluate(const PolyhedralRiskFunction& phi, const RandomVariable& f,
                                std::span<const RandomVariable> dual_points);

enum class ExtensionMode { kFull, kMonotone };

// psi(f) = sup_g {int f g dmu - phi*(g)} over all g (kFull) or g >= 0
// (kMonotone), solved jointly over (g, lambda). Agrees with phi on span K in
// full mode. Throws PreconditionError in monotone mode when no g >= 0 has a
// finite conjugate (the supremum would be over an empty set).
ExtendedValue extend(const PolyhedralRiskFunction& phi, const RandomVariable& f,
                     ExtensionMode mode);

// Every scenario agrees on span K with some g >= 0.
bool monotone_certifiable(const PolyhedralRiskFunction& phi);

using Evaluator = std::function<ExtendedValue(const RandomVariable&)>;

inline constexpr std::size_t kMinFatouPrefix = 8;

struct FatouProbeResult {
  bool passed = false;
  ExtendedValue limit_value;
  ExtendedValue tail_minimum;
  // Value at distance zero predicted by the secant through the last two
  // (Ky-Fan distance, value) points, when both are finite and the distances differ.
  std::optional<Rational> secant_limit;
};

// Finite-prefix probe of lower semicontinuity along a K-bounded sequence
// converging in probability. Passes iff evaluator(limit) <= max(tail_minimum,
// secant_limit), the tail being the second half of the prefix.
//
// Throws KBoundednessViolation if some element has gauge above `bound`, and
// PreconditionError for a prefix shorter than kMinFatouPrefix or Ky-Fan
// distances to the limit that increase somewhere.
FatouProbeResult fatou_probe(const Evaluator& evaluator, const AbsolutelyConvexBody& body,
                             std::span<const RandomVariable> sequence,
                             const RandomVariable& limit, const Rational& bound);

}  // namespace attainrisk
