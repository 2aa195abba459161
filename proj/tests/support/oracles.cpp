#include "oracles.hpp"

#include <algorithm>
#include <set>

namespace attainrisk::testing {

std::optional<RationalVector> solve_columns(const std::vector<RationalVector>& columns,
                                            const RationalVector& b) {
  const std::size_t rows = b.size();
  const std::size_t cols = columns.size();
  // Augmented matrix, eliminated in place.
  std::vector<RationalVector> a(rows, RationalVector(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = columns[j][i];
    a[i][cols] = b[i];
  }
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    std::size_t p = r;
    while (p < rows && a[p][j] == 0) ++p;
    if (p == rows) return std::nullopt;  // dependent columns
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][j] == 0) continue;
      const Rational factor = a[i][j] / a[r][j];
      for (std::size_t k = j; k <= cols; ++k) a[i][k] -= factor * a[r][k];
    }
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (a[i][cols] != 0) return std::nullopt;
  }
  RationalVector x(cols);
  for (std::size_t j = 0; j < cols; ++j) x[j] = a[j][cols] / a[j][j];
  return x;
}

Rational brute_ky_fan(const RandomVariable& f, const RandomVariable& g) {
  const auto h = (f - g).abs();
  const auto& mu = f.space()->weights();
  auto tail = [&](const Rational& eps) {
    Rational m = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h[i] > eps) m += mu[i];
    }
    return m;
  };
  std::set<Rational> candidates{Rational(0)};
  for (const auto& x : h.values()) {
    candidates.insert(x);
    candidates.insert(tail(x));
  }
  candidates.insert(tail(Rational(0)));
  for (const auto& eps : candidates) {
    if (tail(eps) <= eps) return eps;
  }
  return Rational(1);  // unreachable: eps = 1 is always feasible
}

ExtendedValue basic_solution_gauge(const AbsolutelyConvexBody& body, const RandomVariable& x) {
  const auto m = body.generators().size();
  std::optional<Rational> best;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<RationalVector> columns;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask & (std::size_t{1} << j)) columns.push_back(body.generators()[j].values());
    }
    const auto c = solve_columns(columns, x.values());
    if (!c) continue;
    Rational norm = 0;
    for (const auto& cj : *c) norm += abs(cj);
    if (!best || norm < *best) best = norm;
  }
  if (!best) return ExtendedValue::infinity();
  return *best;
}

bool grid_solid(const AbsolutelyConvexBody& body) {
  const auto m = body.generators().size();
  const auto n = body.atoms();
  const std::vector<Rational> steps{Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2),
                                    Rational(1)};
  std::vector<std::size_t> digits(m, 0);
  while (true) {
    Rational l1 = 0;
    auto f = RandomVariable::zero(body.space());
    for (std::size_t j = 0; j < m; ++j) {
      l1 += abs(steps[digits[j]]);
      f += steps[digits[j]] * body.generators()[j];
    }
    if (l1 <= 1) {
      std::vector<std::size_t> yd(n, 0);
      while (true) {
        RationalVector y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = steps[yd[i]] * abs(f[i]);
        if (basic_solution_gauge(body, RandomVariable(body.space(), y)) > ExtendedValue(Rational(1))) {
          return false;
        }
        std::size_t i = 0;
        while (i < n && ++yd[i] == steps.size()) yd[i++] = 0;
        if (i == n) break;
      }
    }
    std::size_t j = 0;
    while (j < m && ++digits[j] == steps.size()) digits[j++] = 0;
    if (j == m) break;
  }
  return true;
}

ExtendedValue vertex_conjugate(const PolyhedralRiskFunction& phi, const RandomVariable& g) {
  const auto& scenarios = phi.scenarios();
  const auto k = scenarios.size();
  const auto& basis = phi.domain().basis();
  RationalVector rhs;
  for (const auto& e : basis) rhs.push_back(pairing(g, e));
  rhs.push_back(1);
  std::optional<Rational> best;
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<RationalVector> columns;
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < k; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      RationalVector col;
      for (const auto& e : basis) col.push_back(pairing(scenarios[j].density, e));
      col.push_back(1);
      columns.push_back(std::move(col));
      support.push_back(j);
    }
    const auto lambda = solve_columns(columns, rhs);
    if (!lambda) continue;
    if (std::any_of(lambda->begin(), lambda->end(), [](const Rational& x) { return x < 0; })) continue;
    Rational value = 0;
    for (std::size_t s = 0; s < support.size(); ++s) value += (*lambda)[s] * scenarios[support[s]].penalty;
    if (!best || value < *best) best = value;
  }
  if (!best) return ExtendedValue::infinity();
  return *best;
}

Rational binomial_up_probability(const Rational& s0, const Rational& up, const Rational& down) {
  return (s0 - down) / (up - down);
}

}  // namespace attainrisk::testing
