#include "attainrisk/core/probability_space.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "attainrisk/errors.hpp"

namespace attainrisk {

FiniteProbabilitySpace::FiniteProbabilitySpace(std::vector<std::string> atom_labels,
                                               RationalVector weights)
    : labels_(std::move(atom_labels)), weights_(std::move(weights)) {
  if (weights_.empty()) throw ValidationError("probability space needs at least one atom");
  if (labels_.size() != weights_.size()) {
    throw ValidationError("atom label count differs from weight count");
  }
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
    throw ValidationError("atom labels must be distinct");
  }
  Rational total = 0;
  for (const auto& w : weights_) {
    if (w <= 0) throw ValidationError("atom weight " + to_string(w) + " is not strictly positive");
    total += w;
  }
  if (total != 1) throw ValidationError("atom weights sum to " + to_string(total) + ", not 1");
}

SpacePtr FiniteProbabilitySpace::create(std::vector<std::string> atom_labels,
                                        RationalVector weights) {
  return std::make_shared<const FiniteProbabilitySpace>(std::move(atom_labels), std::move(weights));
}

SpacePtr FiniteProbabilitySpace::uniform(std::size_t atoms) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < atoms; ++i) labels.push_back("w" + std::to_string(i));
  const Rational w = atoms == 0 ? Rational(0) : Rational(1, static_cast<long>(atoms));
  return create(std::move(labels), RationalVector(atoms, w));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

namespace {

void require_same(const SpacePtr& a, const SpacePtr& b) {
  if (!same_space(a, b)) throw SpaceMismatch();
}

}  // namespace

RandomVariable::RandomVariable(SpacePtr space, RationalVector values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw ValidationError("random variable without a space");
  if (values_.size() != space_->size()) {
    throw ValidationError("random variable has " + std::to_string(values_.size()) +
                          " values on a space with " + std::to_string(space_->size()) + " atoms");
  }
}

RandomVariable RandomVariable::zero(SpacePtr space) {
  const auto n = space->size();
  return RandomVariable(std::move(space), RationalVector(n, Rational(0)));
}

RandomVariable RandomVariable::constant(SpacePtr space, const Rational& c) {
  const auto n = space->size();
  return RandomVariable(std::move(space), RationalVector(n, c));
}

RandomVariable RandomVariable::indicator(SpacePtr space, std::span<const std::size_t> atoms) {
  RationalVector v(space->size(), Rational(0));
  for (auto a : atoms) {
    if (a >= v.size()) throw ValidationError("indicator atom index out of range");
    v[a] = 1;
  }
  return RandomVariable(std::move(space), std::move(v));
}

bool RandomVariable::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& x) { return x == 0; });
}

RandomVariable RandomVariable::abs() const {
  RandomVariable r = *this;
  for (auto& x : r.values_) x = attainrisk::abs(x);
  return r;
}

RandomVariable RandomVariable::hadamard(const RandomVariable& other) const {
  require_same(space_, other.space_);
  RandomVariable r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] *= other.values_[i];
  return r;
}

RandomVariable& RandomVariable::operator+=(const RandomVariable& other) {
  require_same(space_, other.space_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

RandomVariable& RandomVariable::operator-=(const RandomVariable& other) {
  require_same(space_, other.space_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

RandomVariable& RandomVariable::operator*=(const Rational& scale) {
  for (auto& x : values_) x *= scale;
  return *this;
}

bool operator==(const RandomVariable& a, const RandomVariable& b) {
  return same_space(a.space_, b.space_) && a.values_ == b.values_;
}

bool RandomVariable::dominated_by(const RandomVariable& other) const {
  require_same(space_, other.space_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] > other.values_[i]) return false;
  }
  return true;
}

Measure::Measure(SpacePtr space, RationalVector weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (!space_) throw ValidationError("measure without a space");
  if (weights_.size() != space_->size()) throw ValidationError("measure length differs from atom count");
  for (const auto& w : weights_) {
    if (w < 0) throw ValidationError("measure has negative mass " + to_string(w));
  }
}

Measure Measure::reference(SpacePtr space) {
  auto w = space->weights();
  return Measure(std::move(space), std::move(w));
}

Rational Measure::total_mass() const {
  Rational total = 0;
  for (const auto& w : weights_) total += w;
  return total;
}

bool Measure::is_probability() const { return total_mass() == 1; }

bool Measure::is_equivalent() const {
  return std::all_of(weights_.begin(), weights_.end(), [](const Rational& w) { return w > 0; });
}

bool operator==(const Measure& a, const Measure& b) {
  return same_space(a.space_, b.space_) && a.weights_ == b.weights_;
}

Rational expectation(const RandomVariable& f, const Measure& m) {
  require_same(f.space(), m.space());
  Rational total = 0;
  for (std::size_t i = 0; i < f.size(); ++i) total += m[i] * f[i];
  return total;
}

Rational pairing(const RandomVariable& f, const RandomVariable& g) {
  require_same(f.space(), g.space());
  const auto& mu = f.space()->weights();
  Rational total = 0;
  for (std::size_t i = 0; i < f.size(); ++i) total += mu[i] * f[i] * g[i];
  return total;
}

Rational abs_pairing(const RandomVariable& f, const RandomVariable& g) {
  require_same(f.space(), g.space());
  const auto& mu = f.space()->weights();
  Rational total = 0;
  for (std::size_t i = 0; i < f.size(); ++i) total += mu[i] * abs(Rational(f[i] * g[i]));
  return total;
}

Rational ky_fan_distance(const RandomVariable& f, const RandomVariable& g) {
  require_same(f.space(), g.space());
  const auto& mu = f.space()->weights();

  // Mass carried by each distinct value of |f - g|, ascending.
  std::map<Rational, Rational> mass_at;
  for (std::size_t i = 0; i < f.size(); ++i) mass_at[abs(Rational(f[i] - g[i]))] += mu[i];
  mass_at.emplace(Rational(0), Rational(0));

  // On [s_m, s_{m+1}) the tail mu(|h| > eps) is the constant mass strictly
  // above s_m, so the smallest feasible eps there is max(s_m, tail).
  Rational tail = 1;
  for (auto it = mass_at.begin(); it != mass_at.end(); ++it) {
    tail -= it->second;
    const Rational candidate = std::max(it->first, tail);
    const auto next = std::next(it);
    if (next == mass_at.end() || candidate < next->first) return candidate;
  }
  return Rational(0);  // unreachable: the last interval is unbounded
}

Measure compactifying_measure(const RandomVariable& xi) {
  const auto& mu = xi.space()->weights();
  RationalVector density(xi.size());
  Rational normalizer = 0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi[i] <= 0) {
      throw PreconditionError("compactifying_measure: xi is not strictly positive at atom " +
                              xi.space()->labels()[i]);
    }
    density[i] = std::min(xi[i], Rational(1));
    normalizer += mu[i] * density[i];
  }
  RationalVector nu(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) nu[i] = mu[i] * density[i] / normalizer;
  return Measure(xi.space(), std::move(nu));
}

}  // namespace attainrisk
