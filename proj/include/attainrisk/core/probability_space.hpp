#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "attainrisk/rational.hpp"

namespace attainrisk {

// Finitely many atoms, each with strictly positive mass; masses sum to one.
class FiniteProbabilitySpace {
 public:
  FiniteProbabilitySpace(std::vector<std::string> atom_labels, RationalVector weights);

  static std::shared_ptr<const FiniteProbabilitySpace> create(std::vector<std::string> atom_labels,
                                                              RationalVector weights);
  // Atoms labelled "w0", "w1", ... with mass 1/n each.
  static std::shared_ptr<const FiniteProbabilitySpace> uniform(std::size_t atoms);

  std::size_t size() const { return weights_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const RationalVector& weights() const { return weights_; }
  const Rational& weight(std::size_t atom) const { return weights_[atom]; }

  friend bool operator==(const FiniteProbabilitySpace&, const FiniteProbabilitySpace&) = default;

 private:
  std::vector<std::string> labels_;
  RationalVector weights_;
};

using SpacePtr = std::shared_ptr<const FiniteProbabilitySpace>;

bool same_space(const SpacePtr& a, const SpacePtr& b);

// An element of L0 on a finite space: one exact value per atom.
class RandomVariable {
 public:
  RandomVariable(SpacePtr space, RationalVector values);

  static RandomVariable zero(SpacePtr space);
  static RandomVariable constant(SpacePtr space, const Rational& c);
  static RandomVariable indicator(SpacePtr space, std::span<const std::size_t> atoms);

  const SpacePtr& space() const { return space_; }
  std::size_t size() const { return values_.size(); }
  const RationalVector& values() const { return values_; }
  const Rational& operator[](std::size_t atom) const { return values_[atom]; }

  bool is_zero() const;

  RandomVariable abs() const;
  // Coordinatewise product, e.g. a sign pattern applied to |v|.
  RandomVariable hadamard(const RandomVariable& other) const;

  RandomVariable& operator+=(const RandomVariable& other);
  RandomVariable& operator-=(const RandomVariable& other);
  RandomVariable& operator*=(const Rational& scale);

  friend RandomVariable operator+(RandomVariable a, const RandomVariable& b) { return a += b; }
  friend RandomVariable operator-(RandomVariable a, const RandomVariable& b) { return a -= b; }
  friend RandomVariable operator*(const Rational& s, RandomVariable a) { return a *= s; }
  friend RandomVariable operator-(RandomVariable a) { return a *= Rational(-1); }

  // Values equal and spaces equal.
  friend bool operator==(const RandomVariable& a, const RandomVariable& b);
  // Coordinatewise order; throws SpaceMismatch across spaces.
  bool dominated_by(const RandomVariable& other) const;

 private:
  SpacePtr space_;
  RationalVector values_;
};

// Non-negative masses on the atoms of a space.
class Measure {
 public:
  Measure(SpacePtr space, RationalVector weights);

  // The reference measure mu of the space.
  static Measure reference(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const RationalVector& weights() const { return weights_; }
  const Rational& operator[](std::size_t atom) const { return weights_[atom]; }

  Rational total_mass() const;
  bool is_probability() const;
  // Equivalent to mu: no atom is null.
  bool is_equivalent() const;

  friend bool operator==(const Measure& a, const Measure& b);

 private:
  SpacePtr space_;
  RationalVector weights_;
};

// Sum_i m_i f_i.
Rational expectation(const RandomVariable& f, const Measure& m);

// Sum_i mu_i f_i g_i.
Rational pairing(const RandomVariable& f, const RandomVariable& g);

// Sum_i mu_i |f_i g_i|.
Rational abs_pairing(const RandomVariable& f, const RandomVariable& g);

// inf{eps >= 0 : mu(|f - g| > eps) <= eps}. The infimum is attained on a
// finite space and computed exactly from the sorted distinct values of |f - g|.
Rational ky_fan_distance(const RandomVariable& f, const RandomVariable& g);

// Probability nu ~ mu with dnu/dmu = min(xi, 1) / C, C = E_mu[min(xi, 1)].
// Throws PreconditionError unless xi > 0 on every atom.
Measure compactifying_measure(const RandomVariable& xi);

}  // namespace attainrisk
