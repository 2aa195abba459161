#pragma once

#include <compare>
#include <optional>
#include <string>

#include "attainrisk/rational.hpp"

namespace attainrisk {

// A value in (-inf, +inf]. +inf is absorbing under max and addition.
class ExtendedValue {
 public:
  ExtendedValue() : value_(Rational(0)) {}
  ExtendedValue(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)

  static ExtendedValue infinity() {
    ExtendedValue v;
    v.value_.reset();
    return v;
  }

  bool is_finite() const { return value_.has_value(); }
  bool is_infinite() const { return !value_.has_value(); }

  // Precondition: is_finite().
  const Rational& value() const;

  friend bool operator==(const ExtendedValue& a, const ExtendedValue& b);
  friend std::strong_ordering operator<=>(const ExtendedValue& a, const ExtendedValue& b);

  friend ExtendedValue operator+(const ExtendedValue& a, const ExtendedValue& b);
  friend ExtendedValue operator-(const ExtendedValue& a, const Rational& b);

 private:
  std::optional<Rational> value_;
};

ExtendedValue max(const ExtendedValue& a, const ExtendedValue& b);

// "p/q" or "+inf".
std::string to_string(const ExtendedValue& value);

}  // namespace attainrisk
