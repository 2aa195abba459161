#include "attainrisk/extended_value.hpp"

#include "attainrisk/errors.hpp"

namespace attainrisk {

const Rational& ExtendedValue::value() const {
  if (!value_) throw PreconditionError("value() of +inf");
  return *value_;
}

bool operator==(const ExtendedValue& a, const ExtendedValue& b) { return a.value_ == b.value_; }

std::strong_ordering operator<=>(const ExtendedValue& a, const ExtendedValue& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() <=> b.is_infinite();
  }
  if (*a.value_ < *b.value_) return std::strong_ordering::less;
  if (*b.value_ < *a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtendedValue operator+(const ExtendedValue& a, const ExtendedValue& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtendedValue::infinity();
  return ExtendedValue(Rational(*a.value_ + *b.value_));
}

ExtendedValue operator-(const ExtendedValue& a, const Rational& b) {
  if (a.is_infinite()) return a;
  return ExtendedValue(Rational(*a.value_ - b));
}

ExtendedValue max(const ExtendedValue& a, const ExtendedValue& b) { return a < b ? b : a; }

std::string to_string(const ExtendedValue& value) {
  return value.is_finite() ? to_string(value.value()) : std::string("+inf");
}

}  // namespace attainrisk
