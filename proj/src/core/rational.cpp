#include "attainrisk/rational.hpp"

#include <cctype>

#include "attainrisk/errors.hpp"

namespace attainrisk {
namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

boost::multiprecision::mpz_int parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return boost::multiprecision::mpz_int(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw ValidationError("not a rational literal: \"" + std::string(text) + "\"");
  }
  if (slash == std::string_view::npos) return Rational(parse_integer(num));

  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw ValidationError("not a rational literal: \"" + std::string(text) + "\"");
  }
  const auto d = parse_integer(den);
  if (d == 0) throw ValidationError("zero denominator in \"" + std::string(text) + "\"");
  return Rational(parse_integer(num), d);
}

std::string to_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace attainrisk
