#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace attainrisk {

// Canonical (coprime, positive denominator) arbitrary-precision rational.
using Rational = boost::multiprecision::mpq_rational;
using RationalVector = std::vector<Rational>;

// Accepts "p", "p/q", with optional sign; q must be nonzero.
Rational parse_rational(std::string_view text);

// Always "p/q", denominators of integers included ("3/1", "0/1").
std::string to_string(const Rational& value);

Rational abs(const Rational& value);

}  // namespace attainrisk
