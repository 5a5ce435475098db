#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace ghzlab {

/// Exact arbitrary-precision rational. Always kept canonical (reduced,
/// positive denominator) by the GMP backend.
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q" or a plain integer "p". Throws std::invalid_argument on
/// malformed text or a zero denominator. The result is canonical even
/// when the input is not reduced.
Rational parse_rational(std::string_view text);

/// Canonical text form: plain integer when the denominator is 1,
/// otherwise "p/q" reduced with q > 0.
std::string rational_str(const Rational& value);

} // namespace ghzlab
