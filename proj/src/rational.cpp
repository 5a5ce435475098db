#include "ghzlab/rational.hpp"

#include <stdexcept>

namespace ghzlab {

namespace {

using Integer = boost::multiprecision::mpz_int;

Integer parse_integer(std::string_view text, std::string_view whole) {
    bool negative = false;
    if (text.starts_with('-')) {
        negative = true;
        text.remove_prefix(1);
    } else if (text.starts_with('+')) {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    Integer value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
        }
        value = value * 10 + (c - '0');
    }
    return negative ? Integer(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    const Integer num = parse_integer(text.substr(0, slash), text);
    const Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) {
        throw std::invalid_argument("rational '" + std::string(text) + "' has a zero denominator");
    }
    // Division canonicalizes; the raw mpq string constructor would not.
    return Rational(num) / Rational(den);
}

std::string rational_str(const Rational& value) {
    if (denominator(value) == 1) {
        return numerator(value).str();
    }
    return numerator(value).str() + "/" + denominator(value).str();
}

} // namespace ghzlab
