#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace lipfree {

/// Exact rational scalar. GMP keeps every value canonical (lowest terms,
/// positive denominator), so equality is structural.
using Rational = mpq_class;

class RationalSyntaxError : public std::runtime_error {
public:
    explicit RationalSyntaxError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p", "-p" or "p/q" with decimal integers. Whitespace is not
/// accepted; "1/0" is rejected.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Rounded decimal rendering with `digits` fractional digits. For display only.
std::string to_decimal(const Rational& value, int digits);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

} // namespace lipfree
