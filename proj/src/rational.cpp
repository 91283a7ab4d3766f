#include "lipfree/rational.hpp"

#include <cctype>

namespace lipfree {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign)
{
    if (s.empty())
        return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+'))
        i = 1;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!is_integer_literal(num, true))
        throw RationalSyntaxError("malformed rational '" + std::string(text) + "'");
    std::string num_str(num);
    if (num_str[0] == '+')
        num_str.erase(0, 1);

    mpz_class numerator(num_str, 10);
    mpz_class denominator = 1;
    if (slash != std::string_view::npos) {
        const std::string_view den = text.substr(slash + 1);
        if (!is_integer_literal(den, false))
            throw RationalSyntaxError("malformed rational '" + std::string(text) + "'");
        denominator = mpz_class(std::string(den), 10);
        if (denominator == 0)
            throw RationalSyntaxError("zero denominator in '" + std::string(text) + "'");
    }
    Rational value(numerator, denominator);
    value.canonicalize();
    return value;
}

std::string to_string(const Rational& value)
{
    return value.get_str(10);
}

std::string to_decimal(const Rational& value, int digits)
{
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    // round half away from zero
    const Rational scaled = abs(value) * scale;
    mpz_class rounded = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
    std::string digits_str = rounded.get_str(10);
    if (digits > 0) {
        if (digits_str.size() <= static_cast<std::size_t>(digits))
            digits_str.insert(0, static_cast<std::size_t>(digits) + 1 - digits_str.size(), '0');
        digits_str.insert(digits_str.size() - static_cast<std::size_t>(digits), ".");
    }
    if (value < 0 && rounded != 0)
        digits_str.insert(0, "-");
    return digits_str;
}

} // namespace lipfree
