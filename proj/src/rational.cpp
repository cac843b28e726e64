#include "collabmap/rational.hpp"

#include <cctype>
#include <cstdio>

namespace collabmap {

Rational parse_decimal(std::string_view text) {
    if (text.empty())
        throw ParseError("empty decimal literal");

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }

    std::int64_t digits = 0;
    std::int64_t scale = 1;
    bool seen_digit = false;
    bool after_point = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c == '.') {
            if (after_point)
                throw ParseError("malformed decimal literal '" + std::string(text) + "'");
            after_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("malformed decimal literal '" + std::string(text) + "'");
        digits = digits * 10 + (c - '0');
        if (after_point)
            scale *= 10;
        seen_digit = true;
    }
    if (!seen_digit)
        throw ParseError("malformed decimal literal '" + std::string(text) + "'");

    return Rational(negative ? -digits : digits, scale);
}

std::int64_t round_half_away(const Rational& value) {
    const std::int64_t n = value.numerator();
    const std::int64_t d = value.denominator(); // boost keeps denominators positive
    if (n >= 0)
        return (2 * n + d) / (2 * d);
    return -((2 * -n + d) / (2 * d));
}

std::string format_fixed(const Rational& value, int decimals) {
    std::int64_t scale = 1;
    for (int i = 0; i < decimals; ++i)
        scale *= 10;

    const std::int64_t scaled = round_half_away(value * scale);
    const std::int64_t magnitude = scaled < 0 ? -scaled : scaled;

    std::string out;
    if (scaled < 0)
        out += '-';
    out += std::to_string(magnitude / scale);
    if (decimals > 0) {
        std::string frac = std::to_string(magnitude % scale);
        out += '.';
        out += std::string(static_cast<std::size_t>(decimals) - frac.size(), '0');
        out += frac;
    }
    return out;
}

std::string format_double(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

} // namespace collabmap
