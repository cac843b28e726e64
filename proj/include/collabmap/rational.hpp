#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace collabmap {

// Exact ratio arithmetic for indicator values and clustering quality.
// Counts fit comfortably; GDP figures are parsed as exact decimals.
using Rational = boost::rational<std::int64_t>;

// Fatal input errors: unreadable streams, malformed table rows.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Parses "123", "-4.5", "287.1" into an exact rational (e.g. 2871/10).
Rational parse_decimal(std::string_view text);

// Nearest integer, halves away from zero: 10.5 -> 11, -10.5 -> -11.
std::int64_t round_half_away(const Rational& value);

// Fixed-point rendering with round-half-away-from-zero, e.g. (88.0037.., 1) -> "88.0".
std::string format_fixed(const Rational& value, int decimals);

// snprintf-backed "%.*f"; used wherever doubles reach an output byte stream.
std::string format_double(double value, int decimals);

} // namespace collabmap
