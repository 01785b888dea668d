#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace mstu {

/// Exact rational number. All edge-instance arithmetic is exact so that
/// limit comparisons are never subject to rounding.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
/// or zero denominator.
Rational rational_from_string(const std::string& text);

/// Formats as "p" when the denominator is 1, otherwise "p/q".
std::string rational_to_string(const Rational& value);

/// Exact conversion; every finite double is a rational.
Rational rational_from_double(double value);

double rational_to_double(const Rational& value);

}  // namespace mstu
