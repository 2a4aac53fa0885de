#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace ctxbounds {

/// Exact arbitrary-precision rational used for weights, bounds and probabilities.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Nearest double formatted with 9 significant digits, then re-read, so the
/// value prints identically everywhere.
double round_sig9(double x);

}  // namespace ctxbounds
