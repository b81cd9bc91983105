#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace reeb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "p/q", or a finite decimal such as "1.375" or "-2.5e-3" exactly.
/// Throws Error(ParseError) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise (always in lowest terms).
std::string format_rational(const Rational& r);

bool is_integer(const Rational& r);

/// Smallest integer >= r.
BigInt ceil_to_int(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace reeb
