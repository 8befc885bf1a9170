#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fwcone {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "p/q" or a plain decimal literal such as "-1.25" exactly.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Exact binary value of a finite double.
Rational exact_rational(double value);

inline double as_double(double value) { return value; }
inline double as_double(const Rational& value) { return to_double(value); }

}  // namespace fwcone
