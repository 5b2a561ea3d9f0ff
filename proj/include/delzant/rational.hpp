#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace delzant {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<std::int64_t>;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", "p" or a plain integer literal. Decimal strings such as
/// "0.25" are accepted and converted exactly.
Rational parse_rational(std::string_view text);

std::string format_rational(const Rational& value);

double to_double(const Rational& value);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// gcd of the absolute values of the entries; 0 for the zero vector.
std::int64_t content(const IntVector& v);

bool is_primitive(const IntVector& v);

}  // namespace delzant
