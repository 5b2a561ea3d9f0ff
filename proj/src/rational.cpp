#include "delzant/rational.hpp"

#include "delzant/error.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

namespace delzant {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw Error(ErrorKind::InvalidInput, "empty number in '" + std::string(whole) + "'");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw Error(ErrorKind::InvalidInput, "bad number '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw Error(ErrorKind::InvalidInput, "bad number '" + std::string(whole) + "'");
  Integer value(std::string(text.substr(start)));
  return text[0] == '-' ? Integer(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)), s);
    Integer den = parse_integer(trim(s.substr(slash + 1)), s);
    if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    const Rational mantissa = parse_rational(s.substr(0, e));
    const Integer exponent = parse_integer(trim(s.substr(e + 1)), s);
    if (abs(exponent) > 400) throw Error(ErrorKind::InvalidInput, "exponent out of range in '" + std::string(s) + "'");
    Integer power = 1;
    for (int i = 0; i < abs(static_cast<int>(exponent)); ++i) power *= 10;
    return exponent < 0 ? Rational(mantissa / power) : Rational(mantissa * power);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string digits(s.substr(0, dot));
    std::string frac(s.substr(dot + 1));
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const bool negative = !digits.empty() && digits[0] == '-';
    Integer whole = parse_integer(digits, s);
    Integer part = frac.empty() ? Integer(0) : parse_integer(frac, s);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+'))
      throw Error(ErrorKind::InvalidInput, "bad number '" + std::string(s) + "'");
    Rational magnitude = Rational(abs(whole)) + Rational(part, scale);
    return negative ? Rational(-magnitude) : magnitude;
  }
  return Rational(parse_integer(s, s));
}

std::string format_rational(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

std::int64_t content(const IntVector& v) {
  std::int64_t g = 0;
  for (std::int64_t x : v) g = std::gcd(g, x);
  return g;
}

bool is_primitive(const IntVector& v) { return content(v) == 1; }

}  // namespace delzant
