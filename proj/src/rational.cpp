#include "fwcone/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace fwcone {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("sign without digits");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("bad integer literal: " + std::string(text));
  }
  return cpp_int(std::string(text));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    cpp_int num = parse_integer(trim(text.substr(0, slash)));
    cpp_int den = parse_integer(trim(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty())
      throw std::invalid_argument("bad decimal literal");
    cpp_int w = whole.empty() ? cpp_int(0) : parse_integer(whole);
    cpp_int f = frac.empty() ? cpp_int(0) : parse_integer(frac);
    cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(frac.size()));
    Rational value(w * scale + f, scale);
    return negative ? Rational(-value) : value;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational exact_rational(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  // cpp_rational's double constructor is exact.
  return Rational(value);
}

}  // namespace fwcone
