#include "ctxbounds/rational.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace ctxbounds {

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    negative = s[pos] == '-';
    ++pos;
  }
  if (pos == s.size()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos]))) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (s[pos] - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(s, text));
  }
  const BigInt num = parse_integer(trim(s.substr(0, slash)), text);
  const std::string_view den_text = trim(s.substr(slash + 1));
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  const BigInt den = parse_integer(den_text, text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

double round_sig9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace ctxbounds
