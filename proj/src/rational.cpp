#include "reeb/rational.hpp"

#include <cctype>

#include "reeb/errors.hpp"

namespace reeb {
namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw Error(ErrorKind::ParseError, "empty integer in '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw Error(ErrorKind::ParseError, "unexpected character in '" + std::string(whole) + "'");
    }
    value = value * 10 + (ch - '0');
  }
  return value;
}

BigInt pow10(long exponent) {
  BigInt p = 1;
  for (long i = 0; i < exponent; ++i) p *= 10;
  return p;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    const BigInt magnitude = parse_integer(exp_part, whole);
    if (magnitude > 4096) throw Error(ErrorKind::ParseError, "exponent too large in '" + std::string(whole) + "'");
    exponent = magnitude.convert_to<long>();
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) {
    throw Error(ErrorKind::ParseError, "missing digits in '" + std::string(whole) + "'");
  }
  BigInt mantissa = int_part.empty() ? BigInt(0) : parse_integer(int_part, whole);
  if (!frac_part.empty()) {
    mantissa = mantissa * pow10(static_cast<long>(frac_part.size())) + parse_integer(frac_part, whole);
  }
  exponent -= static_cast<long>(frac_part.size());
  Rational r = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
  return negative ? Rational(-r) : r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = trim(text);
  if (whole.empty()) throw Error(ErrorKind::ParseError, "empty rational");
  if (auto slash = whole.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_decimal(trim(whole.substr(0, slash)), whole);
    const Rational den = parse_decimal(trim(whole.substr(slash + 1)), whole);
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(whole) + "'");
    return num / den;
  }
  return parse_decimal(whole, whole);
}

std::string format_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

BigInt ceil_to_int(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (q * den < num) q += 1;
  return q;
}

}  // namespace reeb
