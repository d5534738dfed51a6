#include "sublevel/rational.hpp"

#include "sublevel/error.hpp"

#include <cctype>
#include <string>

namespace sublevel {

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

Rational parse_decimal(std::string_view digits) {
  Integer mantissa = 0;
  long scale = 0;
  bool seen_point = false;
  std::size_t i = 0;
  for (; i < digits.size(); ++i) {
    const char c = digits[i];
    if (c == '.') {
      if (seen_point) throw ParseError("malformed number", i);
      seen_point = true;
      continue;
    }
    if (c == 'e' || c == 'E') break;
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("malformed number", i);
    mantissa = mantissa * 10 + (c - '0');
    if (seen_point) --scale;
  }
  if (i < digits.size()) {
    ++i;
    bool negative = false;
    if (i < digits.size() && (digits[i] == '-' || digits[i] == '+')) negative = digits[i++] == '-';
    if (i == digits.size()) throw ParseError("malformed exponent", i);
    long e = 0;
    for (; i < digits.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(digits[i]))) throw ParseError("malformed exponent", i);
      e = e * 10 + (digits[i] - '0');
      if (e > 4000) throw ParseError("exponent too large", i);
    }
    scale += negative ? -e : e;
  }
  return pow(Rational(10), scale) * Rational(mantissa);
}

Rational pow(const Rational& q, long n) {
  if (n < 0) {
    if (q == 0) throw DomainError("division by zero: 0 raised to a negative power");
    return pow(Rational(1) / q, -n);
  }
  Rational result = 1;
  Rational base = q;
  unsigned long k = static_cast<unsigned long>(n);
  while (k) {
    if (k & 1UL) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

}  // namespace sublevel
