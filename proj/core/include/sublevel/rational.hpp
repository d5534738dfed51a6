#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace sublevel {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& q);

/// "3", "-3", "3/4".
std::string to_string(const Rational& q);

/// Exact value of an unsigned decimal literal such as "12", "0.25" or "1e-3".
Rational parse_decimal(std::string_view digits);

/// q^n for integer n; throws DomainError for 0^n with n < 0.
Rational pow(const Rational& q, long n);

bool is_integer(const Rational& q);

}  // namespace sublevel
