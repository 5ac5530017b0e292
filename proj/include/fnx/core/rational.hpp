#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fnx {

using Integer = mpz_class;
// Always canonical (lowest terms, positive denominator) after every
// arithmetic operation; construct from strings with parse_rational().
using Rational = mpq_class;
using RatVector = std::vector<Rational>;

// Accepts "p", "p/q", "-p/q" and finite decimals such as "0.125" or "-3.5".
// Throws ParseError on anything else or on a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
Rational abs(const Rational& q);
Rational pow(const Rational& base, long exponent);
Integer binomial(long n, long k);
Integer factorial(long n);

// Least common multiple of all denominators (1 for an empty range).
Integer common_denominator(std::span<const Rational> values);
bool is_integer(const Rational& q);
double to_double(const Rational& q);

// 2^{C(k,2)}, the combinatorial factor shared by every bound formula.
Integer two_pow_choose2(long k);

}  // namespace fnx
