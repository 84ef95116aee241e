#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace shadowing {

using Integer = mpz_class;
using Rational = mpq_class;

/// num/den in lowest terms. Plain mpq_class(num, den) skips this and then
/// compares unequal to the same value.
Rational ratio(const Integer& num, const Integer& den);

/// 2^exponent as an exact rational; negative exponents give dyadic fractions.
Rational pow2(std::int64_t exponent);

/// Accepts "p/q", "p", "2^-6" and plain decimals such as "0.015625".
Rational parse_rational(std::string_view text);

/// Always renders as "p/q" (q = 1 included) so that output is uniform.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Smallest e with 2^-e <= value, for value in (0, 1]; used by the shift
/// constants where everything is dyadic.
std::int64_t dyadic_floor_exponent(const Rational& value);

/// Largest power of two that is <= value (value > 0).
Rational largest_power_of_two_at_most(const Rational& value);

}  // namespace shadowing
