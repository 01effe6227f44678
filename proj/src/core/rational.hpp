#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace ddgeom {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parse "num" or "num/den" (base 10, optional sign) into a canonical rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

/// Format as "num/den", or "num" when the denominator is 1.
std::string rational_to_string(const Rational& q);

/// Nearest double, for report fields that carry an *_approx suffix.
double rational_to_double(const Rational& q);

std::uint64_t hash_integer(const Integer& z);
std::uint64_t hash_rational(const Rational& q);
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value);

/// x^k for integer k (k may be negative; x must be nonzero then).
Rational pow_rational(const Rational& x, long k);

/// Sign of x^p - y^q for positive rationals x, y and non-negative
/// integer exponents. Exact; no floating point is involved.
int cmp_pow(const Rational& x, unsigned long p, const Rational& y, unsigned long q);

/// Sign of x - y^e for positive rationals x, y and a non-negative
/// rational exponent e.
int cmp_rational_pow(const Rational& x, const Rational& y, const Rational& e);

/// Smallest integer n with n >= L^e, for L >= 1 and rational e >= 0.
Integer ceil_pow(const Integer& L, const Rational& e);

/// Largest integer n with n <= L^e, for L >= 1 and rational e >= 0.
Integer floor_pow(const Integer& L, const Rational& e);

/// The unique rational with smallest denominator (ties: smallest |numerator|)
/// strictly inside the open interval (lo, hi). Requires lo < hi.
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

/// floor(log2(n)) for n >= 1.
long floor_log2(const Integer& n);

}  // namespace ddgeom
