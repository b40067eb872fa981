#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace parikh {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses a non-negative decimal integer of arbitrary length.
BigInt parse_natural(std::string_view text);

/// Parses an optionally signed decimal integer.
BigInt parse_integer(std::string_view text);

/// Parses "m/d" or "m". Decimal literals are rejected, never rounded.
Rational parse_fraction(std::string_view text);

std::string to_string(const BigInt& value);

/// "n" when the denominator is one, "n/d" otherwise.
std::string to_string(const Rational& value);

Rational make_rational(const BigInt& num, const BigInt& den);

std::uint64_t to_u64(const BigInt& value);
bool fits_u64(const BigInt& value);

/// Binomial coefficient C(n, k) evaluated with min(k, n-k) factors, so that
/// C(2^64, 2^64 - 1) stays cheap. Throws SizeError when that minimum is huge.
BigInt binomial(const BigInt& n, const BigInt& k);

/// (sum parts)! / prod(parts!) as a product of binomials, largest part first.
BigInt multinomial(std::vector<BigInt> parts);

BigInt factorial(std::uint64_t n);

/// Bit i of a non-negative integer, bit 0 least significant.
bool bit(const BigInt& value, const BigInt& index);

BigInt floor(const Rational& value);

} // namespace parikh
