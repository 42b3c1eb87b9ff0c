#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace dyadnet {

// Exact arbitrary-precision rational. mpq_class keeps values canonical
// (gcd(num, den) = 1, den > 0), which is the invariant every result type
// in this library relies on.
using Rational = mpq_class;
using BigInt = mpz_class;

// Canonicalized fraction num/den. mpq_class's two-argument constructor
// does not reduce; always build fractions through this.
Rational frac(long num, long den);
Rational frac(const BigInt& num, const BigInt& den);

// 2^e for any integer e, exact.
Rational pow2(long e);

// 2^e as an integer, e >= 0.
BigInt pow2z(long e);

BigInt bigint_from_i128(__int128 v);

// Canonical serialized form used in files and CLI documents: "num/den"
// with the denominator always present ("0/1", "-3/4", "29/256", ...).
std::string to_fraction(const Rational& q);

// Inverse of to_fraction; also accepts plain integers ("3" == "3/1").
// Throws std::invalid_argument on malformed input.
Rational fraction_from(const std::string& s);

}  // namespace dyadnet
