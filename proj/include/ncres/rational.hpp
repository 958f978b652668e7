#pragma once

// Exact rational and integer scalars used throughout ncres.
//
// Rational is GMP's mpq_class: every arithmetic result is canonical (lowest
// terms, positive denominator). Values built from a numerator/denominator pair
// must go through makeRational(), which canonicalizes.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncres {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational makeRational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool isInteger(const Rational& q) { return q.get_den() == 1; }

/// "p" for integers, "p/q" otherwise.
inline std::string toString(const Rational& q) { return q.get_str(); }

/// Parses "p", "-p", "p/q". Returns nullopt on malformed text or zero denominator.
std::optional<Rational> parseRational(std::string_view text);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Squarefree part of a nonzero integer, sign kept: 12 -> 3, -8 -> -2.
Integer squarefreePart(const Integer& n);

/// Prime factorization by trial division (desk-scale inputs only).
std::vector<std::pair<Integer, unsigned>> factorInteger(Integer n);

/// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<Rational> exactSqrt(const Rational& q);

}  // namespace ncres
