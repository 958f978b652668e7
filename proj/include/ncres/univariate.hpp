#pragma once

// Dense univariate polynomials over Q and their factorization.
//
// UPoly stores coefficients lowest degree first with no trailing zeros; the
// zero polynomial is the empty vector.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncres/poly.hpp"
#include "ncres/rational.hpp"

namespace ncres {

using UPoly = std::vector<Rational>;

void trim(UPoly& p);
int degree(const UPoly& p);  // -1 for zero
UPoly uadd(const UPoly& a, const UPoly& b);
UPoly usub(const UPoly& a, const UPoly& b);
UPoly umul(const UPoly& a, const UPoly& b);
/// Quotient and remainder; b must be nonzero.
std::pair<UPoly, UPoly> udivmod(const UPoly& a, const UPoly& b);
UPoly umonic(const UPoly& p);
UPoly uderivative(const UPoly& p);
/// Monic gcd (zero if both are zero).
UPoly ugcd(UPoly a, UPoly b);
Rational ueval(const UPoly& p, const Rational& x);

/// Yun's square-free decomposition of a nonzero polynomial: monic square-free
/// pairwise coprime parts with their multiplicities (constant content dropped).
std::vector<std::pair<UPoly, unsigned>> squarefreeDecomposition(const UPoly& p);

/// Factorization of a nonzero polynomial into monic irreducibles over Q with
/// multiplicities, sorted by degree then coefficients. Candidate factors come
/// from products of numerically computed roots and are only accepted after an
/// exact division, so every reported factor divides p exactly. Throws
/// UnsupportedError above the degree bound.
std::vector<std::pair<UPoly, unsigned>> factorUnivariate(const UPoly& p, unsigned degreeBound = 8);

/// Number of distinct complex roots (degree of the square-free part).
unsigned distinctRootCount(const UPoly& p);

/// Views a Poly that only involves `var` as a UPoly; throws otherwise.
UPoly toUPoly(const Poly& p, std::size_t var);
Poly fromUPoly(const UPoly& p, std::size_t nvars, std::size_t var);

/// "x^2 - 2" with the given variable name.
std::string toString(const UPoly& p, const std::string& var = "x");

}  // namespace ncres
