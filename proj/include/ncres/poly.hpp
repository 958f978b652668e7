#pragma once

// Sparse multivariate polynomials over Q.
//
// A Poly knows only its number of variables; names and kinds live in the
// VarContext that accompanies it. Terms are kept in a graded-lexicographic
// ordered map (variable 0 most significant), zero coefficients are never
// stored, so two equal polynomials are structurally equal.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncres/rational.hpp"
#include "ncres/var_context.hpp"

namespace ncres {

using Monomial = std::vector<std::uint32_t>;

unsigned totalDegree(const Monomial& m);
unsigned degreeIn(const Monomial& m, VarMask mask);
bool divides(const Monomial& a, const Monomial& b);

/// Ascending graded-lex order: total degree first, then lexicographic with
/// the first variable most significant.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;
  using Term = TermMap::value_type;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t var, const Rational& c = 1);
  static Poly monomial(Monomial m, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  Rational coefficient(const Monomial& m) const;
  Rational constantTerm() const;
  /// Largest term in graded-lex order. Precondition: nonzero.
  const Term& leadingTerm() const;

  /// Adds c*m into the polynomial, erasing the term if it cancels.
  void addTerm(const Monomial& m, const Rational& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other) { return *this = *this * other; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const Rational& c) const;
  Poly shifted(const Monomial& m) const;  // multiply by a monomial
  Poly pow(unsigned e) const;

  bool operator==(const Poly& other) const { return nvars_ == other.nvars_ && terms_ == other.terms_; }

  /// Maximal / minimal degree counted on the variables of `mask`.
  unsigned degree(VarMask mask) const;
  std::optional<unsigned> order(VarMask mask) const;
  Poly homogeneousPart(VarMask mask, unsigned deg) const;
  /// Drops every term of mask-degree > maxDeg.
  Poly truncated(VarMask mask, unsigned maxDeg) const;
  /// Terms that involve none of the variables in `mask`.
  Poly freeOf(VarMask mask) const;

  Poly derivative(std::size_t var) const;
  Poly evaluated(std::size_t var, const Rational& value) const;
  /// Replaces variable `var` by `g`, expanding fully.
  Poly substituted(std::size_t var, const Poly& g) const;
  /// As substituted(), discarding terms of mask-degree > maxDeg along the way.
  Poly substitutedTruncated(std::size_t var, const Poly& g, VarMask mask, unsigned maxDeg) const;
  /// Simultaneous substitution of all variables (images given per variable).
  Poly composed(const std::vector<Poly>& images) const;

  /// Same polynomial in a ring with more variables appended.
  Poly extended(std::size_t nvars) const;
  /// Divided by the coefficient of the leading term.
  Poly monic() const;
  VarMask support() const;

  /// q with q*d == *this, if it exists.
  std::optional<Poly> divideExact(const Poly& d) const;

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

Poly multiplyTruncated(const Poly& a, const Poly& b, VarMask mask, unsigned maxDeg);

/// Canonical text: terms in descending graded-lex order, explicit signs,
/// unit coefficients omitted, e.g. "-y^2*z + x^2".
std::string toString(const Poly& p, const VarContext& ctx);
std::string toString(const Monomial& m, const VarContext& ctx);

}  // namespace ncres
