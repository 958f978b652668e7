#pragma once

#include <optional>

#include "ncres/poly.hpp"

namespace ncres {

/// theta^2 = square for the variable `var`: realizes Q(sqrt D) coefficients
/// inside a polynomial ring, theta being an extra parameter variable.
struct QuadraticRelation {
  std::size_t var = 0;
  Rational square;

  bool operator==(const QuadraticRelation&) const = default;
};

/// Reduces every power of the relation variable below 2.
Poly reduceRelation(const Poly& p, const QuadraticRelation& rel);

/// An element of R[[x]] known up to degree N in the series variables, where
/// R = Q[parameters] (optionally adjoined sqrt D). Parameters have degree 0.
/// Every stored term has series-degree <= N; results are re-truncated.
class TruncatedSeries {
 public:
  TruncatedSeries(Poly body, VarMask seriesVars, unsigned truncation,
                  std::optional<QuadraticRelation> relation = std::nullopt);

  const Poly& body() const { return body_; }
  VarMask seriesVars() const { return mask_; }
  unsigned truncation() const { return n_; }
  const std::optional<QuadraticRelation>& relation() const { return relation_; }
  std::size_t nvars() const { return body_.nvars(); }
  bool isZero() const { return body_.isZero(); }

  /// Same ring, different body (truncated and reduced).
  TruncatedSeries with(Poly body) const;

  TruncatedSeries operator+(const TruncatedSeries& other) const;
  TruncatedSeries operator-(const TruncatedSeries& other) const;
  TruncatedSeries operator*(const TruncatedSeries& other) const;
  TruncatedSeries pow(unsigned e) const;
  TruncatedSeries scaled(const Rational& c) const;

  /// Series order (minimal degree of a term); nullopt for zero.
  std::optional<unsigned> order() const { return body_.order(mask_); }
  Poly homogeneousPart(unsigned deg) const { return body_.homogeneousPart(mask_, deg); }

  /// Replaces x_var by g (g must have positive order in the series variables
  /// unless var is not a series variable).
  TruncatedSeries substituted(std::size_t var, const TruncatedSeries& g) const;

  bool operator==(const TruncatedSeries& other) const;

 private:
  void checkCompatible(const TruncatedSeries& other) const;

  Poly body_;
  VarMask mask_;
  unsigned n_;
  std::optional<QuadraticRelation> relation_;
};

}  // namespace ncres
