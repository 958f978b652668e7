#pragma once

// Weighted orders, initial forms, derivative ideals and E-adapted
// substitutions on top of Poly.

#include <optional>
#include <vector>

#include "ncres/center.hpp"
#include "ncres/poly.hpp"
#include "ncres/var_context.hpp"

namespace ncres {

/// min over terms of sum_i alpha_i * w_i; nullopt stands for infinity (f = 0).
std::optional<Rational> weightedOrder(const Poly& f, const std::vector<Rational>& weights);

/// Sum of the terms of f of minimal J-weighted degree (weights 1/a_i on the
/// center variables, 0 elsewhere). Throws on f = 0.
Poly initialForm(const Poly& f, const WeightedCenter& center);

/// Generators of D^order(I): every partial derivative of order <= `order`
/// of every generator, in the variables of `vars`, normalized to monic
/// leading coefficient, deduplicated, zeros dropped.
std::vector<Poly> derivativeIdeal(const std::vector<Poly>& ideal, unsigned order, VarMask vars);

/// f with x replaced by g. Parameters may not be substituted; a divisorial x
/// may only be replaced by x times a unit (AdaptednessError otherwise).
Poly substitute(const Poly& f, std::size_t var, const Poly& g, const VarContext& ctx);

/// True iff g = x * u with u(0) != 0 in the coordinate variables of ctx.
bool isUnitMultipleOf(const Poly& g, std::size_t var, const VarContext& ctx);

/// One step of a coordinate change. `replacement` writes the old variable in
/// the new coordinates (what gets substituted into polynomials); `forward`
/// writes the new coordinate in the old ones (used to carry points across).
/// `exact` is false when the replacement was inverted only up to truncation.
struct Substitution {
  std::size_t var = 0;
  Poly replacement;
  Poly forward;
  bool exact = true;
};

using CoordinateChange = std::vector<Substitution>;

Poly applyChange(const Poly& f, const CoordinateChange& change);
std::vector<Poly> applyChange(const std::vector<Poly>& ideal, const CoordinateChange& change);
/// Coordinates of a point after the change (old coordinates in, new out).
std::vector<Rational> mapPoint(const std::vector<Rational>& point, const CoordinateChange& change);

/// x_i -> x_i + p_i for every variable, so that the point p becomes the origin.
Poly translate(const Poly& f, const std::vector<Rational>& point);
std::vector<Poly> translate(const std::vector<Poly>& ideal, const std::vector<Rational>& point);

Rational evaluate(const Poly& f, const std::vector<Rational>& point);

}  // namespace ncres
