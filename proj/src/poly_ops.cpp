#include "ncres/poly_ops.hpp"

#include <set>

#include "ncres/errors.hpp"

namespace ncres {

std::optional<Rational> weightedOrder(const Poly& f, const std::vector<Rational>& weights) {
  std::optional<Rational> best;
  for (const auto& [m, c] : f.terms()) {
    Rational value = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0) value += weights.at(i) * m[i];
    }
    if (!best || value < *best) best = value;
  }
  return best;
}

Poly initialForm(const Poly& f, const WeightedCenter& center) {
  if (f.isZero()) throw Error("initial form of the zero polynomial");
  auto weights = center.weights(f.nvars());
  Rational low = *weightedOrder(f, weights);
  Poly out(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    Rational value = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0) value += weights[i] * m[i];
    }
    if (value == low) out.addTerm(m, c);
  }
  return out;
}

std::vector<Poly> derivativeIdeal(const std::vector<Poly>& ideal, unsigned order, VarMask vars) {
  std::vector<Poly> out;
  std::set<Poly::TermMap> seen;
  auto push = [&](const Poly& p) {
    if (p.isZero()) return;
    Poly m = p.monic();
    if (seen.insert(m.terms()).second) out.push_back(std::move(m));
  };
  std::vector<Poly> frontier;
  for (const auto& f : ideal) {
    push(f);
    if (!f.isZero()) frontier.push_back(f);
  }
  for (unsigned k = 0; k < order; ++k) {
    std::vector<Poly> next;
    std::set<Poly::TermMap> levelSeen;
    for (const auto& f : frontier) {
      for (std::size_t v = 0; v < f.nvars(); ++v) {
        if (!contains(vars, v)) continue;
        Poly d = f.derivative(v);
        if (d.isZero()) continue;
        Poly m = d.monic();
        if (levelSeen.insert(m.terms()).second) next.push_back(m);
        push(m);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

bool isUnitMultipleOf(const Poly& g, std::size_t var, const VarContext& ctx) {
  Monomial shift(g.nvars(), 0);
  shift[var] = 1;
  Poly x = Poly::monomial(shift, 1);
  auto quotient = g.divideExact(x);
  if (!quotient) return false;
  return !quotient->freeOf(ctx.coordinateMask()).isZero() &&
         quotient->order(ctx.coordinateMask()).value_or(1) == 0;
}

Poly substitute(const Poly& f, std::size_t var, const Poly& g, const VarContext& ctx) {
  if (ctx.isParameter(var)) throw AdaptednessError("parameter '" + ctx.name(var) + "' cannot be substituted");
  if (ctx.isDivisorial(var) && !isUnitMultipleOf(g, var, ctx)) {
    throw AdaptednessError("divisorial variable '" + ctx.name(var) + "' may only be rescaled by a unit");
  }
  return f.substituted(var, g);
}

Poly applyChange(const Poly& f, const CoordinateChange& change) {
  Poly out = f;
  for (const auto& s : change) out = out.substituted(s.var, s.replacement);
  return out;
}

std::vector<Poly> applyChange(const std::vector<Poly>& ideal, const CoordinateChange& change) {
  std::vector<Poly> out;
  out.reserve(ideal.size());
  for (const auto& f : ideal) out.push_back(applyChange(f, change));
  return out;
}

std::vector<Rational> mapPoint(const std::vector<Rational>& point, const CoordinateChange& change) {
  std::vector<Rational> current = point;
  for (const auto& s : change) {
    Rational image = evaluate(s.forward, current);
    current.at(s.var) = image;
  }
  return current;
}

Poly translate(const Poly& f, const std::vector<Rational>& point) {
  Poly out = f;
  for (std::size_t v = 0; v < point.size(); ++v) {
    if (point[v] == 0) continue;
    Poly shifted = Poly::variable(f.nvars(), v) + Poly::constant(f.nvars(), point[v]);
    out = out.substituted(v, shifted);
  }
  return out;
}

std::vector<Poly> translate(const std::vector<Poly>& ideal, const std::vector<Rational>& point) {
  std::vector<Poly> out;
  out.reserve(ideal.size());
  for (const auto& f : ideal) out.push_back(translate(f, point));
  return out;
}

Rational evaluate(const Poly& f, const std::vector<Rational>& point) {
  if (point.size() != f.nvars()) throw InternalError("point arity mismatch");
  Rational sum = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (unsigned k = 0; k < m[i]; ++k) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

}  // namespace ncres
