#include "ncres/invariant.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "ncres/errors.hpp"

namespace ncres {

std::strong_ordering compareInv(const InvariantVector& a, const InvariantVector& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].value != y[i].value) return x[i].value < y[i].value ? std::strong_ordering::less : std::strong_ordering::greater;
    if (x[i].plus != y[i].plus) return x[i].plus ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (x.size() == y.size()) return a.infinite() <=> b.infinite();
  // One is a proper prefix of the other: the terminal marker beats any entry,
  // an exhausted vector loses to any continuation.
  if (x.size() < y.size()) return a.infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  return b.infinite() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string toString(const InvariantVector& inv) {
  if (inv.entries().empty() && inv.infinite()) return "(inf)";
  std::string out = "(";
  for (std::size_t i = 0; i < inv.entries().size(); ++i) {
    if (i > 0) out += ",";
    out += toString(inv.entries()[i].value);
    if (inv.entries()[i].plus) out += "+";
  }
  return out + ")";
}

InvariantVector normalizeInvariant(const InvariantVector& inv) {
  std::size_t skip = 0;
  while (skip < inv.entries().size() && inv.entries()[skip].value == 1 && !inv.entries()[skip].plus) ++skip;
  std::vector<InvEntry> rest(inv.entries().begin() + static_cast<std::ptrdiff_t>(skip), inv.entries().end());
  return InvariantVector(std::move(rest), inv.infinite());
}

ReesAlgebra ReesAlgebra::fromIdeal(const std::vector<Poly>& ideal) {
  ReesAlgebra r;
  for (const auto& f : ideal) {
    if (!f.isZero()) r.generators.push_back({f, 1});
  }
  return r;
}

bool admissible(const std::vector<Poly>& ideal, const WeightedCenter& center) {
  for (const auto& f : ideal) {
    auto w = weightedOrder(f, center.weights(f.nvars()));
    if (w && *w < 1) return false;
  }
  return true;
}

std::optional<unsigned> ordAtOrigin(const std::vector<Poly>& ideal, const VarContext& ctx) {
  std::optional<unsigned> best;
  for (const auto& f : ideal) {
    auto o = f.order(ctx.coordinateMask());
    if (o && (!best || *o < *best)) best = o;
  }
  return best;
}

std::optional<Rational> ordAtOrigin(const ReesAlgebra& algebra, VarMask active) {
  std::optional<Rational> best;
  for (const auto& g : algebra.generators) {
    auto o = g.f.order(active);
    if (!o) continue;
    Rational ratio = Rational(*o) / g.weight;
    if (!best || ratio < *best) best = ratio;
  }
  return best;
}

namespace {

// How a contact element g' (restricted to the complement of the block found so
// far) becomes a coordinate. Lower kinds are preferred.
enum class ContactKind {
  FreeCoordinate,   // g' = v * unit, v free: no change needed
  FreeExact,        // g' = c v + rest, rest free of v: exact linear substitution
  FreeTruncated,    // as above, rest involves v: inverted up to truncation
  DivisorialCoordinate,
  Unsupported,
};

struct Candidate {
  ContactKind kind = ContactKind::Unsupported;
  std::size_t var = 0;
  Poly element;  // g'
};

// At order one a divisorial variable in the linear part may join the block
// as is (weight 1+), even when g is not a unit multiple of it: every term of
// g divisible by it already has weight >= 1.
Candidate classify(const Poly& g, VarMask rest, const VarContext& ctx, bool orderOne) {
  Poly linear = g.homogeneousPart(rest, 1);
  Candidate best{ContactKind::Unsupported, 0, g};
  auto consider = [&](Candidate c) {
    if (c.kind < best.kind || (c.kind == best.kind && c.var < best.var && c.kind != ContactKind::Unsupported)) best = c;
  };
  for (std::size_t v = 0; v < g.nvars(); ++v) {
    if (!contains(rest, v)) continue;
    Monomial mv(g.nvars(), 0);
    mv[v] = 1;
    // Coefficient of v in the linear part, as a polynomial in the parameters.
    Poly coeff(g.nvars());
    for (const auto& [m, c] : linear.terms()) {
      if (m[v] == 1) {
        Monomial q = m;
        q[v] = 0;
        coeff.addTerm(q, c);
      }
    }
    if (coeff.isZero()) continue;
    bool unitMultiple = isUnitMultipleOf(g, v, ctx);
    if (ctx.isDivisorial(v)) {
      if (unitMultiple || orderOne) consider({ContactKind::DivisorialCoordinate, v, g});
      continue;
    }
    if (unitMultiple) {
      consider({ContactKind::FreeCoordinate, v, g});
      continue;
    }
    if (!coeff.isConstant()) continue;
    Poly remainder = g - Poly::variable(g.nvars(), v, coeff.constantTerm());
    bool vFree = remainder.freeOf(bit(v)) == remainder;
    consider({vFree ? ContactKind::FreeExact : ContactKind::FreeTruncated, v, g});
  }
  return best;
}

// Builds the substitution making g' = c v + rest the new coordinate v.
Substitution contactSubstitution(const Candidate& cand, VarMask coords, unsigned truncation) {
  const std::size_t n = cand.element.nvars();
  const std::size_t v = cand.var;
  Rational c = cand.element.homogeneousPart(coords, 1).coefficient([&] {
    Monomial m(n, 0);
    m[v] = 1;
    return m;
  }());
  Poly rest = (cand.element - Poly::variable(n, v, c)).scaled(1 / c);
  Poly x = Poly::variable(n, v);
  Substitution s;
  s.var = v;
  s.forward = x + rest;
  if (cand.kind == ContactKind::FreeExact) {
    s.replacement = x - rest;
    s.exact = true;
    return s;
  }
  // old v = new v - rest(old v): fixed point, each pass gains one degree.
  Poly psi = x;
  // pass k is correct through degree k + 1, so it needs no more precision
  for (unsigned k = 0; k <= truncation; ++k) {
    psi = x - rest.substitutedTruncated(v, psi, coords, std::min(truncation, k + 2));
  }
  s.replacement = psi;
  s.exact = false;
  return s;
}

Poly applySubstitution(const Poly& f, const Substitution& s, VarMask coords, unsigned truncation) {
  if (s.exact) return f.substituted(s.var, s.replacement);
  return f.substitutedTruncated(s.var, s.replacement, coords, truncation);
}

std::vector<Poly> contactElements(const ReesAlgebra& algebra, VarMask active, const Rational& order) {
  std::vector<Poly> out;
  std::set<Poly::TermMap> seen;
  for (const auto& g : algebra.generators) {
    auto o = g.f.order(active);
    if (!o || Rational(*o) / g.weight != order) continue;
    for (auto& d : derivativeIdeal({g.f}, *o - 1, active)) {
      if (d.order(active) == 1u && seen.insert(d.terms()).second) out.push_back(std::move(d));
    }
  }
  return out;
}

struct Stage {
  std::vector<std::size_t> block;
  CoordinateChange change;
  bool exact = true;
};

// Mutates `algebra` into the coordinates where the block variables are the
// chosen maximal-contact elements.
Stage contactStage(ReesAlgebra& algebra, VarMask active, const Rational& order, const VarContext& ctx,
                   unsigned truncation) {
  Stage stage;
  VarMask blockMask = 0;
  const VarMask coords = ctx.coordinateMask();
  const int limit = std::popcount(active);
  for (int iter = 0; iter < limit; ++iter) {
    VarMask rest = active & ~blockMask;
    Candidate best;
    bool any = false;
    for (const auto& g : contactElements(algebra, active, order)) {
      Poly restricted = g.freeOf(blockMask);
      if (restricted.order(rest) != 1u) continue;
      any = true;
      Candidate c = classify(restricted, rest, ctx, order == 1);
      if (c.kind < best.kind || (c.kind == best.kind && c.kind != ContactKind::Unsupported && c.var < best.var) ||
          (c.kind == ContactKind::Unsupported && best.element.isZero())) {
        best = c;
      }
    }
    if (!any) break;
    if (best.kind == ContactKind::Unsupported) {
      throw UnsupportedError("maximal contact element '" + toString(best.element, ctx) +
                             "' is not adapted to the divisor");
    }
    if (best.kind == ContactKind::FreeExact || best.kind == ContactKind::FreeTruncated) {
      Substitution s = contactSubstitution(best, coords, truncation);
      for (auto& g : algebra.generators) g.f = applySubstitution(g.f, s, coords, truncation);
      stage.exact = stage.exact && s.exact;
      stage.change.push_back(std::move(s));
    }
    stage.block.push_back(best.var);
    blockMask |= bit(best.var);
  }
  // Free coordinates first, then divisorial ones, each in variable order.
  std::stable_sort(stage.block.begin(), stage.block.end(), [&](std::size_t a, std::size_t b) {
    if (ctx.isDivisorial(a) != ctx.isDivisorial(b)) return !ctx.isDivisorial(a);
    return a < b;
  });
  return stage;
}

}  // namespace

ContactBlock maximalContact(const std::vector<Poly>& ideal, const VarContext& ctx, unsigned truncation) {
  ReesAlgebra algebra = ReesAlgebra::fromIdeal(ideal);
  auto order = ordAtOrigin(algebra, ctx.coordinateMask());
  if (!order) throw Error("maximal contact of the zero ideal");
  if (*order == 0) throw Error("maximal contact of the unit ideal");
  Stage stage = contactStage(algebra, ctx.coordinateMask(), *order, ctx, truncation);
  return {stage.block, stage.change, stage.exact};
}

ReesAlgebra coefficientIdeal(const ReesAlgebra& algebra, const std::vector<std::size_t>& block, const Rational& a1) {
  VarMask blockMask = 0;
  for (auto v : block) blockMask |= bit(v);
  ReesAlgebra out;
  std::set<std::pair<Poly::TermMap, std::string>> seen;
  for (const auto& g : algebra.generators) {
    const std::size_t n = g.f.nvars();
    std::map<Monomial, Poly> byAlpha;
    for (const auto& [m, c] : g.f.terms()) {
      Monomial alpha(n, 0);
      Monomial rest = m;
      for (auto v : block) {
        alpha[v] = m[v];
        rest[v] = 0;
      }
      auto [it, inserted] = byAlpha.try_emplace(alpha, Poly(n));
      it->second.addTerm(rest, c);
    }
    for (const auto& [alpha, coeff] : byAlpha) {
      if (coeff.isZero()) continue;
      Rational size = degreeIn(alpha, blockMask);
      if (size >= g.weight * a1) continue;
      Rational weight = g.weight - size / a1;
      Poly normalized = coeff.monic();
      if (seen.insert({normalized.terms(), weight.get_str()}).second) out.generators.push_back({normalized, weight});
    }
  }
  return out;
}

InvariantResult canonicalInvariant(const std::vector<Poly>& ideal, const VarContext& ctx, unsigned truncation) {
  InvariantResult result;
  result.ideal = ideal;
  ReesAlgebra algebra = ReesAlgebra::fromIdeal(ideal);
  const VarMask coords = ctx.coordinateMask();
  VarMask active = coords;
  std::vector<std::pair<std::size_t, Rational>> centerPairs;
  for (std::size_t depth = 0;; ++depth) {
    if (depth > ctx.size()) throw InternalError("invariant recursion did not terminate");
    auto order = ordAtOrigin(algebra, active);
    if (!order) {
      result.inv.setInfinite(true);
      break;
    }
    if (*order == 0) {
      if (depth > 0) throw InternalError("coefficient ideal acquired a unit");
      break;
    }
    Stage stage = contactStage(algebra, active, *order, ctx, truncation);
    if (stage.block.empty()) throw InternalError("no maximal contact element at positive order");
    for (const auto& s : stage.change) {
      for (auto& f : result.ideal) f = applySubstitution(f, s, coords, truncation);
      result.change.push_back(s);
    }
    result.exact = result.exact && stage.exact;
    for (auto v : stage.block) {
      result.inv.push({*order, ctx.isDivisorial(v)});
      centerPairs.emplace_back(v, *order);
    }
    algebra = coefficientIdeal(algebra, stage.block, *order);
    for (auto v : stage.block) active &= ~bit(v);
  }
  result.center = WeightedCenter::fromPairs(centerPairs, ctx);
  return result;
}

}  // namespace ncres
