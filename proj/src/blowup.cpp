#include "ncres/blowup.hpp"

#include "ncres/errors.hpp"
#include "ncres/invariant.hpp"

namespace ncres {

std::string_view toString(TransformKind kind) {
  switch (kind) {
    case TransformKind::Total:
      return "total";
    case TransformKind::Controlled:
      return "controlled";
    case TransformKind::Strict:
      return "strict";
  }
  return "?";
}

BlowupWeights blowupWeights(const WeightedCenter& center) {
  if (center.empty()) throw Error("cannot blow up the empty center");
  BlowupWeights out;
  out.w = 1;
  for (const auto& e : center.entries()) out.w = lcm(out.w, e.exponent.get_num());
  for (const auto& e : center.entries()) {
    Rational wi = Rational(out.w) / e.exponent;
    if (!isInteger(wi)) throw InternalError("blow-up weight is not integral");
    out.perVariable.push_back(wi.get_num());
  }
  return out;
}

Chart initialChart(VarContext ctx, std::vector<Poly> ideal) {
  Chart c;
  c.ctx = std::move(ctx);
  c.ideal = std::move(ideal);
  for (const auto& f : c.ideal) {
    if (f.nvars() != c.ctx.size()) throw InternalError("generator arity does not match the context");
  }
  return c;
}

Poly totalTransform(const Poly& f, const WeightedCenter& center, const BlowupWeights& weights,
                    std::size_t nvarsAfter) {
  const std::size_t s = nvarsAfter - 1;
  Poly out(nvarsAfter);
  for (const auto& [m, c] : f.terms()) {
    Monomial image(nvarsAfter, 0);
    std::copy(m.begin(), m.end(), image.begin());
    Integer power = 0;
    for (std::size_t i = 0; i < center.size(); ++i) power += weights.perVariable[i] * m[center.entries()[i].var];
    if (!power.fits_uint_p()) throw UnsupportedError("exceptional exponent too large");
    image[s] = static_cast<std::uint32_t>(power.get_ui());
    out.addTerm(image, c);
  }
  return out;
}

unsigned stripPower(Poly& f, std::size_t var) {
  if (f.isZero()) return 0;
  unsigned low = UINT32_MAX;
  for (const auto& [m, c] : f.terms()) low = std::min<unsigned>(low, m[var]);
  if (low == 0) return 0;
  Poly out(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    Monomial q = m;
    q[var] -= low;
    out.addTerm(q, c);
  }
  f = std::move(out);
  return low;
}

namespace {

Chart transform(const Chart& chart, const WeightedCenter& center, TransformKind kind) {
  for (const auto& e : center.entries()) {
    if (e.var >= chart.ctx.size() || chart.ctx.isParameter(e.var)) throw Error("center variable is not a coordinate");
  }
  if (!admissible(chart.ideal, center)) throw NotAdmissibleError("center not admissible");
  BlowupWeights weights = blowupWeights(center);

  Chart out;
  out.ctx = chart.ctx.withVariable(chart.ctx.freshName("s"), VarKind::Divisorial);
  const std::size_t n = out.ctx.size();
  const std::size_t s = n - 1;
  out.history = chart.history;
  out.history.push_back({center, weights, s, kind});
  out.exceptional = chart.exceptional;
  out.vertex = center.mask();

  Integer denominators = 1;
  for (const auto& e : center.entries()) denominators = lcm(denominators, e.exponent.get_den());
  out.groupOrder = chart.groupOrder * denominators;

  ExceptionalDivisor divisor{s, {}};
  for (const auto& f : chart.ideal) {
    Poly g = totalTransform(f, center, weights, n);
    unsigned removed = 0;
    if (kind == TransformKind::Controlled && !g.isZero()) {
      if (!weights.w.fits_uint_p()) throw UnsupportedError("blow-up weight too large");
      removed = static_cast<unsigned>(weights.w.get_ui());
      Poly divided(n);
      for (const auto& [m, c] : g.terms()) {
        if (m[s] < removed) throw NotAdmissibleError("center not admissible");
        Monomial q = m;
        q[s] -= removed;
        divided.addTerm(q, c);
      }
      g = std::move(divided);
    } else if (kind == TransformKind::Strict) {
      removed = stripPower(g, s);
    }
    divisor.removed.push_back(removed);
    out.ideal.push_back(std::move(g));
  }
  out.exceptional.push_back(std::move(divisor));
  return out;
}

}  // namespace

Chart cobordantBlowup(const Chart& chart, const WeightedCenter& center) {
  return transform(chart, center, TransformKind::Total);
}

Chart controlledTransform(const Chart& chart, const WeightedCenter& center) {
  return transform(chart, center, TransformKind::Controlled);
}

Chart strictTransform(const Chart& chart, const WeightedCenter& center) {
  return transform(chart, center, TransformKind::Strict);
}

bool centerDisjointFromPoints(const WeightedCenter& center, const std::vector<std::vector<Rational>>& points) {
  for (const auto& p : points) {
    bool inside = true;
    for (const auto& e : center.entries()) {
      if (p.at(e.var) != 0) {
        inside = false;
        break;
      }
    }
    if (inside) return false;
  }
  return true;
}

bool onVertex(const Chart& chart, const std::vector<Rational>& point) {
  if (chart.vertex == 0) return false;
  for (std::size_t v = 0; v < point.size(); ++v) {
    if (contains(chart.vertex, v) && point[v] != 0) return false;
  }
  return true;
}

void requireOffVertex(const Chart& chart, const std::vector<Rational>& point) {
  if (onVertex(chart, point)) throw VertexPointError("point lies on the excluded vertex of the cobordant chart");
}

std::vector<Rational> liftPoint(const std::vector<Rational>& point) {
  std::vector<Rational> out = point;
  out.push_back(1);
  return out;
}

}  // namespace ncres
