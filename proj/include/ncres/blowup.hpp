#pragma once

// Cobordant weighted blow-up in its single affine chart
// B = Spec O[t^-1, x_1 t^{w_1}, ..., x_k t^{w_k}], with s = t^-1 adjoined as a
// new divisorial variable and x_i rescaled to s^{w_i} x_i.

#include <optional>
#include <string>
#include <vector>

#include "ncres/center.hpp"
#include "ncres/poly.hpp"
#include "ncres/var_context.hpp"

namespace ncres {

enum class TransformKind { Total, Controlled, Strict };

std::string_view toString(TransformKind kind);

/// w and the per-variable weights w_i = w / a_i (in center entry order).
struct BlowupWeights {
  Integer w;
  std::vector<Integer> perVariable;
};

/// w = lcm of the numerators of the a_i in lowest terms.
BlowupWeights blowupWeights(const WeightedCenter& center);

/// The power of s removed from each generator by one transform.
struct ExceptionalDivisor {
  std::size_t var = 0;
  std::vector<unsigned> removed;  // per generator, in ideal order
};

struct BlowupRecord {
  WeightedCenter center;
  BlowupWeights weights;
  std::size_t exceptionalVar = 0;
  TransformKind kind = TransformKind::Total;
};

struct Chart {
  VarContext ctx;
  std::vector<Poly> ideal;
  std::vector<ExceptionalDivisor> exceptional;
  std::vector<BlowupRecord> history;
  Integer groupOrder = 1;
  /// Center variables of the most recent blow-up: the chart omits the vertex
  /// where all of them vanish. Zero before any blow-up.
  VarMask vertex = 0;
};

Chart initialChart(VarContext ctx, std::vector<Poly> ideal);

/// x_i -> s^{w_i} x_i in every generator (s the last variable of the new ring).
Poly totalTransform(const Poly& f, const WeightedCenter& center, const BlowupWeights& weights, std::size_t nvarsAfter);

/// Divides out the largest power of `var` dividing f; returns the exponent.
unsigned stripPower(Poly& f, std::size_t var);

/// Total transform. Throws NotAdmissibleError when the center is not
/// admissible for the chart's ideal.
Chart cobordantBlowup(const Chart& chart, const WeightedCenter& center);
/// Total transform divided by s^w once per generator.
Chart controlledTransform(const Chart& chart, const WeightedCenter& center);
/// Total transform divided by the largest power of s in each generator.
Chart strictTransform(const Chart& chart, const WeightedCenter& center);

/// True iff no point lies in V(J), i.e. every point has some nonzero center coordinate.
bool centerDisjointFromPoints(const WeightedCenter& center, const std::vector<std::vector<Rational>>& points);

bool onVertex(const Chart& chart, const std::vector<Rational>& point);
/// Throws VertexPointError if the point lies on the excluded vertex.
void requireOffVertex(const Chart& chart, const std::vector<Rational>& point);

/// A point of the old chart lying off the center, written in the new chart
/// through its s = 1 representative.
std::vector<Rational> liftPoint(const std::vector<Rational>& point);

}  // namespace ncres
