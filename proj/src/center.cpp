#include "ncres/center.hpp"

#include <algorithm>

#include "ncres/errors.hpp"

namespace ncres {

WeightedCenter::WeightedCenter(std::vector<CenterEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].exponent <= 0) throw Error("center exponents must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (entries_[i].var == entries_[j].var) throw Error("center variables must be distinct");
    }
  }
  std::stable_sort(entries_.begin(), entries_.end(), [](const CenterEntry& a, const CenterEntry& b) {
    if (a.exponent != b.exponent) return a.exponent < b.exponent;
    if (a.divisorial != b.divisorial) return !a.divisorial;
    return a.var < b.var;
  });
}

WeightedCenter WeightedCenter::fromPairs(const std::vector<std::pair<std::size_t, Rational>>& pairs,
                                         const VarContext& ctx) {
  std::vector<CenterEntry> entries;
  for (const auto& [var, a] : pairs) {
    if (ctx.isParameter(var)) throw Error("parameter '" + ctx.name(var) + "' cannot be a center variable");
    entries.push_back({var, a, ctx.isDivisorial(var)});
  }
  return WeightedCenter(std::move(entries));
}

VarMask WeightedCenter::mask() const {
  VarMask m = 0;
  for (const auto& e : entries_) m |= bit(e.var);
  return m;
}

std::vector<Rational> WeightedCenter::weights(std::size_t nvars) const {
  std::vector<Rational> w(nvars, Rational(0));
  for (const auto& e : entries_) w.at(e.var) = 1 / e.exponent;
  return w;
}

std::string toString(const WeightedCenter& center, const VarContext& ctx) {
  std::string out = "(";
  for (std::size_t i = 0; i < center.entries().size(); ++i) {
    const auto& e = center.entries()[i];
    if (i > 0) out += ", ";
    out += ctx.name(e.var);
    if (e.exponent != 1) {
      out += isInteger(e.exponent) ? "^" + e.exponent.get_str() : "^(" + e.exponent.get_str() + ")";
    }
  }
  return out + ")";
}

}  // namespace ncres
