#pragma once

#include <string>
#include <vector>

#include "ncres/rational.hpp"
#include "ncres/var_context.hpp"

namespace ncres {

/// One generator x_i^{a_i} of a weighted center.
struct CenterEntry {
  std::size_t var = 0;
  Rational exponent;
  bool divisorial = false;

  bool operator==(const CenterEntry&) const = default;
};

/// The Q-ideal (x_1^{a_1}, ..., x_k^{a_k}) on distinct coordinate variables.
/// Entries are kept sorted by ascending exponent; at equal exponents free
/// variables precede divisorial ones, then declaration order.
class WeightedCenter {
 public:
  WeightedCenter() = default;
  explicit WeightedCenter(std::vector<CenterEntry> entries);

  /// Builds entries from (variable, exponent) pairs, reading divisorial flags from ctx.
  static WeightedCenter fromPairs(const std::vector<std::pair<std::size_t, Rational>>& pairs,
                                  const VarContext& ctx);

  const std::vector<CenterEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  VarMask mask() const;

  /// Per-variable weights 1/a_i (zero off the center), sized nvars.
  std::vector<Rational> weights(std::size_t nvars) const;

  bool operator==(const WeightedCenter&) const = default;

 private:
  std::vector<CenterEntry> entries_;
};

/// "(x^2, y^3, w^4)"; rational exponents print as x^(1/2).
std::string toString(const WeightedCenter& center, const VarContext& ctx);

}  // namespace ncres
