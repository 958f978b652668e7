#pragma once

// Admissibility of weighted centers, orders of Rees algebras, maximal
// contact, coefficient ideals and the canonical (logarithmic) invariant.
//
// Everything is evaluated at the origin of the current chart; callers move
// other points there with translate() first.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "ncres/center.hpp"
#include "ncres/poly.hpp"
#include "ncres/poly_ops.hpp"
#include "ncres/var_context.hpp"

namespace ncres {

struct InvEntry {
  Rational value;
  bool plus = false;  // marked entry a+ : a < a+ < b for every b > a

  bool operator==(const InvEntry&) const = default;
};

/// Lexicographically ordered invariant. `infinite` is the terminal marker
/// appended when the residual algebra is zero; it sorts above every entry.
/// An exhausted vector without the marker (unit residual) sorts below any
/// continuation.
class InvariantVector {
 public:
  InvariantVector() = default;
  InvariantVector(std::vector<InvEntry> entries, bool infinite) : entries_(std::move(entries)), infinite_(infinite) {}

  const std::vector<InvEntry>& entries() const { return entries_; }
  bool infinite() const { return infinite_; }
  bool empty() const { return entries_.empty() && !infinite_; }

  void push(InvEntry e) { entries_.push_back(std::move(e)); }
  void setInfinite(bool v) { infinite_ = v; }

  bool operator==(const InvariantVector&) const = default;

 private:
  std::vector<InvEntry> entries_;
  bool infinite_ = false;
};

std::strong_ordering compareInv(const InvariantVector& a, const InvariantVector& b);
inline bool operator<(const InvariantVector& a, const InvariantVector& b) { return compareInv(a, b) < 0; }

/// "(2,3,4)", "(1,2,2+)"; the terminal marker is not printed unless the vector
/// is nothing but the marker, which prints "(inf)".
std::string toString(const InvariantVector& inv);

/// Drops every leading (1, no-plus) entry.
InvariantVector normalizeInvariant(const InvariantVector& inv);

/// A rational Rees algebra: generators f t^b. An empty list is the zero algebra.
struct ReesGenerator {
  Poly f;
  Rational weight;

  bool operator==(const ReesGenerator&) const = default;
};

struct ReesAlgebra {
  std::vector<ReesGenerator> generators;

  static ReesAlgebra fromIdeal(const std::vector<Poly>& ideal);
  bool isZero() const { return generators.empty(); }
};

/// Every generator has weighted order >= 1 for the weights 1/a_i of J.
bool admissible(const std::vector<Poly>& ideal, const WeightedCenter& center);

/// Minimal order of the generators in the coordinate (non-parameter)
/// variables; nullopt for the zero ideal.
std::optional<unsigned> ordAtOrigin(const std::vector<Poly>& ideal, const VarContext& ctx);

/// min over generators of ord(f)/b, orders taken in the variables of `active`.
std::optional<Rational> ordAtOrigin(const ReesAlgebra& algebra, VarMask active);

struct ContactBlock {
  std::vector<std::size_t> block;  // in the order the variables were chosen
  CoordinateChange change;         // to apply before reading the block as coordinates
  bool exact = true;
};

/// Maximal set of elements of T(I) = D^{a-1}(I) with independent linear
/// parts, turned into coordinates by an E-adapted change (only free variables
/// absorb the substitutions). At order one a divisorial variable in a linear
/// part joins the block unchanged. Throws UnsupportedError when, at higher
/// order, an element's linear part lives only on divisorial variables and it
/// is not a divisorial coordinate up to a unit, and Error when the ideal has
/// order 0 or infinity.
ContactBlock maximalContact(const std::vector<Poly>& ideal, const VarContext& ctx, unsigned truncation = 16);

/// Graded coefficients of the generators along the block: (c_{j,alpha},
/// b_j - |alpha|/a1) for every |alpha| < b_j*a1 with c_{j,alpha} != 0.
ReesAlgebra coefficientIdeal(const ReesAlgebra& algebra, const std::vector<std::size_t>& block, const Rational& a1);

struct InvariantResult {
  InvariantVector inv;
  WeightedCenter center;
  CoordinateChange change;    // the center is expressed after this change
  std::vector<Poly> ideal;    // the input ideal after the change
  bool exact = true;          // false if a maximal-contact inversion was truncated
};

/// inv_0(I) and its maximal admissible center. Throws UnsupportedError for
/// shapes outside the implemented case split and InternalError if the
/// recursion fails to terminate within the number of variables.
InvariantResult canonicalInvariant(const std::vector<Poly>& ideal, const VarContext& ctx, unsigned truncation = 16);

}  // namespace ncres
