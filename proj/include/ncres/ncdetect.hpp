#pragma once

// Normal-crossings detection: pre-SNC series, residual order, minimal sets,
// the direct SNC factorization, and NC verdicts for principal ideals and for
// ideals reduced to the principal case along an order-one maximal contact.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncres/center.hpp"
#include "ncres/poly.hpp"
#include "ncres/series.hpp"
#include "ncres/var_context.hpp"

namespace ncres {

/// f = x^lead + tail, every tail term of series-degree > |lead|, lead
/// coefficient exactly 1. The series variables are tail.seriesVars(); the
/// other variables (parameters, a square root) live in the coefficient ring.
struct PreSNC {
  VarContext ctx;
  Monomial lead;
  TruncatedSeries tail;

  /// Reads the lowest-degree part as the lead; throws Error if it is not a
  /// single monomial with coefficient 1.
  static PreSNC fromSeries(const VarContext& ctx, const TruncatedSeries& f);

  TruncatedSeries series() const;
  unsigned leadDegree() const;
};

/// Order of the tail; nullopt stands for infinity (pure monomial up to the
/// truncation).
std::optional<unsigned> residualOrder(const PreSNC& f);

/// Degree-e part of the tail keyed by series monomial, coefficients in the
/// coefficient ring.
std::map<Monomial, Poly, GrlexLess> tailCoefficients(const PreSNC& f, unsigned e);

/// M_e(f): degree-e tail monomials divisible by some cofactor x^lead / x_j,
/// ascending in graded-lex order.
std::vector<Monomial> minimalSet(const PreSNC& f, unsigned e);

/// One substitution x_j -> x_j + sigma/a_j * c * x^alpha / cofactor_j.
struct SNCStep {
  unsigned degree = 0;           // e before the step
  std::size_t minimalSize = 0;   // |M_e| before the step
  Monomial monomial;             // alpha
  std::size_t var = 0;           // j
  int sign = -1;                 // sigma
};

struct SNCFactor {
  std::size_t var = 0;
  unsigned multiplicity = 0;
  TruncatedSeries g;  // order >= 2
};

struct FactorizationResult {
  bool success = false;
  std::vector<SNCFactor> factors;     // success: f = prod (x_i + g_i)^{a_i} up to the truncation
  unsigned failureDegree = 0;         // failure: e with M_e(f) empty
  std::vector<Monomial> certificate;  // failure: every degree-e tail monomial
  std::vector<SNCStep> steps;
};

/// The direct factorization algorithm run up to degree `truncation`. Asserts
/// per step that (e, |M_e|) makes progress, that no term of degree < e
/// appears and that the chosen term cancels; on success asserts the product
/// re-expands to f. Throws InternalError if any of these fail.
FactorizationResult sncFactorize(const PreSNC& f, unsigned truncation);

/// Which NC locus is asked for: any codimension, codimension one only, or
/// reduced (all multiplicities one).
enum class NCMode { AnyCodim, Codim1, Reduced };
std::string_view toString(NCMode mode);
std::optional<NCMode> parseNCMode(std::string_view text);

enum class NCStatus { NC, NotNC, Unsupported };
std::string_view toString(NCStatus status);

struct NCVerdict {
  NCStatus status = NCStatus::Unsupported;
  std::string reason;
  unsigned codimension = 0;
  std::vector<std::string> branches;      // linear parts, divisorial components first
  std::vector<unsigned> multiplicities;   // aligned with branches
  std::vector<std::string> coordinates;   // new coordinates used for the factorization
  std::string field = "Q";                // where the branches are defined
  unsigned truncation = 0;                // an NC verdict is certified up to this degree
  unsigned certificateDegree = 0;
  std::vector<std::string> certificate;   // NotNC from the factorization: degree-e tail monomials
  bool exact = true;                      // false if a maximal-contact inversion was truncated
};

struct NCOptions {
  unsigned truncation = 16;
  NCMode mode = NCMode::AnyCodim;
  /// Parameters stay symbolic coefficients (the generic point of the
  /// parameter space) instead of local coordinates at the origin.
  bool generic = false;
  /// Divisorial variables vanishing at the origin; all of them by default.
  std::optional<VarMask> divisors;
};

/// NC verdict for the principal ideal (h) at the origin. A non-empty `center`
/// (the maximal admissible center of h) is cross-checked: NC forces it to be
/// (x_1, ..., x_k)^d with d = ord(h).
NCVerdict isNCPrincipal(const Poly& h, const WeightedCenter& center, const VarContext& ctx, const NCOptions& options = {});

/// NC verdict for an ideal at the origin: removes the free order-one
/// maximal-contact block, restricts to its vanishing locus and decides the
/// principal residual.
NCVerdict isNCIdeal(const std::vector<Poly>& ideal, const VarContext& ctx, const NCOptions& options = {});

/// isNCIdeal at a rational point (moved to the origin first). Only divisorial
/// variables vanishing at the point count as divisor components there.
NCVerdict isNCAt(const std::vector<Poly>& ideal, const VarContext& ctx, const std::vector<Rational>& point,
                 NCOptions options = {});

}  // namespace ncres
