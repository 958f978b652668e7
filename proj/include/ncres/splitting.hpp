#pragma once

// Splitting forms: homogeneous forms in the center variables that factor into
// linear forms after a finite extension of the coefficient ring Q[params].

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncres/poly.hpp"
#include "ncres/poly_ops.hpp"
#include "ncres/univariate.hpp"
#include "ncres/var_context.hpp"

namespace ncres {

/// Values for some or all parameter variables.
using ParameterPoint = std::map<std::size_t, Rational>;

struct SplittingForm {
  VarContext ctx;
  Poly form;                       // homogeneous in `vars`, coefficients in Q[params]
  std::vector<std::size_t> vars;   // center variables; vars[0] plays x_1
  Monomial divisorialPrefix;       // x_{s+1}^{a_{s+1}} ... split off the NC form (may be all zero)
};

/// Validates homogeneity in `vars` and that no var is a parameter.
SplittingForm makeSplittingForm(const VarContext& ctx, const Poly& form, std::vector<std::size_t> vars);

/// Total degree of the form in its center variables.
unsigned formDegree(const SplittingForm& f);

struct Monicized {
  SplittingForm form;       // coefficient of x_1^d equal to 1
  CoordinateChange change;  // x_j -> x_j + lambda_j x_1 on free variables
  Rational scale;           // form = scale * (original after change)
};

/// Makes the form monic in x_1 = vars[0] (the first free center variable is
/// moved to the front). Searches integer, then small rational, shifts
/// lambda for the other free variables until F(1, lambda) is a nonzero
/// constant. Throws UnsupportedError if the x_1^d coefficient stays a
/// non-constant parameter polynomial over the whole search.
Monicized monicize(const SplittingForm& f);

/// Phi_j(x_1) = F(x_1; x_j = -1, other center variables 0), as a polynomial in
/// x_1 with coefficients in Q[params]. `j` is a variable index in vars.
Poly specialization(const SplittingForm& monic, std::size_t j);

/// F(x_1; x_j = beta_j) for a vector beta over vars[1..]: the generic
/// combination used by the second proof; a verification oracle only.
Poly genericCombination(const SplittingForm& monic, const std::vector<Rational>& beta);

/// Substitutes the given parameter values (the variables stay in the context).
SplittingForm specializeParameters(const SplittingForm& f, const ParameterPoint& point);

struct SplittingFieldInfo {
  unsigned degree = 1;
  bool cyclic = true;
  std::string shape;  // "rational", "quadratic", "multiquadratic", "cyclic cp(n)"
  std::vector<std::string> quadraticClasses;  // radicands generating the field
};

/// [K_F : K] where K is Q (all parameters fixed by `point`) or Q(params).
/// Supported: every irreducible factor of every Phi_j has degree <= 2, or the
/// form is a recognized cp(n). Other shapes throw UnsupportedError.
SplittingFieldInfo splittingFieldDegree(const SplittingForm& f, const ParameterPoint& point = {});

/// n if the form is Delta_n in its variable order with a single parameter.
std::optional<unsigned> recognizeCyclic(const SplittingForm& f);

/// Square-free reduced product of the discriminants of the Phi_j, normalized
/// to leading coefficient 1; a nonzero constant means an empty locus. Throws
/// UnsupportedError if some discriminant vanishes identically.
Poly ramificationLocus(const SplittingForm& f);

/// Delta_n in x0..x_{n-1} and the parameter z: the norm of x0 + x1 u + ... +
/// x_{n-1} u^{n-1} from Q(z)[u]/(u^n - z), i.e. the resultant in u.
SplittingForm cyclicForm(unsigned n, unsigned bound = 6);

/// The ramification locus does not vanish at the point and every Phi_j keeps
/// its generic number of distinct roots there.
bool independentFactorsAt(const SplittingForm& f, const ParameterPoint& point);

/// Determinant by fraction-free (Bareiss) elimination over Q[vars].
Poly bareissDeterminant(std::vector<std::vector<Poly>> m, std::size_t nvars);

/// Discriminant-style resultant Res_x(p, p') for p in Q[params][x].
Poly discriminant(const Poly& p, std::size_t var);

}  // namespace ncres
