#include "ncres/splitting.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "ncres/errors.hpp"

namespace ncres {

SplittingForm makeSplittingForm(const VarContext& ctx, const Poly& form, std::vector<std::size_t> vars) {
  if (form.isZero()) throw Error("a splitting form must be nonzero");
  if (vars.empty()) throw Error("a splitting form needs at least one center variable");
  VarMask mask = 0;
  for (auto v : vars) {
    if (v >= ctx.size() || ctx.isParameter(v)) throw Error("splitting form variables must be coordinates");
    if (contains(mask, v)) throw Error("splitting form variables must be distinct");
    mask |= bit(v);
  }
  unsigned d = form.degree(mask);
  if (form.order(mask) != d) throw Error("splitting form is not homogeneous in its center variables");
  return {ctx, form, std::move(vars), Monomial(ctx.size(), 0)};
}

unsigned formDegree(const SplittingForm& f) {
  VarMask mask = 0;
  for (auto v : f.vars) mask |= bit(v);
  return f.form.degree(mask);
}

namespace {

// Visits candidate shift vectors of length m: small integers, then halves
// and thirds, ordered by the largest value index used so the zero vector
// comes first. Stops when the visitor returns true or the budget runs out.
template <typename Visit>
bool forEachShift(std::size_t m, Visit visit) {
  std::vector<Rational> values{0};
  for (int h = 1; h <= 4; ++h) {
    values.push_back(h);
    values.push_back(-h);
  }
  for (int q : {2, 3}) {
    for (int p = 1; p <= 3; ++p) {
      values.push_back(makeRational(p, q));
      values.push_back(makeRational(-p, q));
    }
  }
  std::size_t budget = 200000;
  for (std::size_t top = 0; top < values.size(); ++top) {
    std::vector<std::size_t> digit(m, 0);
    while (true) {
      if (m == 0 || *std::max_element(digit.begin(), digit.end()) == top) {
        std::vector<Rational> lambda(m);
        for (std::size_t i = 0; i < m; ++i) lambda[i] = values[digit[i]];
        if (visit(lambda)) return true;
        if (--budget == 0) return false;
      }
      std::size_t i = 0;
      while (i < m && digit[i] == top) digit[i++] = 0;
      if (i == m) break;
      ++digit[i];
    }
    if (m == 0) break;
  }
  return false;
}

VarMask parametersIn(const Poly& p, const VarContext& ctx) { return p.support() & ctx.parameterMask(); }

Poly evaluateParameters(const Poly& p, const ParameterPoint& point) {
  Poly out = p;
  for (const auto& [var, value] : point) out = out.evaluated(var, value);
  return out;
}

// Key of a squarefree class in Q*/Q*^2 (or Q(p)*/Q(p)*^2): the odd-power atoms.
using ClassAtoms = std::set<std::string>;

void addRationalAtoms(const Rational& q, ClassAtoms& atoms) {
  auto toggle = [&](const std::string& key) {
    if (!atoms.erase(key)) atoms.insert(key);
  };
  Integer n = q.get_num() * q.get_den();
  if (n < 0) {
    toggle("-1");
    n = -n;
  }
  for (const auto& [prime, e] : factorInteger(n)) {
    if (e % 2 == 1) toggle(prime.get_str());
  }
}

std::size_t f2Rank(const std::vector<ClassAtoms>& classes) {
  std::vector<std::string> universe;
  for (const auto& c : classes) universe.insert(universe.end(), c.begin(), c.end());
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  std::vector<std::vector<bool>> rows;
  for (const auto& c : classes) {
    std::vector<bool> row(universe.size(), false);
    for (const auto& a : c) row[std::lower_bound(universe.begin(), universe.end(), a) - universe.begin()] = true;
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < universe.size() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][col]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][col]) {
        for (std::size_t k = 0; k < universe.size(); ++k) rows[r][k] = rows[r][k] != rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

std::string classText(const ClassAtoms& atoms) {
  std::string out;
  for (const auto& a : atoms) {
    if (!out.empty()) out += "*";
    out += a.find(' ') == std::string::npos ? a : "(" + a + ")";
  }
  return out.empty() ? "1" : out;
}

// Square class of a discriminant in Q[params], params given as a mask.
ClassAtoms discriminantClass(const Poly& disc, const VarContext& ctx) {
  ClassAtoms atoms;
  VarMask params = parametersIn(disc, ctx);
  int count = std::popcount(params);
  if (count == 0) {
    addRationalAtoms(disc.constantTerm(), atoms);
    return atoms;
  }
  if (disc.size() == 1) {
    const auto& [m, c] = *disc.terms().begin();
    addRationalAtoms(c, atoms);
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] % 2 == 1) atoms.insert(ctx.name(v));
    }
    return atoms;
  }
  if (count > 1) throw UnsupportedError("discriminant class over several parameters is not supported");
  std::size_t p = static_cast<std::size_t>(std::countr_zero(params));
  UPoly u = toUPoly(disc, p);
  addRationalAtoms(u.back(), atoms);
  for (const auto& [factor, mult] : factorUnivariate(u)) {
    if (mult % 2 == 1) atoms.insert(toString(factor, ctx.name(p)));
  }
  return atoms;
}

SplittingFieldInfo infoFromClasses(const std::vector<ClassAtoms>& classes) {
  SplittingFieldInfo info;
  std::vector<ClassAtoms> nontrivial;
  for (const auto& c : classes) {
    if (!c.empty()) nontrivial.push_back(c);
  }
  std::size_t rank = f2Rank(nontrivial);
  info.degree = 1U << rank;
  info.cyclic = rank <= 1;
  info.shape = rank == 0 ? "rational" : rank == 1 ? "quadratic" : "multiquadratic";
  std::set<std::string> seen;
  for (const auto& c : nontrivial) {
    std::string t = classText(c);
    if (seen.insert(t).second) info.quadraticClasses.push_back(t);
  }
  return info;
}

}  // namespace

Monicized monicize(const SplittingForm& f) {
  SplittingForm g = f;
  auto firstFree = std::find_if(g.vars.begin(), g.vars.end(), [&](std::size_t v) { return !g.ctx.isDivisorial(v); });
  if (firstFree == g.vars.end()) throw UnsupportedError("splitting form has no free center variable");
  std::rotate(g.vars.begin(), firstFree, firstFree + 1);
  const std::size_t x1 = g.vars[0];
  const std::size_t n = g.ctx.size();

  std::vector<std::size_t> shiftable;
  for (std::size_t i = 1; i < g.vars.size(); ++i) {
    if (!g.ctx.isDivisorial(g.vars[i])) shiftable.push_back(g.vars[i]);
  }
  Monicized out;
  bool found = forEachShift(shiftable.size(), [&](const std::vector<Rational>& lambda) {
    // Coefficient of x1^d after x_j -> x_j + lambda_j x1 is F(1, lambda, 0).
    Poly lead = g.form.evaluated(x1, 1);
    for (std::size_t i = 1; i < g.vars.size(); ++i) {
      auto it = std::find(shiftable.begin(), shiftable.end(), g.vars[i]);
      Rational value = it == shiftable.end() ? Rational(0) : lambda[static_cast<std::size_t>(it - shiftable.begin())];
      lead = lead.evaluated(g.vars[i], value);
    }
    if (!lead.isConstant() || lead.isZero()) return false;
    Poly x = Poly::variable(n, x1);
    for (std::size_t i = 0; i < shiftable.size(); ++i) {
      if (lambda[i] == 0) continue;
      std::size_t v = shiftable[i];
      out.change.push_back({v, Poly::variable(n, v) + x.scaled(lambda[i]), Poly::variable(n, v) - x.scaled(lambda[i]), true});
    }
    out.scale = 1 / lead.constantTerm();
    g.form = applyChange(g.form, out.change).scaled(out.scale);
    out.form = g;
    return true;
  });
  if (!found) throw UnsupportedError("could not make the splitting form monic over Q[params]");
  return out;
}

Poly specialization(const SplittingForm& monic, std::size_t j) {
  Poly out = monic.form;
  for (std::size_t i = 1; i < monic.vars.size(); ++i) {
    out = out.evaluated(monic.vars[i], monic.vars[i] == j ? Rational(-1) : Rational(0));
  }
  return out;
}

Poly genericCombination(const SplittingForm& monic, const std::vector<Rational>& beta) {
  if (beta.size() + 1 != monic.vars.size()) throw Error("beta must cover every center variable but x_1");
  Poly out = monic.form;
  for (std::size_t i = 1; i < monic.vars.size(); ++i) out = out.evaluated(monic.vars[i], beta[i - 1]);
  return out;
}

SplittingForm specializeParameters(const SplittingForm& f, const ParameterPoint& point) {
  SplittingForm g = f;
  for (const auto& [var, value] : point) {
    if (!f.ctx.isParameter(var)) throw Error("'" + f.ctx.name(var) + "' is not a parameter");
  }
  g.form = evaluateParameters(f.form, point);
  if (g.form.isZero()) throw UnsupportedError("splitting form vanishes at the parameter point");
  return g;
}

std::optional<unsigned> recognizeCyclic(const SplittingForm& f) {
  VarMask params = parametersIn(f.form, f.ctx);
  if (std::popcount(params) != 1) return std::nullopt;
  unsigned n = static_cast<unsigned>(f.vars.size());
  if (n < 2 || n > 6 || formDegree(f) != n) return std::nullopt;
  std::size_t p = static_cast<std::size_t>(std::countr_zero(params));
  SplittingForm delta = cyclicForm(n);
  std::vector<Poly> images;
  for (unsigned i = 0; i < n; ++i) images.push_back(Poly::variable(f.ctx.size(), f.vars[i]));
  images.push_back(Poly::variable(f.ctx.size(), p));
  Poly mapped = delta.form.composed(images);
  Monomial lead(f.ctx.size(), 0);
  lead[f.vars[0]] = n;
  Rational c = f.form.coefficient(lead);
  if (c == 0 || f.form.scaled(1 / c) != mapped) return std::nullopt;
  return n;
}

SplittingFieldInfo splittingFieldDegree(const SplittingForm& f, const ParameterPoint& point) {
  SplittingForm g = specializeParameters(f, point);
  VarMask symbolic = parametersIn(g.form, g.ctx);
  if (symbolic != 0) {
    if (auto n = recognizeCyclic(g)) {
      SplittingFieldInfo info;
      info.degree = *n;
      info.cyclic = true;
      info.shape = "cyclic cp(" + std::to_string(*n) + ")";
      return info;
    }
  }
  Monicized m = monicize(g);
  const std::size_t x1 = m.form.vars[0];
  std::vector<ClassAtoms> classes;
  for (std::size_t i = 1; i < m.form.vars.size(); ++i) {
    Poly phi = specialization(m.form, m.form.vars[i]);
    if (symbolic == 0) {
      for (const auto& [factor, mult] : factorUnivariate(toUPoly(phi, x1))) {
        if (degree(factor) > 2) {
          throw UnsupportedError("specialization has an irreducible factor of degree " + std::to_string(degree(factor)));
        }
        if (degree(factor) == 2) {
          Rational disc = factor[1] * factor[1] - 4 * factor[0];
          ClassAtoms atoms;
          addRationalAtoms(disc, atoms);
          classes.push_back(atoms);
        }
      }
      continue;
    }
    unsigned d = phi.degree(bit(x1));
    if (d <= 1) continue;
    if (d > 2) throw UnsupportedError("symbolic splitting field of degree > 2 forms is only supported for cp(n)");
    Monomial m0(phi.nvars(), 0), m1 = m0;
    m1[x1] = 1;
    Poly c0(phi.nvars()), c1(phi.nvars());
    for (const auto& [mon, c] : phi.terms()) {
      Monomial rest = mon;
      rest[x1] = 0;
      if (mon[x1] == 0) c0.addTerm(rest, c);
      if (mon[x1] == 1) c1.addTerm(rest, c);
    }
    Poly disc = c1 * c1 - c0.scaled(4);
    if (disc.isZero()) continue;
    classes.push_back(discriminantClass(disc, g.ctx));
  }
  return infoFromClasses(classes);
}

Poly bareissDeterminant(std::vector<std::vector<Poly>> m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(nvars, 1);
  Poly prev = Poly::constant(nvars, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].isZero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].isZero()) ++r;
      if (r == n) return Poly(nvars);
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly numerator = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = numerator.divideExact(prev);
        if (!q) throw InternalError("fraction-free elimination lost exactness");
        m[i][j] = std::move(*q);
      }
      m[i][k] = Poly(nvars);
    }
    prev = m[k][k];
  }
  Poly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

Poly discriminant(const Poly& p, std::size_t var) {
  const std::size_t nv = p.nvars();
  unsigned d = p.degree(bit(var));
  if (d == 0) throw Error("discriminant of a constant");
  if (d == 1) return Poly::constant(nv, 1);
  auto coefficients = [&](const Poly& f, unsigned deg) {
    std::vector<Poly> c(deg + 1, Poly(nv));
    for (const auto& [m, coeff] : f.terms()) {
      Monomial rest = m;
      rest[var] = 0;
      c[m[var]].addTerm(rest, coeff);
    }
    return c;
  };
  auto a = coefficients(p, d);
  auto b = coefficients(p.derivative(var), d - 1);
  const std::size_t size = 2 * d - 1;
  std::vector<std::vector<Poly>> sylvester(size, std::vector<Poly>(size, Poly(nv)));
  for (std::size_t r = 0; r < d - 1; ++r) {
    for (std::size_t i = 0; i <= d; ++i) sylvester[r][r + i] = a[d - i];
  }
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t i = 0; i < d; ++i) sylvester[d - 1 + r][r + i] = b[d - 1 - i];
  }
  return bareissDeterminant(std::move(sylvester), nv);
}

Poly ramificationLocus(const SplittingForm& f) {
  Monicized m = monicize(f);
  const std::size_t nv = f.ctx.size();
  const std::size_t x1 = m.form.vars[0];
  Poly product = Poly::constant(nv, 1);
  for (std::size_t i = 1; i < m.form.vars.size(); ++i) {
    Poly phi = specialization(m.form, m.form.vars[i]);
    if (phi.degree(bit(x1)) == 0) continue;
    Poly disc = discriminant(phi, x1);
    if (disc.isZero()) {
      throw UnsupportedError("splitting form is not reduced: a specialization has a repeated root identically");
    }
    product *= disc;
  }
  VarMask params = parametersIn(product, f.ctx);
  if (params == 0) return Poly::constant(nv, 1);
  if (product.size() == 1) {
    Monomial m0 = product.terms().begin()->first;
    for (auto& e : m0) e = e > 0 ? 1 : 0;
    return Poly::monomial(m0, 1);
  }
  if (std::popcount(params) == 1) {
    std::size_t p = static_cast<std::size_t>(std::countr_zero(params));
    UPoly radical{1};
    for (const auto& [part, mult] : squarefreeDecomposition(toUPoly(product, p))) radical = umul(radical, part);
    return fromUPoly(radical, nv, p);
  }
  return product.monic();
}

SplittingForm cyclicForm(unsigned n, unsigned bound) {
  if (n == 0) throw Error("cp(n) needs n >= 1");
  if (n > bound) throw UnsupportedError("cp(" + std::to_string(n) + ") exceeds the configured bound " + std::to_string(bound));
  std::vector<std::string> names;
  std::vector<VarKind> kinds;
  for (unsigned i = 0; i < n; ++i) {
    names.push_back("x" + std::to_string(i));
    kinds.push_back(VarKind::Free);
  }
  names.push_back("z");
  kinds.push_back(VarKind::Parameter);
  VarContext ctx(names, kinds);
  const std::size_t nv = n + 1;
  const Poly z = Poly::variable(nv, n);

  using Matrix = std::vector<std::vector<Poly>>;
  auto zero = [&] { return Matrix(n, std::vector<Poly>(n, Poly(nv))); };
  // Companion matrix of u^n - z.
  Matrix c = zero();
  for (unsigned i = 0; i + 1 < n; ++i) c[i + 1][i] = Poly::constant(nv, 1);
  c[0][n - 1] = z;
  Matrix power = zero();
  for (unsigned i = 0; i < n; ++i) power[i][i] = Poly::constant(nv, 1);
  Matrix sum = zero();
  for (unsigned k = 0; k < n; ++k) {
    Poly xk = Poly::variable(nv, k);
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) sum[i][j] += power[i][j] * xk;
    }
    Matrix next = zero();
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) {
        for (unsigned l = 0; l < n; ++l) next[i][j] += power[i][l] * c[l][j];
      }
    }
    power = std::move(next);
  }
  Poly det = bareissDeterminant(std::move(sum), nv);
  Monomial lead(nv, 0);
  lead[0] = n;
  Rational c0 = det.coefficient(lead);
  if (c0 == 0) throw InternalError("cp(n) lost its leading term");
  det = det.scaled(1 / c0);
  std::vector<std::size_t> vars;
  for (unsigned i = 0; i < n; ++i) vars.push_back(i);
  return makeSplittingForm(ctx, det, vars);
}

bool independentFactorsAt(const SplittingForm& f, const ParameterPoint& point) {
  Poly locus = ramificationLocus(f);
  Poly atPoint = evaluateParameters(locus, point);
  if (!atPoint.isConstant()) throw Error("every parameter of the form needs a value");
  if (atPoint.isZero()) return false;
  Monicized m = monicize(f);
  const std::size_t x1 = m.form.vars[0];
  for (std::size_t i = 1; i < m.form.vars.size(); ++i) {
    Poly phi = specialization(m.form, m.form.vars[i]);
    unsigned generic = phi.degree(bit(x1));
    Poly special = evaluateParameters(phi, point);
    if (generic == 0) continue;
    if (distinctRootCount(toUPoly(special, x1)) != generic) return false;
  }
  return true;
}

}  // namespace ncres
