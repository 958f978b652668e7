// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// fails. Every criterion also has to finish within ten seconds.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ncres/blowup.hpp"
#include "ncres/driver.hpp"
#include "ncres/errors.hpp"
#include "ncres/invariant.hpp"
#include "ncres/ncdetect.hpp"
#include "ncres/parse.hpp"
#include "ncres/poly_ops.hpp"
#include "ncres/splitting.hpp"
#include "support.hpp"

using namespace ncres;

namespace {

struct Failures {
  std::vector<std::string> items;
  std::string notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) items.push_back(what);
  }
};

VarContext freeVars(std::vector<std::string> names) {
  std::vector<VarKind> kinds(names.size(), VarKind::Free);
  return VarContext(std::move(names), std::move(kinds));
}

std::string str(const InvariantVector& inv) { return toString(inv) + (inv.infinite() ? "" : " (finite)"); }

// 1. Golden invariants and the closed formula on normal forms.
void invariantGolden(Failures& f) {
  auto xyw = freeVars({"x", "y", "w"});
  auto r1 = canonicalInvariant({parseExpr("x^2 + y^3 + w^4", xyw)}, xyw);
  f.expect(toString(r1.inv) == "(2,3,4)", "x^2+y^3+w^4 gave " + str(r1.inv));
  f.expect(toString(r1.center, xyw) == "(x^2, y^3, w^4)", "center " + toString(r1.center, xyw));

  auto xyz = freeVars({"x", "y", "z"});
  auto r2 = canonicalInvariant({parseExpr("x^2 - y^2*z", xyz)}, xyz);
  f.expect(toString(r2.inv) == "(2,3,3)", "x^2-y^2z gave " + str(r2.inv));
  f.expect(toString(r2.center, xyz) == "(x^2, y^3, z^3)", "center " + toString(r2.center, xyz));

  std::mt19937 rng(17);
  int mixed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto c = testing::randomNCForm(rng, 2, 6);
    auto r = canonicalInvariant(c.ideal, c.ctx);
    f.expect(r.inv == c.expected, c.describe + ": got " + str(r.inv) + ", formula " + str(c.expected));
    bool plus = false, plain = false;
    for (const auto& e : c.expected.entries()) (e.plus ? plus : plain) = true;
    mixed += plus && plain;
  }
  f.notes = "50 normal forms, " + std::to_string(mixed) + " with mixed free/divisorial tails";
}

// 2. No admissible monomial center beats the invariant.
void monomialOracle(Failures& f) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 4;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    auto ctx = freeVars(names);
    std::vector<Monomial> monomials;
    std::vector<Poly> ideal;
    unsigned bound = 1;
    for (unsigned g = 0, count = 1 + rng() % 3; g < count; ++g) {
      Monomial m = testing::randomMonomial(rng, n, 4);
      if (totalDegree(m) == 0) m[0] = 1;
      bound = std::max(bound, totalDegree(m));
      monomials.push_back(m);
      ideal.push_back(Poly::monomial(m, 1));
    }
    auto r = canonicalInvariant(ideal, ctx);
    std::string label = "trial " + std::to_string(trial) + " " + toString(ideal.front(), ctx);
    f.expect(admissible(ideal, r.center), label + ": canonical center not admissible");
    auto beat = testing::bruteForceBeats(monomials, n, bound, r.inv);
    f.expect(!beat, label + ": brute force beats " + str(r.inv));
  }
  f.notes = "100 monomial ideals";
}

// 3. SNC factorization.
void sncFactorization(Failures& f) {
  auto xy = freeVars({"x", "y"});
  const Poly cusp = parseExpr("x*y + x^3 + y^3", xy);
  auto series = TruncatedSeries(cusp, xy.coordinateMask(), 12);
  auto r = sncFactorize(PreSNC::fromSeries(xy, series), 12);
  f.expect(r.success, "cusp factorization failed");
  if (r.success) {
    TruncatedSeries product = series.with(Poly::constant(2, 1));
    for (const auto& fac : r.factors) {
      product = product * (fac.g + fac.g.with(Poly::variable(2, fac.var))).pow(fac.multiplicity);
    }
    f.expect((product.body() - cusp).truncated(xy.coordinateMask(), 12).isZero(), "cusp re-expansion differs");
  }

  auto xyz = freeVars({"x", "y", "z"});
  auto bad = sncFactorize(
      PreSNC::fromSeries(xyz, TruncatedSeries(parseExpr("x*y*z + x^4 + y^4 + z^4", xyz), xyz.coordinateMask(), 12)), 12);
  std::vector<std::string> cert;
  for (const auto& m : bad.certificate) cert.push_back(toString(m, xyz));
  std::sort(cert.begin(), cert.end());
  f.expect(!bad.success && bad.failureDegree == 4, "triple point did not fail at e=4");
  f.expect(cert == std::vector<std::string>{"x^4", "y^4", "z^4"}, "triple point certificate differs");

  std::mt19937 rng(41);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t nv = 2 + trial % 2;
    std::vector<std::string> names = {"x", "y", "w"};
    names.resize(nv + 1);
    names[nv] = "v";
    auto ctx = freeVars(names);
    const unsigned N = 7;
    VarMask mask = ctx.coordinateMask();
    TruncatedSeries product(Poly::constant(nv + 1, 1), mask, N);
    for (std::size_t i = 0, s = 1 + rng() % nv; i < s; ++i) {
      Poly g(nv + 1);
      for (int t = 0; t < 3; ++t) {
        Monomial m(nv + 1, 0);
        unsigned deg = 2 + rng() % 2;
        for (unsigned k = 0; k < deg; ++k) ++m[rng() % (nv + 1)];
        g.addTerm(m, coeff(rng));
      }
      product = product * product.with(Poly::variable(nv + 1, i) + g).pow(1 + rng() % 2);
    }
    std::string label = "product " + std::to_string(trial);
    try {
      // The per-iteration assertions throw InternalError from inside.
      auto res = sncFactorize(PreSNC::fromSeries(ctx, product), N);
      f.expect(res.success, label + " did not factor");
      for (std::size_t i = 1; i < res.steps.size(); ++i) {
        const auto& a = res.steps[i - 1];
        const auto& b = res.steps[i];
        f.expect(b.degree > a.degree || (b.degree == a.degree && b.minimalSize < a.minimalSize),
                 label + ": (e, |M_e|) did not decrease");
      }
    } catch (const InternalError& e) {
      f.expect(false, label + ": " + e.what());
    }
  }
  f.notes = "cusp to degree 12, certificate {x^4,y^4,z^4}, 100 products";
}

// 4. Splitting fields of cyclic forms.
void splitting(Failures& f) {
  auto cp2 = cyclicForm(2);
  f.expect(cp2.form == parseExpr("x0^2 - z*x1^2", cp2.ctx), "cyclicForm(2) = " + toString(cp2.form, cp2.ctx));
  auto cp3 = cyclicForm(3);
  f.expect(cp3.form == testing::cyclicThreeOracle(), "cyclicForm(3) differs from the expansion oracle");

  Poly locus = ramificationLocus(cp2);
  Monomial z(3, 0);
  z[2] = 1;
  Rational c = locus.coefficient(z);
  f.expect(c != 0 && locus == Poly::monomial(z, c), "ramification locus " + toString(locus, cp2.ctx));
  f.expect(splittingFieldDegree(cp2, {{2, 2}}).degree == 2, "degree at z=2");
  f.expect(splittingFieldDegree(cp2, {{2, 4}}).degree == 1, "degree at z=4");

  std::mt19937 rng(37);
  for (unsigned n : {2u, 3u}) {
    auto cp = cyclicForm(n);
    for (int trial = 0; trial < 20; ++trial) {
      Rational value = makeRational(static_cast<int>(rng() % 41) - 20, 1 + rng() % 5);
      if (value == 0) value = 1;
      bool independent = independentFactorsAt(cp, {{n, value}});
      auto r = canonicalInvariant({cp.form.evaluated(n, value)}, cp.ctx);
      bool maximal = r.inv.entries().size() == n && r.inv.infinite();
      for (const auto& e : r.inv.entries()) maximal = maximal && e.value == n;
      f.expect(independent == maximal, "n=" + std::to_string(n) + " z=" + toString(value) + ": independentFactorsAt " +
                                           (independent ? "yes" : "no") + ", invariant " + str(r.inv));
    }
  }
  f.notes = "20 values of z for n = 2, 3";
}

// 5. The pinch point end to end, checked against a hand-built chart.
void pinchPoint(Failures& f) {
  Problem p = loadProblem(std::string(NCRES_INPUT_DIR) + "/pinch_point.txt");
  ResolutionTrace t = runResolveExceptNC(p);
  f.expect(t.outcome == Outcome::TerminatedNC, "outcome " + std::string(toString(t.outcome)));
  f.expect(t.steps.size() == 1, std::to_string(t.steps.size()) + " steps");
  if (t.steps.size() != 1) return;
  const auto& step = t.steps[0];
  const WeightedCenter& J = step.center;

  // V(J) is the origin iff every coordinate carries a center entry.
  for (std::size_t i = 0; i < 3; ++i) f.expect(contains(J.mask(), i), "center misses " + p.ctx.name(i));
  bool offWitness = false;
  const std::vector<Rational> witness{0, 0, 1};
  for (const auto& e : J.entries()) offWitness = offWitness || witness[e.var] != 0;
  f.expect(offWitness && centerDisjointFromPoints(J, {witness}), "witness (0,0,1) lies in V(center)");

  // Oracle chart: x_i -> s^{w/a_i} x_i by composition, then divide by s^w.
  Integer w = 1;
  for (const auto& e : J.entries()) w = lcm(w, e.exponent.get_num());
  VarContext chart({"x", "y", "z", "s1"}, {VarKind::Free, VarKind::Free, VarKind::Free, VarKind::Divisorial});
  std::vector<Poly> images;
  for (std::size_t i = 0; i < 3; ++i) images.push_back(Poly::variable(4, i));
  for (const auto& e : J.entries()) {
    Integer wi = w / e.exponent.get_num();
    Monomial m(4, 0);
    m[e.var] = 1;
    m[3] = static_cast<unsigned>(wi.get_ui());
    images[e.var] = Poly::monomial(m, 1);
  }
  Poly total = p.generators()[0].composed(images);
  Poly controlled(4);
  unsigned lowest = ~0u;
  for (const auto& [m, c] : total.terms()) {
    lowest = std::min<unsigned>(lowest, m[3]);
    Monomial q = m;
    q[3] -= std::min<unsigned>(q[3], static_cast<unsigned>(w.get_ui()));
    controlled.addTerm(q, c);
  }
  f.expect(w == 6 && lowest == 6, "oracle total transform divisible by s^" + std::to_string(lowest));
  f.expect(step.idealAfter.size() == 1 && parseExpr(step.idealAfter[0], chart) == controlled,
           "trace ideal differs from the oracle chart");
  f.expect(step.ledger.size() == 1 && step.ledger[0].var == "s1" && step.ledger[0].removed == std::vector<unsigned>{6},
           "ledger does not record s1^6");

  const InvariantVector bound = step.invariant;
  std::ostringstream seen;
  for (std::size_t unit = 0; unit < 3; ++unit) {
    std::vector<Rational> q(4, 0);
    q[unit] = 1;
    auto r = canonicalInvariant(translate(std::vector<Poly>{controlled}, q), chart);
    f.expect(r.inv < bound, "invariant at unit " + chart.name(unit) + " is " + str(r.inv));
    seen << (unit ? ", " : "") << chart.name(unit) << "=1: " << toString(r.inv);
  }
  f.notes = "1 step, " + toString(J, step.centerCtx) + ", s1^6, exceptional invariants " + seen.str();
}

// 6. Transform algebra.
void transformAlgebra(Failures& f) {
  std::mt19937 rng(29);
  auto ctx = freeVars({"x", "y", "z"});
  int done = 0;
  for (int trial = 0; trial < 1000 && done < 100; ++trial) {
    std::vector<std::pair<std::size_t, Rational>> pairs;
    for (std::size_t v = 0; v < 3; ++v) {
      if (rng() % 3 != 0) pairs.emplace_back(v, makeRational(1 + rng() % 4, 1 + rng() % 2));
    }
    if (pairs.empty()) continue;
    auto J = WeightedCenter::fromPairs(pairs, ctx);
    auto admissiblePart = [&](const Poly& p) {
      Poly out(3);
      for (const auto& [m, c] : p.terms()) {
        if (*weightedOrder(Poly::monomial(m, 1), J.weights(3)) >= 1) out.addTerm(m, c);
      }
      return out;
    };
    Poly a = admissiblePart(testing::randomPoly(rng, 3, 7, 6));
    Poly b = admissiblePart(testing::randomPoly(rng, 3, 7, 6));
    if (a.isZero() || b.isZero()) continue;
    ++done;
    std::string label = "pair " + std::to_string(done) + " center " + toString(J, ctx);
    Chart chart = initialChart(ctx, {a, b});
    auto weights = blowupWeights(J);
    for (const auto& h : cobordantBlowup(chart, J).ideal) {
      Poly copy = h;
      f.expect(Integer(stripPower(copy, 3)) >= weights.w, label + ": total transform not divisible by s^w");
    }
    Chart product = strictTransform(initialChart(ctx, {a * b}), J);
    Chart factors = strictTransform(chart, J);
    f.expect(product.ideal[0] == factors.ideal[0] * factors.ideal[1], label + ": strict transform not multiplicative");
  }
  f.expect(done == 100, "only " + std::to_string(done) + " admissible pairs");

  for (unsigned mask = 1; mask < 8; ++mask) {
    std::vector<std::pair<std::size_t, Rational>> pairs;
    for (std::size_t v = 0; v < 3; ++v) {
      if (mask & (1u << v)) pairs.emplace_back(v, Rational(1));
    }
    auto weights = blowupWeights(WeightedCenter::fromPairs(pairs, ctx));
    bool ones = weights.w == 1;
    for (const auto& wi : weights.perVariable) ones = ones && wi == 1;
    f.expect(ones, "smooth center on mask " + std::to_string(mask) + " has weights other than 1");
  }
  f.notes = "100 admissible pairs, 7 smooth centers";
}

// What the command line tool writes for one mode, errors included.
std::string modeTrace(Mode mode, const Problem& p) {
  Json j;
  try {
    Report r = runMode(mode, p);
    j = r.trace;
    j["text"] = r.text;
    j["exit"] = r.exitCode;
  } catch (const Error& e) {
    j["mode"] = std::string(toString(mode));
    j["error"] = e.what();
  }
  return j.dump(2);
}

// 7. Determinism over every mode and every input file.
void determinism(Failures& f) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(NCRES_INPUT_DIR)) {
    if (entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  int runs = 0;
  for (const auto& path : files) {
    Problem p = loadProblem(path.string());
    for (Mode m : {Mode::Invariant, Mode::Center, Mode::Blowup, Mode::NCFactor, Mode::Split, Mode::Resolve}) {
      std::string a = modeTrace(m, p);
      std::string b = modeTrace(m, p);
      f.expect(a == b, path.filename().string() + " " + std::string(toString(m)) + " differs between runs");
      ++runs;
    }
  }
  f.expect(files.size() >= 6, "expected the six input files");
  f.notes = std::to_string(files.size()) + " inputs x 6 modes, " + std::to_string(runs) + " pairs";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Failures&)>>> criteria = {
      {"invariant golden values and closed formula", invariantGolden},
      {"monomial-ideal brute-force oracle", monomialOracle},
      {"SNC factorization", sncFactorization},
      {"splitting module", splitting},
      {"pinch point end to end", pinchPoint},
      {"transform algebra", transformAlgebra},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Failures f;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(f);
    } catch (const std::exception& e) {
      f.items.push_back(std::string("exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (ms > 10000) f.items.push_back("took " + std::to_string(ms) + " ms");
    bool ok = f.items.empty();
    failed += !ok;
    std::cout << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << ms << " ms)";
    if (!f.notes.empty()) std::cout << "; " << f.notes;
    std::cout << "\n";
    for (std::size_t k = 0; k < f.items.size() && k < 5; ++k) std::cout << "    " << f.items[k] << "\n";
    if (f.items.size() > 5) std::cout << "    ... " << f.items.size() - 5 << " more\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed\n" : "all criteria passed\n");
  return failed ? 1 : 0;
}
