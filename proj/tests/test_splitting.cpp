#include <random>

#include "doctest_ncres.hpp"
#include "ncres/errors.hpp"
#include "ncres/invariant.hpp"
#include "ncres/parse.hpp"
#include "ncres/splitting.hpp"
#include "support.hpp"

using namespace ncres;

namespace {

UPoly up(std::initializer_list<int> coeffs) {
  UPoly p;
  for (int c : coeffs) p.push_back(c);
  trim(p);
  return p;
}

VarContext pinchContext() { return VarContext({"x", "y", "z"}, {VarKind::Free, VarKind::Free, VarKind::Parameter}); }

SplittingForm pinchForm() {
  auto ctx = pinchContext();
  return makeSplittingForm(ctx, parseExpr("x^2 - z*y^2", ctx), {0, 1});
}

}  // namespace

TEST_CASE("univariate arithmetic and square-free parts") {
  auto [q, r] = udivmod(up({-1, 0, 0, 1}), up({-1, 1}));
  CHECK(q == up({1, 1, 1}));
  CHECK(r.empty());
  CHECK(ugcd(up({-1, 0, 1}), up({1, 2, 1})) == up({1, 1}));
  auto sf = squarefreeDecomposition(umul(umul(up({-1, 1}), up({-1, 1})), up({2, 0, 1})));
  REQUIRE(sf.size() == 2);
  CHECK(sf[0] == std::pair<UPoly, unsigned>{up({2, 0, 1}), 1});
  CHECK(sf[1] == std::pair<UPoly, unsigned>{up({-1, 1}), 2});
  CHECK(distinctRootCount(up({0, 0, 1})) == 1);
}

TEST_CASE("factorization over Q") {
  auto f1 = factorUnivariate(up({-4, 0, 1}));
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].first == up({-2, 1}));
  CHECK(f1[1].first == up({2, 1}));

  auto f2 = factorUnivariate(up({-2, 0, 1}));
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].first == up({-2, 0, 1}));

  auto f3 = factorUnivariate(up({-1, 0, 0, 1}));
  REQUIRE(f3.size() == 2);
  CHECK(f3[0].first == up({-1, 1}));
  CHECK(f3[1].first == up({1, 1, 1}));

  // (x^2 - 2)(x^2 + x + 1)(2x - 1)^2 with a rational root and non-monic input.
  UPoly big = umul(umul(up({-2, 0, 1}), up({1, 1, 1})), umul(up({-1, 2}), up({-1, 2})));
  auto f4 = factorUnivariate(big);
  REQUIRE(f4.size() == 3);
  CHECK(f4[0].first == UPoly{Rational(-1, 2), 1});
  CHECK(f4[0].second == 2);

  // x^4 + 1 is irreducible although it factors modulo every prime.
  CHECK(factorUnivariate(up({1, 0, 0, 0, 1})).size() == 1);
  // x^4 - 10x^2 + 1 = minimal polynomial of sqrt2 + sqrt3.
  CHECK(factorUnivariate(up({1, 0, -10, 0, 1})).size() == 1);
  CHECK_THROWS_AS(factorUnivariate(UPoly(10, Rational(1))), UnsupportedError);
}

TEST_CASE("random products factor back") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    UPoly product{1};
    unsigned expected = 0;
    while (degree(product) < 5) {
      UPoly factor = rng() % 2 ? up({static_cast<int>(rng() % 9) - 4, 1})
                               : up({static_cast<int>(rng() % 5) + 1, static_cast<int>(rng() % 3), 1});
      product = umul(product, factor);
      ++expected;
    }
    auto factors = factorUnivariate(product);
    UPoly back{1};
    for (const auto& [f, m] : factors) {
      CHECK(f.back() == 1);
      if (degree(f) == 2) {
        // An irreducible quadratic has a non-square discriminant.
        Rational disc = f[1] * f[1] - 4 * f[0];
        Integer nd = disc.get_num() * disc.get_den();
        CHECK_FALSE((nd >= 0 && mpz_perfect_square_p(nd.get_mpz_t())));
      }
      for (unsigned i = 0; i < m; ++i) back = umul(back, f);
    }
    CHECK(back == umonic(product));
  }
}

TEST_CASE("monicization") {
  VarContext ctx({"x", "y"}, {VarKind::Free, VarKind::Free});
  auto xy = makeSplittingForm(ctx, parseExpr("x*y", ctx), {0, 1});
  auto m = monicize(xy);
  Monomial lead{2, 0};
  CHECK(m.form.form.coefficient(lead) == 1);
  REQUIRE(m.change.size() == 1);
  CHECK(m.change[0].var == 1);

  auto pinch = monicize(pinchForm());
  CHECK(pinch.change.empty());
  CHECK(pinch.form.form == pinchForm().form);

  auto ySquared = monicize(makeSplittingForm(ctx, parseExpr("y^2", ctx), {0, 1}));
  CHECK(ySquared.form.form.coefficient(lead) == 1);

  // A divisorial variable is never shifted, so the free one leads.
  VarContext dctx({"u", "x"}, {VarKind::Divisorial, VarKind::Free});
  auto d = monicize(makeSplittingForm(dctx, parseExpr("u*x + x^2", dctx), {0, 1}));
  CHECK(d.form.vars[0] == 1);
  CHECK(d.change.empty());
}

TEST_CASE("specializations") {
  auto ctx = pinchContext();
  CHECK(specialization(pinchForm(), 1) == parseExpr("x^2 - z", ctx));
  VarContext plain({"x", "y"}, {VarKind::Free, VarKind::Free});
  auto split = makeSplittingForm(plain, parseExpr("x^2 - y^2", plain), {0, 1});
  CHECK(specialization(split, 1) == parseExpr("x^2 - 1", plain));
  auto power = makeSplittingForm(plain, parseExpr("x^3", plain), {0, 1});
  CHECK(specialization(power, 1) == parseExpr("x^3", plain));
}

TEST_CASE("splitting field degrees") {
  auto pinch = pinchForm();
  CHECK(splittingFieldDegree(pinch, {{2, 2}}).degree == 2);
  CHECK(splittingFieldDegree(pinch, {{2, 4}}).degree == 1);
  auto generic = splittingFieldDegree(pinch);
  CHECK(generic.degree == 2);
  CHECK(generic.cyclic);
  auto cp3 = splittingFieldDegree(cyclicForm(3));
  CHECK(cp3.degree == 3);
  CHECK(cp3.shape == "cyclic cp(3)");

  // (x^2 - 2y^2)(x^2 - 3y^2) has splitting field Q(sqrt2, sqrt3).
  VarContext plain({"x", "y"}, {VarKind::Free, VarKind::Free});
  auto biquadratic = makeSplittingForm(plain, parseExpr("(x^2 - 2*y^2)*(x^2 - 3*y^2)", plain), {0, 1});
  auto info = splittingFieldDegree(biquadratic);
  CHECK(info.degree == 4);
  CHECK_FALSE(info.cyclic);
  // (x^2 - 2y^2)(x^2 - 8y^2): both square classes are 2.
  auto shared = makeSplittingForm(plain, parseExpr("(x^2 - 2*y^2)*(x^2 - 8*y^2)", plain), {0, 1});
  CHECK(splittingFieldDegree(shared).degree == 2);
  auto cubic = makeSplittingForm(plain, parseExpr("x^3 - 2*y^3", plain), {0, 1});
  CHECK_THROWS_AS(splittingFieldDegree(cubic), UnsupportedError);
}

TEST_CASE("ramification loci") {
  auto pinch = pinchForm();
  CHECK(ramificationLocus(pinch) == parseExpr("z", pinchContext()));
  VarContext plain({"x", "y"}, {VarKind::Free, VarKind::Free});
  auto split = makeSplittingForm(plain, parseExpr("x^2 - y^2", plain), {0, 1});
  CHECK(ramificationLocus(split).isConstant());
  CHECK_FALSE(ramificationLocus(split).isZero());
  auto cp3 = cyclicForm(3);
  CHECK(ramificationLocus(cp3) == parseExpr("z", cp3.ctx));
  auto d = discriminant(parseExpr("x^2 - z", pinchContext()), 0);
  // Res(p, p') itself; the discriminant proper differs by the sign (-1)^{n(n-1)/2}.
  CHECK(d == parseExpr("-4*z", pinchContext()));
}

TEST_CASE("cyclic forms") {
  auto cp1 = cyclicForm(1);
  CHECK(cp1.form == parseExpr("x0", cp1.ctx));
  auto cp2 = cyclicForm(2);
  CHECK(cp2.form == parseExpr("x0^2 - z*x1^2", cp2.ctx));
  auto cp3 = cyclicForm(3);
  CHECK(cp3.form == parseExpr("x0^3 + z*x1^3 + z^2*x2^3 - 3*z*x0*x1*x2", cp3.ctx));
  CHECK(cp3.form == testing::cyclicThreeOracle());
  CHECK(recognizeCyclic(cp3) == 3u);
  for (unsigned n = 4; n <= 6; ++n) {
    auto cp = cyclicForm(n);
    Monomial lead(n + 1, 0);
    lead[0] = n;
    CHECK(cp.form.coefficient(lead) == 1);
    CHECK(recognizeCyclic(cp) == n);
  }
  CHECK_THROWS_AS(cyclicForm(7), UnsupportedError);

  // cp(2) is the pinch point form after renaming.
  auto pinch = pinchForm();
  CHECK(cp2.form.composed({Poly::variable(3, 0), Poly::variable(3, 1), Poly::variable(3, 2)}) == pinch.form);
}

TEST_CASE("independent factors agree with maximal admissibility") {
  std::mt19937 rng(37);
  for (unsigned n : {2u, 3u}) {
    auto cp = cyclicForm(n);
    CHECK_FALSE(independentFactorsAt(cp, {{n, 0}}));
    for (int trial = 0; trial < 20; ++trial) {
      Rational z = makeRational(static_cast<int>(rng() % 41) - 20, 1 + rng() % 5);
      if (z == 0) z = 1;
      bool independent = independentFactorsAt(cp, {{n, z}});
      // The other side: at this z the invariant is (n, ..., n) exactly when
      // (x0, ..., x_{n-1})^n is the maximal admissible center.
      Poly h = cp.form.evaluated(n, z);
      auto result = canonicalInvariant({h}, cp.ctx);
      bool maximal = result.inv.entries().size() == n && result.inv.infinite();
      for (const auto& e : result.inv.entries()) maximal = maximal && e.value == n;
      CHECK(independent == maximal);
      CHECK(independent);
    }
  }
  CHECK(independentFactorsAt(cyclicForm(3), {{3, 8}}));
}

TEST_CASE("generic combinations generate the same field") {
  auto m = monicize(pinchForm());
  for (int beta : {1, 2, 3, -5}) {
    Poly g = genericCombination(m.form, {beta}).evaluated(2, 2);
    auto factors = factorUnivariate(toUPoly(g, 0));
    REQUIRE(factors.size() == 1);
    Rational disc = factors[0].first[1] * factors[0].first[1] - 4 * factors[0].first[0];
    CHECK(squarefreePart(disc.get_num() * disc.get_den()) == 2);
  }
}
