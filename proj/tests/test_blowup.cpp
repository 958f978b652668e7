#include <random>

#include "doctest_ncres.hpp"
#include "ncres/blowup.hpp"
#include "ncres/errors.hpp"
#include "ncres/parse.hpp"
#include "support.hpp"

using namespace ncres;

namespace {

VarContext freeVars(std::vector<std::string> names) {
  std::vector<VarKind> kinds(names.size(), VarKind::Free);
  return VarContext(std::move(names), std::move(kinds));
}

}  // namespace

TEST_CASE("pinch point blow-up") {
  auto ctx = freeVars({"x", "y", "z"});
  Chart chart = initialChart(ctx, {parseExpr("x^2 - y^2*z", ctx)});
  auto J = WeightedCenter::fromPairs({{0, 2}, {1, 3}, {2, 3}}, ctx);
  auto weights = blowupWeights(J);
  CHECK(weights.w == 6);
  CHECK(weights.perVariable == std::vector<Integer>{3, 2, 2});

  Chart total = cobordantBlowup(chart, J);
  REQUIRE(total.ctx.size() == 4);
  CHECK(total.ctx.name(3) == "s1");
  CHECK(total.ctx.isDivisorial(3));
  CHECK(total.ideal[0] == parseExpr("s1^6*x^2 - s1^6*y^2*z", total.ctx));

  Chart controlled = controlledTransform(chart, J);
  CHECK(controlled.ideal[0] == parseExpr("x^2 - y^2*z", controlled.ctx));
  REQUIRE(controlled.exceptional.size() == 1);
  CHECK(controlled.exceptional[0].removed == std::vector<unsigned>{6});
  CHECK(controlled.groupOrder == 1);
  CHECK(controlled.vertex == J.mask());

  Chart strict = strictTransform(chart, J);
  CHECK(strict.ideal[0] == parseExpr("x^2 - y^2*z", strict.ctx));
}

TEST_CASE("smooth and fractional centers") {
  auto ctx = freeVars({"x", "y"});
  Chart chart = initialChart(ctx, {parseExpr("x^2 + y^2", ctx)});
  auto smooth = WeightedCenter::fromPairs({{0, 1}, {1, 1}}, ctx);
  auto w = blowupWeights(smooth);
  CHECK(w.w == 1);
  CHECK(w.perVariable == std::vector<Integer>{1, 1});
  CHECK(cobordantBlowup(chart, smooth).ideal[0] == parseExpr("s1^2*x^2 + s1^2*y^2", cobordantBlowup(chart, smooth).ctx));

  auto squares = WeightedCenter::fromPairs({{0, 2}, {1, 2}}, ctx);
  Chart controlled = controlledTransform(chart, squares);
  CHECK(controlled.ideal[0] == parseExpr("x^2 + y^2", controlled.ctx));

  Chart line = initialChart(ctx, {parseExpr("x", ctx)});
  auto xCenter = WeightedCenter::fromPairs({{0, 1}}, ctx);
  CHECK(controlledTransform(line, xCenter).ideal[0] == parseExpr("x", controlledTransform(line, xCenter).ctx));

  auto half = WeightedCenter::fromPairs({{0, Rational(1, 2)}}, ctx);
  auto hw = blowupWeights(half);
  CHECK(hw.w == 1);
  CHECK(hw.perVariable == std::vector<Integer>{2});
  Chart xs = initialChart(ctx, {parseExpr("x*y", ctx)});
  Chart blown = cobordantBlowup(xs, half);
  CHECK(blown.ideal[0] == parseExpr("s1^2*x*y", blown.ctx));
  CHECK(blown.groupOrder == 2);
}

TEST_CASE("strict transform and non-admissible centers") {
  auto ctx = freeVars({"x", "y"});
  Chart chart = initialChart(ctx, {parseExpr("x*y", ctx)});
  auto J = WeightedCenter::fromPairs({{0, 1}}, ctx);
  Chart strict = strictTransform(chart, J);
  CHECK(strict.ideal[0] == parseExpr("x*y", strict.ctx));
  CHECK(strict.exceptional[0].removed == std::vector<unsigned>{1});

  Chart free = initialChart(ctx, {parseExpr("y", ctx)});
  auto yAxis = WeightedCenter::fromPairs({{0, 1}}, ctx);
  CHECK_THROWS_AS(controlledTransform(free, yAxis), NotAdmissibleError);
}

TEST_CASE("center disjointness and the vertex") {
  auto ctx = freeVars({"x", "y", "z"});
  auto J = WeightedCenter::fromPairs({{0, 2}, {1, 3}, {2, 3}}, ctx);
  CHECK(centerDisjointFromPoints(J, {{0, 0, 1}}));
  CHECK_FALSE(centerDisjointFromPoints(J, {{0, 0, 0}}));
  auto x = WeightedCenter::fromPairs({{0, 1}}, freeVars({"x", "y"}));
  CHECK_FALSE(centerDisjointFromPoints(x, {{0, 5}}));

  Chart blown = controlledTransform(initialChart(ctx, {parseExpr("x^2 - y^2*z", ctx)}), J);
  CHECK(onVertex(blown, {0, 0, 0, 0}));
  CHECK(onVertex(blown, {0, 0, 0, 1}));
  CHECK_FALSE(onVertex(blown, {1, 0, 0, 0}));
  CHECK_THROWS_AS(requireOffVertex(blown, {0, 0, 0, 0}), VertexPointError);
  CHECK(liftPoint({0, 0, 1}) == std::vector<Rational>{0, 0, 1, 1});
}

TEST_CASE("transform algebra on random admissible pairs") {
  std::mt19937 rng(29);
  auto ctx = freeVars({"x", "y", "z"});
  int done = 0;
  for (int trial = 0; trial < 400 && done < 100; ++trial) {
    std::vector<std::pair<std::size_t, Rational>> pairs;
    for (std::size_t v = 0; v < 3; ++v) {
      if (rng() % 3 != 0) pairs.emplace_back(v, makeRational(1 + rng() % 4, 1 + rng() % 2));
    }
    if (pairs.empty()) continue;
    auto J = WeightedCenter::fromPairs(pairs, ctx);
    // Random generators with every term of weighted order >= 1.
    auto admissiblePart = [&](const Poly& p) {
      Poly out(3);
      for (const auto& [m, c] : p.terms()) {
        if (*weightedOrder(Poly::monomial(m, 1), J.weights(3)) >= 1) out.addTerm(m, c);
      }
      return out;
    };
    Poly f = admissiblePart(testing::randomPoly(rng, 3, 7, 6));
    Poly g = admissiblePart(testing::randomPoly(rng, 3, 7, 6));
    if (f.isZero() || g.isZero()) continue;
    ++done;
    Chart chart = initialChart(ctx, {f, g});
    auto weights = blowupWeights(J);
    Chart total = cobordantBlowup(chart, J);
    for (const auto& h : total.ideal) {
      Poly copy = h;
      CHECK(Integer(stripPower(copy, 3)) >= weights.w);
    }
    CHECK_NOTHROW(controlledTransform(chart, J));
    {
      Chart product = strictTransform(initialChart(ctx, {f * g}), J);
      Chart factors = strictTransform(chart, J);
      CHECK(product.ideal[0] == factors.ideal[0] * factors.ideal[1]);
    }
  }
  CHECK(done == 100);
}
