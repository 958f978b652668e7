#pragma once

// Hand-rolled generators shared by the property tests. Every caller seeds its
// own std::mt19937 so runs are reproducible.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ncres/errors.hpp"
#include "ncres/invariant.hpp"
#include "ncres/parse.hpp"
#include "ncres/poly.hpp"

namespace ncres::testing {

/// Up to `terms` random terms of total degree <= maxDeg with small integer
/// coefficients in [-3, 3].
inline Poly randomPoly(std::mt19937& rng, std::size_t nvars, unsigned maxDeg, unsigned terms) {
  Poly p(nvars);
  for (unsigned t = 0; t < terms; ++t) {
    Monomial m(nvars, 0);
    unsigned budget = rng() % (maxDeg + 1);
    for (unsigned k = 0; k < budget; ++k) m[rng() % nvars] += 1;
    int c = static_cast<int>(rng() % 7) - 3;
    p.addTerm(m, c);
  }
  return p;
}

/// Random monomial with each exponent in [0, maxExp].
inline Monomial randomMonomial(std::mt19937& rng, std::size_t nvars, unsigned maxExp) {
  Monomial m(nvars, 0);
  for (auto& e : m) e = rng() % (maxExp + 1);
  return m;
}

/// An ideal in the normal form (u_1, ..., u_r, m) where m is a monomial of
/// degree d in the remaining k - r variables, t of them free and the rest
/// divisorial, together with the invariant the closed formula predicts.
struct NCFormCase {
  VarContext ctx;
  std::vector<Poly> ideal;
  InvariantVector expected;
  std::string describe;
};

inline NCFormCase randomNCForm(std::mt19937& rng, unsigned maxR = 2, unsigned maxD = 6) {
  unsigned r = rng() % (maxR + 1);
  unsigned tail = 1 + rng() % 3;
  unsigned d = tail + rng() % (maxD - tail + 1);
  unsigned t = rng() % (tail + 1);
  std::size_t k = r + tail;

  // Role of each slot, then a random placement into variable positions.
  std::vector<std::size_t> slot(k);
  std::iota(slot.begin(), slot.end(), 0);
  std::shuffle(slot.begin(), slot.end(), rng);
  std::vector<std::string> names(k);
  std::vector<VarKind> kinds(k, VarKind::Free);
  for (std::size_t i = 0; i < k; ++i) {
    names[slot[i]] = "u" + std::to_string(i + 1);
    if (i >= r + t) kinds[slot[i]] = VarKind::Divisorial;
  }
  NCFormCase out;
  out.ctx = VarContext(names, kinds);
  for (std::size_t i = 0; i < r; ++i) out.ideal.push_back(Poly::variable(k, slot[i]));

  Monomial m(k, 0);
  for (std::size_t i = r; i < k; ++i) m[slot[i]] = 1;
  for (unsigned extra = tail; extra < d; ++extra) m[slot[r + rng() % tail]] += 1;
  out.ideal.push_back(Poly::monomial(m, 1 + static_cast<int>(rng() % 3)));

  for (std::size_t i = 0; i < r; ++i) out.expected.push({1, false});
  for (std::size_t i = 0; i < t; ++i) out.expected.push({d, false});
  for (std::size_t i = t; i < tail; ++i) out.expected.push({d, true});
  out.expected.setInfinite(true);
  out.describe = "r=" + std::to_string(r) + " t=" + std::to_string(t) + " k=" + std::to_string(k) +
                 " d=" + std::to_string(d);
  return out;
}

/// Lex comparison of a center's sorted exponents against an invariant.
inline bool exceeds(const std::vector<unsigned>& center, const InvariantVector& inv) {
  const auto& e = inv.entries();
  for (std::size_t i = 0; i < center.size(); ++i) {
    if (i >= e.size()) return !inv.infinite();
    if (Rational(center[i]) != e[i].value) return Rational(center[i]) > e[i].value;
  }
  return false;
}

/// Searches every center (x_v^{e_v}) with integer exponents in [1, bound] on
/// any non-empty subset of the variables for one that is admissible for the
/// monomial ideal and lex-greater than `inv`. Returns the offender if found.
inline std::optional<std::vector<unsigned>> bruteForceBeats(const std::vector<Monomial>& ideal, std::size_t nvars,
                                                            unsigned bound, const InvariantVector& inv) {
  std::vector<unsigned> e(nvars, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < nvars && e[i] == bound) e[i++] = 0;
    if (i == nvars) return std::nullopt;
    ++e[i];
    // sum_v alpha_v / e_v >= 1 for every generator, in integers.
    long long prod = 1;
    for (auto x : e) {
      if (x) prod *= x;
    }
    bool ok = true;
    for (const auto& m : ideal) {
      long long sum = 0;
      for (std::size_t v = 0; v < nvars; ++v) {
        if (e[v]) sum += static_cast<long long>(m[v]) * (prod / e[v]);
      }
      if (sum < prod) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<unsigned> sorted;
    for (auto x : e) {
      if (x) sorted.push_back(x);
    }
    std::sort(sorted.begin(), sorted.end());
    if (exceeds(sorted, inv)) return sorted;
  }
}

// Delta_3 by direct expansion over Q[u, w]/(u^3 - z, w^2 + w + 1): the
// product over the three cube roots u, w u, w^2 u of x0 + x1 r + x2 r^2.
inline Poly cyclicThreeOracle() {
  // Variables: x0 x1 x2 z u w.
  VarContext ctx({"x0", "x1", "x2", "z", "u", "w"}, {VarKind::Free, VarKind::Free, VarKind::Free,
                                                     VarKind::Parameter, VarKind::Parameter, VarKind::Parameter});
  auto reduce = [&](Poly p) {
    for (bool changed = true; changed;) {
      changed = false;
      Poly out(6);
      for (const auto& [m, c] : p.terms()) {
        Monomial q = m;
        if (q[4] >= 3) {
          q[4] -= 3;
          q[3] += 1;  // u^3 = z
          out.addTerm(q, c);
          changed = true;
        } else if (q[5] >= 2) {
          q[5] -= 2;  // w^2 = -w - 1
          Monomial q1 = q;
          q1[5] += 1;
          out.addTerm(q1, -c);
          out.addTerm(q, -c);
          changed = true;
        } else {
          out.addTerm(q, c);
        }
      }
      p = out;
    }
    return p;
  };
  Poly product = Poly::constant(6, 1);
  for (int k = 0; k < 3; ++k) {
    std::string root = k == 0 ? "u" : k == 1 ? "w*u" : "w^2*u";
    Poly factor = parseExpr("x0 + x1*(" + root + ") + x2*(" + root + ")^2", ctx);
    product = reduce(product * reduce(factor));
  }
  // Must be free of u and w; project back to x0 x1 x2 z.
  Poly out(4);
  for (const auto& [m, c] : product.terms()) {
    if (m[4] != 0 || m[5] != 0) throw InternalError("oracle product is not rational");
    out.addTerm({m[0], m[1], m[2], m[3]}, c);
  }
  return out;
}

}  // namespace ncres::testing
