#include "ncres/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "ncres/errors.hpp"

namespace ncres {

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly uadd(const UPoly& a, const UPoly& b) {
  UPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

UPoly usub(const UPoly& a, const UPoly& b) {
  UPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

std::pair<UPoly, UPoly> udivmod(const UPoly& a, const UPoly& b) {
  if (b.empty()) throw InternalError("division by the zero polynomial");
  UPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  UPoly q(r.size() - b.size() + 1, Rational(0));
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    Rational c = r.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    r.pop_back();  // the leading term cancels exactly
    trim(r);
  }
  trim(q);
  return {q, r};
}

UPoly umonic(const UPoly& p) {
  if (p.empty()) return p;
  UPoly out = p;
  Rational lead = p.back();
  for (auto& c : out) c /= lead;
  return out;
}

UPoly uderivative(const UPoly& p) {
  UPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<unsigned long>(i));
  trim(out);
  return out;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = udivmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return umonic(a);
}

Rational ueval(const UPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<std::pair<UPoly, unsigned>> squarefreeDecomposition(const UPoly& p) {
  if (p.empty()) throw InternalError("square-free decomposition of zero");
  std::vector<std::pair<UPoly, unsigned>> out;
  UPoly f = umonic(p);
  if (degree(f) == 0) return out;
  UPoly d = uderivative(f);
  UPoly a = ugcd(f, d);
  UPoly b = udivmod(f, a).first;
  UPoly c = udivmod(d, a).first;
  UPoly e = usub(c, uderivative(b));
  for (unsigned i = 1; degree(b) > 0; ++i) {
    UPoly g = ugcd(b, e);
    if (degree(g) > 0) out.emplace_back(g, i);
    b = udivmod(b, g).first;
    c = udivmod(e, g).first;
    e = usub(c, uderivative(b));
  }
  return out;
}

unsigned distinctRootCount(const UPoly& p) {
  unsigned n = 0;
  for (const auto& [part, mult] : squarefreeDecomposition(p)) n += static_cast<unsigned>(degree(part));
  return n;
}

namespace {

using Complex = std::complex<long double>;
using IPoly = std::vector<Integer>;

long double toLongDouble(const Integer& z) { return std::strtold(z.get_str().c_str(), nullptr); }

// Aberth-Ehrlich iteration on a monic integer polynomial with simple roots.
std::vector<Complex> numericRoots(const IPoly& q) {
  const std::size_t n = q.size() - 1;
  std::vector<long double> c(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) c[i] = toLongDouble(q[i]);
  // Fujiwara's bound on the root moduli.
  long double radius = 1e-3L;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, 2 * std::pow(std::fabs(c[i]), 1.0L / (n - i)));
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double angle = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[k] = std::polar(radius, angle);
  }
  auto eval = [&](Complex x, Complex& value, Complex& deriv) {
    value = c[n];
    deriv = 0;
    for (std::size_t i = n; i-- > 0;) {
      deriv = deriv * x + value;
      value = value * x + c[i];
    }
  };
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      Complex value, deriv;
      eval(z[k], value, deriv);
      if (value == Complex(0)) continue;
      Complex ratio = value / deriv;
      Complex sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      }
      Complex step = ratio / (1.0L - ratio * sum);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / (1 + std::abs(z[k])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

std::optional<IPoly> divideInteger(const IPoly& a, const IPoly& b) {
  // b monic
  IPoly r = a;
  if (r.size() < b.size()) return std::nullopt;
  IPoly quotient(r.size() - b.size() + 1, 0);
  for (std::size_t shift = r.size() - b.size() + 1; shift-- > 0;) {
    Integer coeff = r[shift + b.size() - 1];
    quotient[shift] = coeff;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= coeff * b[i];
  }
  for (const auto& x : r) {
    if (x != 0) return std::nullopt;
  }
  return quotient;
}

// Splits a monic square-free integer polynomial into monic irreducibles.
std::vector<IPoly> factorMonicInteger(IPoly q) {
  std::vector<IPoly> factors;
  if (q.size() <= 2) {
    factors.push_back(q);
    return factors;
  }
  std::vector<Complex> roots = numericRoots(q);
  for (std::size_t size = 1; 2 * size <= roots.size();) {
    bool found = false;
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      // Product of (y - r) over the chosen roots.
      std::vector<Complex> prod{Complex(1)};
      for (auto idx : pick) {
        std::vector<Complex> next(prod.size() + 1, Complex(0));
        for (std::size_t i = 0; i < prod.size(); ++i) {
          next[i + 1] += prod[i];
          next[i] -= prod[i] * roots[idx];
        }
        prod = std::move(next);
      }
      bool plausible = true;
      IPoly candidate(prod.size());
      for (std::size_t i = 0; i < prod.size() && plausible; ++i) {
        long double re = prod[i].real();
        long double scale = 1 + std::fabs(re);
        if (std::fabs(prod[i].imag()) > 1e-6L * scale) plausible = false;
        long double rounded = std::nearbyint(re);
        if (std::fabs(re - rounded) > 1e-6L * scale) plausible = false;
        if (plausible) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.0Lf", rounded);
          candidate[i] = Integer(buf);
        }
      }
      if (plausible) {
        if (auto quotient = divideInteger(q, candidate)) {
          factors.push_back(candidate);
          q = std::move(*quotient);
          std::vector<Complex> rest;
          for (std::size_t i = 0; i < roots.size(); ++i) {
            if (std::find(pick.begin(), pick.end(), i) == pick.end()) rest.push_back(roots[i]);
          }
          roots = std::move(rest);
          found = true;
          break;
        }
      }
      // Next combination.
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == roots.size() - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!found) ++size;
  }
  factors.push_back(q);
  return factors;
}

bool lessUPoly(const UPoly& a, const UPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

std::vector<std::pair<UPoly, unsigned>> factorUnivariate(const UPoly& p, unsigned degreeBound) {
  if (p.empty()) throw Error("cannot factor the zero polynomial");
  if (degree(p) > static_cast<int>(degreeBound)) {
    throw UnsupportedError("degree " + std::to_string(degree(p)) + " exceeds the factorization bound " +
                           std::to_string(degreeBound));
  }
  std::vector<std::pair<UPoly, unsigned>> out;
  for (const auto& [part, mult] : squarefreeDecomposition(p)) {
    // y = L x turns the monic rational part into a monic integer polynomial.
    const std::size_t d = part.size() - 1;
    Integer scale = 1;
    for (const auto& c : part) scale = lcm(scale, c.get_den());
    IPoly q(part.size());
    for (std::size_t i = 0; i <= d; ++i) {
      Integer power;
      mpz_pow_ui(power.get_mpz_t(), scale.get_mpz_t(), d - i);
      Rational v = part[i] * power;
      if (!isInteger(v)) throw InternalError("integral rescaling failed");
      q[i] = v.get_num();
    }
    for (const auto& f : factorMonicInteger(q)) {
      const std::size_t k = f.size() - 1;
      UPoly back(f.size());
      for (std::size_t i = 0; i <= k; ++i) {
        Integer power;
        mpz_pow_ui(power.get_mpz_t(), scale.get_mpz_t(), k - i);
        back[i] = makeRational(f[i], power);
      }
      out.emplace_back(back, mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return lessUPoly(a.first, b.first);
    return a.second < b.second;
  });
  // Soundness: the factors multiply back to the monic input.
  UPoly check{1};
  for (const auto& [f, m] : out) {
    for (unsigned i = 0; i < m; ++i) check = umul(check, f);
  }
  if (check != umonic(p)) throw InternalError("factorization does not multiply back");
  return out;
}

UPoly toUPoly(const Poly& p, std::size_t var) {
  UPoly out;
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != var && m[i] != 0) throw InternalError("polynomial is not univariate");
    }
    if (out.size() <= m[var]) out.resize(m[var] + 1, Rational(0));
    out[m[var]] += c;
  }
  trim(out);
  return out;
}

Poly fromUPoly(const UPoly& p, std::size_t nvars, std::size_t var) {
  Poly out(nvars);
  for (std::size_t i = 0; i < p.size(); ++i) {
    Monomial m(nvars, 0);
    m[var] = static_cast<std::uint32_t>(i);
    out.addTerm(m, p[i]);
  }
  return out;
}

std::string toString(const UPoly& p, const std::string& var) {
  VarContext ctx({var}, {VarKind::Free});
  return toString(fromUPoly(p, 1, 0), ctx);
}

}  // namespace ncres
