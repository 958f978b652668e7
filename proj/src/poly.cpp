#include "ncres/poly.hpp"

#include <algorithm>
#include <sstream>

#include "ncres/errors.hpp"

namespace ncres {

unsigned totalDegree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

unsigned degreeIn(const Monomial& m, VarMask mask) {
  unsigned d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (contains(mask, i)) d += m[i];
  }
  return d;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = totalDegree(a);
  unsigned db = totalDegree(b);
  if (da != db) return da < db;
  // Same degree: the monomial with the larger leading exponent is larger.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  p.addTerm(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t var, const Rational& c) {
  Monomial m(nvars, 0);
  m.at(var) = 1;
  Poly p(nvars);
  p.addTerm(m, c);
  return p;
}

Poly Poly::monomial(Monomial m, const Rational& c) {
  Poly p(m.size());
  p.addTerm(m, c);
  return p;
}

bool Poly::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && totalDegree(terms_.begin()->first) == 0);
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constantTerm() const { return coefficient(Monomial(nvars_, 0)); }

const Poly::Term& Poly::leadingTerm() const {
  if (terms_.empty()) throw InternalError("leadingTerm of zero polynomial");
  return *terms_.rbegin();
}

void Poly::addTerm(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  if (m.size() != nvars_) throw InternalError("monomial arity mismatch");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  if (nvars_ != other.nvars_) throw InternalError("polynomial arity mismatch");
  for (const auto& [m, c] : other.terms_) addTerm(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (nvars_ != other.nvars_) throw InternalError("polynomial arity mismatch");
  for (const auto& [m, c] : other.terms_) addTerm(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) throw InternalError("polynomial arity mismatch");
  Poly out(a.nvars_);
  Monomial m(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.addTerm(m, ca * cb);
    }
  }
  return out;
}

Poly multiplyTruncated(const Poly& a, const Poly& b, VarMask mask, unsigned maxDeg) {
  if (a.nvars() != b.nvars()) throw InternalError("polynomial arity mismatch");
  Poly out(a.nvars());
  // b's terms by ascending degree, so the inner loop can stop at the bound
  std::vector<std::pair<unsigned, const Poly::TermMap::value_type*>> sorted;
  sorted.reserve(b.size());
  for (const auto& t : b.terms()) {
    unsigned d = degreeIn(t.first, mask);
    if (d <= maxDeg) sorted.emplace_back(d, &t);
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Monomial m(a.nvars());
  Rational prod;
  for (const auto& [ma, ca] : a.terms()) {
    unsigned da = degreeIn(ma, mask);
    if (da > maxDeg) continue;
    for (const auto& [db, term] : sorted) {
      if (da + db > maxDeg) break;
      const Monomial& mb = term->first;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      prod = ca * term->second;
      out.addTerm(m, prod);
    }
  }
  return out;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::scaled(const Rational& c) const {
  Poly out(nvars_);
  if (c == 0) return out;
  for (const auto& [m, coeff] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, coeff * c);
  return out;
}

Poly Poly::shifted(const Monomial& shift) const {
  Poly out(nvars_);
  Monomial m(nvars_);
  for (const auto& [mm, c] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) m[i] = mm[i] + shift[i];
    out.terms_.emplace(m, c);
  }
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result = Poly::constant(nvars_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

unsigned Poly::degree(VarMask mask) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, degreeIn(m, mask));
  return d;
}

std::optional<unsigned> Poly::order(VarMask mask) const {
  std::optional<unsigned> best;
  for (const auto& [m, c] : terms_) {
    unsigned d = degreeIn(m, mask);
    if (!best || d < *best) best = d;
  }
  return best;
}

Poly Poly::homogeneousPart(VarMask mask, unsigned deg) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (degreeIn(m, mask) == deg) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

Poly Poly::truncated(VarMask mask, unsigned maxDeg) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (degreeIn(m, mask) <= maxDeg) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

Poly Poly::freeOf(VarMask mask) const { return homogeneousPart(mask, 0); }

Poly Poly::derivative(std::size_t var) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    out.addTerm(d, c * m[var]);
  }
  return out;
}

Poly Poly::evaluated(std::size_t var, const Rational& value) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    Monomial d = m;
    Rational factor = 1;
    for (unsigned k = 0; k < m[var]; ++k) factor *= value;
    d[var] = 0;
    out.addTerm(d, c * factor);
  }
  return out;
}

namespace {

// f = sum_k f_k * x_var^k with f_k free of x_var.
std::map<unsigned, Poly> splitByPower(const Poly& f, std::size_t var) {
  std::map<unsigned, Poly> parts;
  for (const auto& [m, c] : f.terms()) {
    Monomial d = m;
    unsigned k = d[var];
    d[var] = 0;
    auto [it, inserted] = parts.try_emplace(k, Poly(f.nvars()));
    it->second.addTerm(d, c);
  }
  return parts;
}

}  // namespace

Poly Poly::substituted(std::size_t var, const Poly& g) const {
  if (g.nvars() != nvars_) throw InternalError("substitution arity mismatch");
  auto parts = splitByPower(*this, var);
  Poly out(nvars_);
  Poly power = Poly::constant(nvars_, 1);
  unsigned current = 0;
  for (const auto& [k, part] : parts) {
    while (current < k) {
      power = power * g;
      ++current;
    }
    out += part * power;
  }
  return out;
}

Poly Poly::substitutedTruncated(std::size_t var, const Poly& g, VarMask mask, unsigned maxDeg) const {
  if (g.nvars() != nvars_) throw InternalError("substitution arity mismatch");
  auto parts = splitByPower(*this, var);
  Poly out(nvars_);
  Poly power = Poly::constant(nvars_, 1);
  unsigned current = 0;
  for (const auto& [k, part] : parts) {
    while (current < k) {
      power = multiplyTruncated(power, g, mask, maxDeg);
      ++current;
    }
    out += multiplyTruncated(part, power, mask, maxDeg);
  }
  return out;
}

Poly Poly::composed(const std::vector<Poly>& images) const {
  if (images.size() != nvars_) throw InternalError("composition arity mismatch");
  std::size_t target = nvars_ == 0 ? 0 : images.front().nvars();
  // Cache powers per variable.
  std::vector<std::vector<Poly>> powers(nvars_);
  auto powerOf = [&](std::size_t v, unsigned e) -> const Poly& {
    auto& list = powers[v];
    if (list.empty()) list.push_back(Poly::constant(target, 1));
    while (list.size() <= e) list.push_back(list.back() * images[v]);
    return list[e];
  };
  Poly out(target);
  for (const auto& [m, c] : terms_) {
    Poly term = Poly::constant(target, c);
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (m[v] > 0) term = term * powerOf(v, m[v]);
    }
    out += term;
  }
  return out;
}

Poly Poly::extended(std::size_t nvars) const {
  if (nvars < nvars_) throw InternalError("cannot shrink polynomial ring");
  Poly out(nvars);
  for (const auto& [m, c] : terms_) {
    Monomial d = m;
    d.resize(nvars, 0);
    out.terms_.emplace(std::move(d), c);
  }
  return out;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(1 / leadingTerm().second);
}

VarMask Poly::support() const {
  VarMask mask = 0;
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] > 0) mask |= bit(i);
    }
  }
  return mask;
}

std::optional<Poly> Poly::divideExact(const Poly& d) const {
  if (d.isZero()) throw Error("division by zero polynomial");
  Poly remainder = *this;
  Poly quotient(nvars_);
  const auto& [lm, lc] = d.leadingTerm();
  while (!remainder.isZero()) {
    const auto& [rm, rc] = remainder.leadingTerm();
    if (!divides(lm, rm)) return std::nullopt;
    Monomial q(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) q[i] = rm[i] - lm[i];
    Rational qc = rc / lc;
    quotient.addTerm(q, qc);
    Poly step = d.shifted(q).scaled(qc);
    remainder -= step;
  }
  return quotient;
}

std::string toString(const Monomial& m, const VarContext& ctx) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ctx.name(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string toString(const Poly& p, const VarContext& ctx) {
  if (p.isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    bool constantMonomial = totalDegree(m) == 0;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (constantMonomial) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << toString(m, ctx);
    }
  }
  return os.str();
}

}  // namespace ncres
