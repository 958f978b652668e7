#include "ncres/series.hpp"

#include "ncres/errors.hpp"

namespace ncres {

Poly reduceRelation(const Poly& p, const QuadraticRelation& rel) {
  bool needed = false;
  for (const auto& [m, c] : p.terms()) {
    if (m[rel.var] >= 2) {
      needed = true;
      break;
    }
  }
  if (!needed) return p;
  Poly out(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    Monomial r = m;
    Rational factor = 1;
    while (r[rel.var] >= 2) {
      r[rel.var] -= 2;
      factor *= rel.square;
    }
    out.addTerm(r, c * factor);
  }
  return out;
}

TruncatedSeries::TruncatedSeries(Poly body, VarMask seriesVars, unsigned truncation,
                                 std::optional<QuadraticRelation> relation)
    : mask_(seriesVars), n_(truncation), relation_(std::move(relation)) {
  if (relation_ && contains(mask_, relation_->var)) throw InternalError("relation variable must be a coefficient");
  body_ = body.truncated(mask_, n_);
  if (relation_) body_ = reduceRelation(body_, *relation_);
}

TruncatedSeries TruncatedSeries::with(Poly body) const { return TruncatedSeries(std::move(body), mask_, n_, relation_); }

void TruncatedSeries::checkCompatible(const TruncatedSeries& other) const {
  if (mask_ != other.mask_ || n_ != other.n_ || relation_ != other.relation_ || nvars() != other.nvars()) {
    throw InternalError("incompatible truncated series");
  }
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& other) const {
  checkCompatible(other);
  return with(body_ + other.body_);
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& other) const {
  checkCompatible(other);
  return with(body_ - other.body_);
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& other) const {
  checkCompatible(other);
  return with(multiplyTruncated(body_, other.body_, mask_, n_));
}

TruncatedSeries TruncatedSeries::pow(unsigned e) const {
  TruncatedSeries result = with(Poly::constant(nvars(), 1));
  for (unsigned k = 0; k < e; ++k) result = result * *this;
  return result;
}

TruncatedSeries TruncatedSeries::scaled(const Rational& c) const { return with(body_.scaled(c)); }

TruncatedSeries TruncatedSeries::substituted(std::size_t var, const TruncatedSeries& g) const {
  checkCompatible(g);
  Poly out = body_.substitutedTruncated(var, g.body_, mask_, n_);
  return with(std::move(out));
}

bool TruncatedSeries::operator==(const TruncatedSeries& other) const {
  return mask_ == other.mask_ && n_ == other.n_ && relation_ == other.relation_ && body_ == other.body_;
}

}  // namespace ncres
