#include "ncres/rational.hpp"

#include <cctype>

namespace ncres {

namespace {

bool isDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> parseRational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto slash = text.find('/');
  std::string_view numText = text.substr(0, slash);
  std::string_view denText = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!isDigits(numText) || !isDigits(denText)) return std::nullopt;
  Integer num{std::string(numText)};
  Integer den{std::string(denText)};
  if (den == 0) return std::nullopt;
  if (negative) num = -num;
  return makeRational(num, den);
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

std::vector<std::pair<Integer, unsigned>> factorInteger(Integer n) {
  std::vector<std::pair<Integer, unsigned>> out;
  if (n < 0) n = -n;
  for (Integer p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Integer squarefreePart(const Integer& n) {
  Integer out = n < 0 ? Integer(-1) : Integer(1);
  for (const auto& [p, e] : factorInteger(n)) {
    if (e % 2 == 1) out *= p;
  }
  return out;
}

std::optional<Rational> exactSqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
    return std::nullopt;
  }
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return makeRational(n, d);
}

}  // namespace ncres
