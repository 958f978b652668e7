#include "ncres/parse.hpp"

#include <cctype>
#include <string>

#include "ncres/errors.hpp"

namespace ncres {

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const VarContext& ctx) : text_(text), ctx_(ctx) {}

  Poly parse() {
    skipSpace();
    if (pos_ >= text_.size()) fail("empty expression");
    Poly p = expression();
    skipSpace();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message + " at column " + std::to_string(pos_ + 1), pos_);
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expression() {
    Poly acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Poly divisor = unary();
        if (!divisor.isConstant() || divisor.isZero()) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        acc = acc.scaled(1 / divisor.constantTerm());
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (accept('^')) {
      skipSpace();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 4096) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly primary() {
    skipSpace();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Integer value(std::string(text_.substr(start, pos_ - start)));
      return Poly::constant(ctx_.size(), Rational(value));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string_view name = text_.substr(start, pos_ - start);
      auto index = ctx_.index(name);
      if (!index) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return Poly::variable(ctx_.size(), *index);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const VarContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parseExpr(std::string_view text, const VarContext& ctx) { return ExprParser(text, ctx).parse(); }

}  // namespace ncres
