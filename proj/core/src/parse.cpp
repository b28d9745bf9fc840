#include "nfr/parse.hpp"

#include <cctype>

namespace nfr {

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  long signed_int() {
    bool neg = accept('-');
    if (!neg) accept('+');
    long v = std::stol(digits());
    return neg ? -v : v;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (s_.substr(pos_).starts_with("eta(")) {
      auto close = s_.find(')', pos_);
      if (close == std::string_view::npos) fail("unterminated eta literal");
      pos_ = close + 1;
      return std::string(s_.substr(start, pos_ - start));
    }
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a symbol");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

// factor := number ['/' number | '^' int] | symbol ['^' int]
void parse_factor(Lexer& lx, Term& term) {
  char c = lx.peek();
  if (std::isdigit(static_cast<unsigned char>(c))) {
    Integer base(lx.digits());
    if (lx.accept('/')) {
      term.coeff *= Rational(base, Integer(lx.digits()));
    } else if (lx.accept('^')) {
      long e = lx.signed_int();
      Rational pw = ipow(base, static_cast<unsigned long>(e < 0 ? -e : e));
      term.coeff *= e < 0 ? Rational(1) / pw : pw;
    } else {
      term.coeff *= base;
    }
    term.coeff.canonicalize();
    return;
  }
  const std::size_t at = lx.pos();
  std::string name = lx.identifier();
  if (!is_known_symbol(name)) throw ParseError("unknown symbol '" + name + "'", at);
  int e = 1;
  if (lx.accept('^')) {
    long v = lx.signed_int();
    if (v < 1) lx.fail("symbol exponents must be positive");
    e = static_cast<int>(v);
  }
  term.mono.powers.emplace_back(std::move(name), e);
}

Polynomial parse_poly(Lexer& lx) {
  Polynomial poly;
  bool first = true;
  while (true) {
    Term term{1, {}};
    if (lx.accept('-')) {
      term.coeff = -1;
    } else if (!lx.accept('+') && !first) {
      break;
    }
    first = false;
    parse_factor(lx, term);
    while (lx.accept('*')) parse_factor(lx, term);
    poly.terms.push_back(std::move(term));
    char c = lx.peek();
    if (c != '+' && c != '-') break;
  }
  return poly;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text) {
  Lexer lx(text);
  Polynomial p = parse_poly(lx);
  if (!lx.done()) lx.fail("trailing input");
  return p;
}

Expression parse_expression(std::string_view text) {
  Lexer lx(text);
  Expression e;
  if (lx.peek() != '(') {
    e.factors.push_back(parse_poly(lx));
  } else {
    do {
      lx.expect('(');
      e.factors.push_back(parse_poly(lx));
      lx.expect(')');
    } while (lx.accept('*'));
  }
  if (!lx.done()) lx.fail("trailing input");
  return e;
}

}  // namespace nfr
