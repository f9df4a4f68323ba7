#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "logjet/error.hpp"
#include "logjet/poly.hpp"
#include "logjet/series.hpp"

namespace logjet {

namespace detail {

/// Recursive-descent parser for
///   expr  := term (('+' | '-') term)*
///   term  := unary ('*' unary)*
///   unary := '-' unary | power
///   power := atom ('^' nat)?
///   atom  := int | name | '(' expr ')'
class ExprParser {
 public:
  ExprParser(const std::string& src, Field field, VarList vars)
      : src_(src), field_(field), vars_(std::move(vars)) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("in expression \"" + src_ + "\": " + what, 1, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural-number exponent");
    if (pos_ - start > 6) fail("exponent too large");
    return base.pow(static_cast<unsigned>(std::stoul(src_.substr(start, pos_ - start))));
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return Poly::constant(field_, vars_, FieldElem(field_, mpz_class(src_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      const std::string name = src_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < vars_->size(); ++i)
        if ((*vars_)[i] == name) return Poly::variable(field_, vars_, i);
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& src_;
  Field field_;
  VarList vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial over `vars`.
inline Poly parse_poly(const std::string& src, Field field, const VarList& vars) {
  return detail::ExprParser(src, field, vars).parse();
}

/// Parses a polynomial in `t` and keeps its terms below t^precision.
inline TruncSeries parse_series(const std::string& src, Field field, std::size_t precision) {
  static const VarList t = make_vars({"t"});
  const Poly p = parse_poly(src, field, t);
  TruncSeries s = series_zero(field, precision);
  for (const auto& [e, c] : p.terms())
    if (e[0] < precision) s[e[0]] = c;
  return s;
}

}  // namespace logjet
