#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "logjet/field.hpp"

namespace logjet {

using Exponent = std::vector<std::uint32_t>;
using VarList = std::shared_ptr<const std::vector<std::string>>;

inline VarList make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

inline std::uint32_t total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

/// Graded-lex order, largest first: higher total degree first, ties broken by
/// lexicographic comparison of the exponent vectors in variable order.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// Sparse multivariate polynomial over a `Field` in a fixed ordered variable
/// list. Zero coefficients are never stored.
class Poly {
 public:
  using TermMap = std::map<Exponent, FieldElem, GrlexGreater>;

  Poly() : vars_(make_vars({})) {}
  Poly(Field field, VarList vars) : field_(field), vars_(std::move(vars)) {}

  static Poly constant(Field field, VarList vars, const FieldElem& c) {
    Poly p(field, std::move(vars));
    p.add_term(Exponent(p.nvars(), 0), c);
    return p;
  }
  static Poly constant(Field field, VarList vars, long c) {
    return constant(field, vars, FieldElem(field, c));
  }
  static Poly variable(Field field, VarList vars, std::size_t index) {
    Poly p(field, std::move(vars));
    Exponent e(p.nvars(), 0);
    e.at(index) = 1;
    p.add_term(e, FieldElem::one(field));
    return p;
  }
  static Poly monomial(Field field, VarList vars, Exponent e,
                       const FieldElem& c) {
    Poly p(field, std::move(vars));
    p.add_term(std::move(e), c);
    return p;
  }

  const Field& field() const { return field_; }
  const VarList& vars() const { return vars_; }
  std::size_t nvars() const { return vars_->size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  FieldElem constant_term() const {
    auto it = terms_.find(Exponent(nvars(), 0));
    return it == terms_.end() ? FieldElem::zero(field_) : it->second;
  }

  std::uint32_t degree() const {
    return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
  }

  /// Adds c * x^e in place.
  void add_term(Exponent e, const FieldElem& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly operator-() const {
    Poly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  Poly& operator+=(const Poly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const FieldElem& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const FieldElem& s) { return a *= s; }
  friend Poly operator*(const FieldElem& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly out(a.field_, a.vars_);
    Exponent e(a.nvars());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(unsigned k) const {
    Poly acc = constant(field_, vars_, 1L), base = *this;
    while (k) {
      if (k & 1) acc *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return acc;
  }

  Poly derivative(std::size_t var) const {
    Poly out(field_, vars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(var) == 0) continue;
      Exponent d = e;
      --d[var];
      out.add_term(std::move(d), c * FieldElem(field_, static_cast<long>(e[var])));
    }
    return out;
  }

  /// Evaluates at a point given in variable order.
  FieldElem evaluate(const std::vector<FieldElem>& point) const {
    if (point.size() != nvars())
      throw Error("evaluate: point has " + std::to_string(point.size()) +
                  " coordinates, polynomial has " + std::to_string(nvars()) +
                  " variables");
    FieldElem sum = FieldElem::zero(field_);
    for (const auto& [e, c] : terms_) {
      FieldElem term = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) term *= point[i];
      sum += term;
    }
    return sum;
  }

  /// Re-expresses the polynomial over `target`, sending variable i to
  /// target variable `index_map[i]`.
  Poly remap(const VarList& target, const std::vector<std::size_t>& index_map) const {
    Poly out(field_, target);
    for (const auto& [e, c] : terms_) {
      Exponent f(target->size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) f.at(index_map.at(i)) += e[i];
      out.add_term(std::move(f), c);
    }
    return out;
  }

  /// Indices of the variables that occur.
  std::vector<std::size_t> support() const {
    std::vector<bool> used(nvars(), false);
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) used[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (used[i]) out.push_back(i);
    return out;
  }

  bool operator==(const Poly& o) const {
    return field_ == o.field_ && same_vars(o) && terms_ == o.terms_;
  }

  bool same_vars(const Poly& o) const {
    return vars_ == o.vars_ || *vars_ == *o.vars_;
  }

  /// Canonical rendering, graded-lex descending, e.g. `x*y - z^2`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool neg = c.prints_negative();
      const FieldElem mag = neg ? -c : c;
      if (first)
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += (*vars_)[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty())
        out += mag.to_string();
      else if (mag.is_one())
        out += mono;
      else
        out += mag.to_string() + "*" + mono;
    }
    return out;
  }

 private:
  void check(const Poly& o) const {
    if (!(field_ == o.field_))
      throw ArithmeticError("mixed fields in polynomial arithmetic");
    if (!same_vars(o))
      throw Error("polynomials over different variable lists");
  }

  Field field_;
  VarList vars_;
  TermMap terms_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }
inline bool is_zero(const FieldElem& c) { return c.is_zero(); }

}  // namespace logjet
