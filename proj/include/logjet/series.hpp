#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logjet/poly.hpp"

namespace logjet {

/// Element of C[t]/t^P stored as its P coefficients. `C` is a commutative
/// ring type with `+ - *`, scaling by `FieldElem`, and a free `is_zero(C)`.
template <class C>
class BasicSeries {
 public:
  BasicSeries(std::size_t precision, const C& zero)
      : coeffs_(precision, zero), zero_(zero) {
    if (precision == 0) throw Error("series precision must be positive");
  }

  static BasicSeries constant(std::size_t precision, const C& zero, const C& c) {
    BasicSeries s(precision, zero);
    s.coeffs_[0] = c;
    return s;
  }

  std::size_t precision() const { return coeffs_.size(); }
  const C& zero_value() const { return zero_; }
  const C& operator[](std::size_t k) const { return coeffs_.at(k); }
  C& operator[](std::size_t k) { return coeffs_.at(k); }
  const std::vector<C>& coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!logjet::is_zero(c)) return false;
    return true;
  }

  BasicSeries& operator+=(const BasicSeries& o) {
    check(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  BasicSeries& operator-=(const BasicSeries& o) {
    check(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  BasicSeries& operator*=(const FieldElem& s) {
    for (auto& c : coeffs_) c = c * s;
    return *this;
  }

  friend BasicSeries operator+(BasicSeries a, const BasicSeries& b) { return a += b; }
  friend BasicSeries operator-(BasicSeries a, const BasicSeries& b) { return a -= b; }
  friend BasicSeries operator*(BasicSeries a, const FieldElem& s) { return a *= s; }
  BasicSeries operator-() const {
    BasicSeries out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  /// Truncated Cauchy product.
  friend BasicSeries operator*(const BasicSeries& a, const BasicSeries& b) {
    a.check(b);
    const std::size_t P = a.precision();
    BasicSeries out(P, a.zero_);
    for (std::size_t i = 0; i < P; ++i) {
      if (logjet::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; i + j < P; ++j) {
        if (logjet::is_zero(b.coeffs_[j])) continue;
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return out;
  }
  BasicSeries& operator*=(const BasicSeries& o) { return *this = *this * o; }

  BasicSeries pow(unsigned k) const {
    BasicSeries acc = constant(precision(), zero_, one_like());
    BasicSeries base = *this;
    while (k) {
      if (k & 1) acc *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return acc;
  }

  /// Same element at a smaller (or equal) precision.
  BasicSeries truncated(std::size_t precision) const {
    if (precision > this->precision())
      throw PrecisionError("cannot raise series precision from " +
                               std::to_string(this->precision()) + " to " +
                               std::to_string(precision),
                           precision);
    BasicSeries out(precision, zero_);
    for (std::size_t k = 0; k < precision; ++k) out.coeffs_[k] = coeffs_[k];
    return out;
  }

  /// Multiplication by t^k, same precision.
  BasicSeries shifted_up(std::size_t k) const {
    BasicSeries out(precision(), zero_);
    for (std::size_t i = 0; i + k < precision(); ++i) out.coeffs_[i + k] = coeffs_[i];
    return out;
  }

  /// Division by t^k. The result is only known modulo t^(P-k), so its
  /// precision drops accordingly. Requires the first k coefficients to vanish.
  BasicSeries shifted_down(std::size_t k) const {
    if (k >= precision())
      throw PrecisionError("shift by t^" + std::to_string(k) +
                               " exhausts precision " + std::to_string(precision()),
                           2 * precision());
    for (std::size_t i = 0; i < k; ++i)
      if (!logjet::is_zero(coeffs_[i]))
        throw ArithmeticError("division by t^" + std::to_string(k) +
                              " of a series of lower valuation");
    BasicSeries out(precision() - k, zero_);
    for (std::size_t i = k; i < precision(); ++i) out.coeffs_[i - k] = coeffs_[i];
    return out;
  }

  bool operator==(const BasicSeries& o) const { return coeffs_ == o.coeffs_; }

 private:
  C one_like() const;

  void check(const BasicSeries& o) const {
    if (o.precision() != precision())
      throw Error("series precisions differ: " + std::to_string(precision()) +
                  " vs " + std::to_string(o.precision()));
  }

  std::vector<C> coeffs_;
  C zero_;
};

template <>
inline FieldElem BasicSeries<FieldElem>::one_like() const {
  return FieldElem::one(zero_.field());
}
template <>
inline Poly BasicSeries<Poly>::one_like() const {
  return Poly::constant(zero_.field(), zero_.vars(), 1L);
}

/// Element of L[t]/t^P over the ground field.
using TruncSeries = BasicSeries<FieldElem>;
/// Series whose coefficients are polynomials; used for jet substitutions.
using PolySeries = BasicSeries<Poly>;

inline TruncSeries series_zero(Field f, std::size_t precision) {
  return TruncSeries(precision, FieldElem::zero(f));
}

/// Builds a series from low-order coefficients; missing ones are zero.
inline TruncSeries series_from(Field f, std::size_t precision,
                               const std::vector<long>& coeffs) {
  TruncSeries s = series_zero(f, precision);
  for (std::size_t k = 0; k < coeffs.size() && k < precision; ++k)
    s[k] = FieldElem(f, coeffs[k]);
  return s;
}

/// t^k at the given precision (zero when k >= precision).
inline TruncSeries series_monomial(Field f, std::size_t precision, std::size_t k,
                                   const FieldElem& c) {
  TruncSeries s = series_zero(f, precision);
  if (k < precision) s[k] = c;
  return s;
}

/// Least index of a nonzero coefficient; nullopt means "valuation >= P".
template <class C>
std::optional<std::size_t> series_valuation(const BasicSeries<C>& s) {
  for (std::size_t k = 0; k < s.precision(); ++k)
    if (!is_zero(s[k])) return k;
  return std::nullopt;
}

/// Inverse of a unit of L[t]/t^P.
inline TruncSeries series_unit_inverse(const TruncSeries& s) {
  if (s[0].is_zero())
    throw ArithmeticError("series is not a unit (constant term vanishes)");
  const std::size_t P = s.precision();
  TruncSeries inv(P, s.zero_value());
  const FieldElem c0inv = s[0].inverse();
  inv[0] = c0inv;
  for (std::size_t n = 1; n < P; ++n) {
    FieldElem acc = FieldElem::zero(s[0].field());
    for (std::size_t k = 1; k <= n; ++k) acc += s[k] * inv[n - k];
    inv[n] = -acc * c0inv;
  }
  return inv;
}

/// Ascending rendering, e.g. `1 - t + t^2`.
inline std::string to_string(const TruncSeries& s) {
  std::string out;
  for (std::size_t k = 0; k < s.precision(); ++k) {
    const FieldElem& c = s[k];
    if (c.is_zero()) continue;
    const bool neg = c.prints_negative();
    const FieldElem mag = neg ? -c : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    if (mono.empty())
      out += mag.to_string();
    else if (mag.is_one())
      out += mono;
    else
      out += mag.to_string() + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

namespace detail {
template <class C>
C lift_scalar(const C& zero, const FieldElem& c);
template <>
inline FieldElem lift_scalar(const FieldElem&, const FieldElem& c) { return c; }
template <>
inline Poly lift_scalar(const Poly& zero, const FieldElem& c) {
  return Poly::constant(zero.field(), zero.vars(), c);
}
}  // namespace detail

/// Evaluates f at series assigned to its variables (index-aligned). The
/// result lives in C[t]/t^P; the map is a ring homomorphism.
template <class C>
BasicSeries<C> poly_eval_series(const Poly& f,
                                const std::vector<BasicSeries<C>>& assignment) {
  if (assignment.size() != f.nvars())
    throw Error("poly_eval_series: expected " + std::to_string(f.nvars()) +
                " series, got " + std::to_string(assignment.size()));
  if (assignment.empty() && !f.is_zero()) {
    // Constant polynomial in no variables; no series to borrow a precision from.
    throw Error("poly_eval_series: no assignment to fix the precision");
  }
  const std::size_t P = assignment.front().precision();
  const C zero = assignment.front().zero_value();
  for (const auto& s : assignment)
    if (s.precision() != P) throw Error("poly_eval_series: precisions differ");

  // powers[i][k] = assignment[i]^k, filled lazily
  std::vector<std::vector<BasicSeries<C>>> powers(f.nvars());
  auto power = [&](std::size_t i, std::uint32_t k) -> const BasicSeries<C>& {
    auto& cache = powers[i];
    if (cache.empty())
      cache.push_back(BasicSeries<C>::constant(P, zero, detail::lift_scalar(zero, FieldElem::one(f.field()))));
    while (cache.size() <= k) cache.push_back(cache.back() * assignment[i]);
    return cache[k];
  };

  BasicSeries<C> sum(P, zero);
  for (const auto& [e, c] : f.terms()) {
    BasicSeries<C> term = BasicSeries<C>::constant(P, zero, detail::lift_scalar(zero, c));
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term *= power(i, e[i]);
    sum += term;
  }
  return sum;
}

/// Name-keyed variant; every variable of f must be assigned.
inline TruncSeries poly_eval_series(const Poly& f,
                                    const std::map<std::string, TruncSeries>& assignment) {
  std::vector<TruncSeries> aligned;
  aligned.reserve(f.nvars());
  for (const auto& name : *f.vars()) {
    auto it = assignment.find(name);
    if (it == assignment.end())
      throw ValidationError("missing series for variable '" + name + "'");
    aligned.push_back(it->second);
  }
  return poly_eval_series(f, aligned);
}

}  // namespace logjet
