#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "logjet/error.hpp"

namespace logjet {

/// Ground field: the rationals (characteristic 0) or F_p for a prime p < 2^31.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field{}; }

  static Field prime(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 31))
      throw ArithmeticError("characteristic must be a prime below 2^31, got " +
                            std::to_string(p));
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0)
        throw ArithmeticError("characteristic " + std::to_string(p) +
                              " is not prime");
    return Field(static_cast<std::uint32_t>(p));
  }

  std::uint32_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  std::string name() const {
    return p_ == 0 ? "QQ" : "GF(" + std::to_string(p_) + ")";
  }

  bool operator==(const Field&) const = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

/// Exact element of a `Field`. Elements of different fields never mix.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(Field f, long v) : field_(f) { assign(mpq_class(v)); }
  FieldElem(Field f, const mpz_class& v) : field_(f) { assign(mpq_class(v)); }
  FieldElem(Field f, const mpq_class& v) : field_(f) { assign(v); }

  static FieldElem zero(Field f) { return FieldElem(f, 0L); }
  static FieldElem one(Field f) { return FieldElem(f, 1L); }

  const Field& field() const { return field_; }

  bool is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }
  bool is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

  /// Rational value (characteristic 0 only).
  const mpq_class& rational() const { return q_; }
  /// Residue in [0, p) (characteristic p only).
  std::uint64_t residue() const { return r_; }

  FieldElem operator-() const {
    FieldElem out = *this;
    if (field_.is_rational())
      out.q_ = -q_;
    else
      out.r_ = r_ == 0 ? 0 : field_.characteristic() - r_;
    return out;
  }

  FieldElem& operator+=(const FieldElem& o) {
    check(o);
    if (field_.is_rational())
      q_ += o.q_;
    else
      r_ = (r_ + o.r_) % field_.characteristic();
    return *this;
  }
  FieldElem& operator-=(const FieldElem& o) { return *this += -o; }
  FieldElem& operator*=(const FieldElem& o) {
    check(o);
    if (field_.is_rational())
      q_ *= o.q_;
    else
      r_ = (r_ * o.r_) % field_.characteristic();
    return *this;
  }
  FieldElem& operator/=(const FieldElem& o) { return *this *= o.inverse(); }

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  FieldElem inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero");
    FieldElem out = *this;
    if (field_.is_rational()) {
      out.q_ = 1 / q_;
    } else {
      // Fermat: r^(p-2)
      std::uint64_t p = field_.characteristic(), base = r_, e = p - 2, acc = 1;
      while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
      }
      out.r_ = acc;
    }
    return out;
  }

  bool operator==(const FieldElem& o) const {
    return field_ == o.field_ && q_ == o.q_ && r_ == o.r_;
  }

  std::string to_string() const {
    return field_.is_rational() ? q_.get_str() : std::to_string(r_);
  }

  /// True when the canonical rendering starts with a minus sign.
  bool prints_negative() const { return field_.is_rational() && q_ < 0; }

 private:
  void assign(mpq_class v) {
    v.canonicalize();
    if (field_.is_rational()) {
      q_ = v;
      return;
    }
    const unsigned long p = field_.characteristic();
    const unsigned long num = mpz_fdiv_ui(v.get_num_mpz_t(), p);
    const unsigned long den = mpz_fdiv_ui(v.get_den_mpz_t(), p);
    if (den == 0)
      throw ArithmeticError("denominator vanishes in " + field_.name());
    r_ = num;
    FieldElem d;
    d.field_ = field_;
    d.r_ = den;
    r_ = r_ * d.inverse().r_ % p;
  }

  void check(const FieldElem& o) const {
    if (!(field_ == o.field_))
      throw ArithmeticError("mixed fields " + field_.name() + " and " +
                            o.field_.name());
  }

  Field field_;
  mpq_class q_ = 0;
  std::uint64_t r_ = 0;
};

}  // namespace logjet
