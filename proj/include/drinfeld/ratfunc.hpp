#pragma once

#include <string>

#include "drinfeld/factor.hpp"
#include "drinfeld/poly.hpp"

namespace drinfeld {

// Elements of F = F_q(T), kept in lowest terms with monic denominator.
struct RatFunc {
  Poly num, den;

  RatFunc() = default;
  explicit RatFunc(const Poly& n) : num(n), den(Poly::one(*n.k)) {}
  RatFunc(const Poly& n, const Poly& d) : num(n), den(d) { normalize(); }

  static RatFunc zero(const FqCtx& k) { return RatFunc(Poly::zero(k)); }
  static RatFunc one(const FqCtx& k) { return RatFunc(Poly::one(k)); }
  static RatFunc T(const FqCtx& k) { return RatFunc(Poly::T(k)); }
  static RatFunc constant(const FqCtx& k, uint8_t c) {
    return RatFunc(Poly::constant(k, c));
  }

  const FqCtx& ctx() const { return *num.k; }
  bool is_zero() const { return num.is_zero(); }
  bool is_poly() const { return den.is_one(); }
  const Poly& as_poly() const {
    check(den.is_one(), Err::Precondition, "rational function has a denominator");
    return num;
  }

  void normalize();
  std::string str() const;

  // Order of vanishing at the finite prime P (monic irreducible).
  int valuation(const Poly& P) const;
  // v_infinity = deg den - deg num.
  int valuation_inf() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.num, a.den * b.den);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    check(!b.is_zero(), Err::DivisionByZero, "division by the zero function");
    return RatFunc(a.num * b.den, a.den * b.num);
  }
  friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num, a.den); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
};

RatFunc rf_pow(const RatFunc& a, uint64_t n);

// Valuation of a nonzero polynomial at a monic irreducible P.
int poly_valuation(const Poly& f, const Poly& P);

// Field-context facade for the generic polynomial/extension templates.
struct RatField {
  using Elem = RatFunc;
  const FqCtx* kq;

  explicit RatField(const FqCtx& ctx) : kq(&ctx) {}

  Elem zero() const { return RatFunc::zero(*kq); }
  Elem one() const { return RatFunc::one(*kq); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return one() / a; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem scalar(uint8_t c) const { return RatFunc::constant(*kq, c); }
  Elem frobq(const Elem& a) const { return rf_pow(a, kq->q()); }
  Elem pow(const Elem& a, uint64_t n) const { return rf_pow(a, n); }
  unsigned base_q() const { return kq->q(); }
  unsigned base_p() const { return kq->p(); }
  std::string str(const Elem& a) const { return a.str(); }

  bool operator==(const RatField& o) const { return kq == o.kq; }
};

}  // namespace drinfeld
