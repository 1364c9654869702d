#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drinfeld/fq.hpp"
#include "drinfeld/upoly.hpp"

namespace drinfeld {

// Elements of A = F_q[T].  Coefficients are packed FqCtx values, low degree
// first, normalized (no trailing zeros; zero polynomial = empty vector).
struct Poly {
  const FqCtx* k = nullptr;
  std::vector<uint8_t> c;

  Poly() = default;
  explicit Poly(const FqCtx& ctx) : k(&ctx) {}
  Poly(const FqCtx& ctx, std::vector<uint8_t> coeffs) : k(&ctx), c(std::move(coeffs)) {
    normalize();
  }

  static Poly zero(const FqCtx& ctx) { return Poly(ctx); }
  static Poly one(const FqCtx& ctx) { return Poly(ctx, {1}); }
  static Poly constant(const FqCtx& ctx, uint8_t a) { return Poly(ctx, {a}); }
  static Poly T(const FqCtx& ctx) { return Poly(ctx, {0, 1}); }

  FqField field() const { return FqField(*k); }
  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
  // deg 0 has no degree; everything else reports its honest degree.
  std::optional<int> degree() const {
    if (c.empty()) return std::nullopt;
    return static_cast<int>(c.size()) - 1;
  }
  int deg_or(int fallback) const { return c.empty() ? fallback : static_cast<int>(c.size()) - 1; }
  uint8_t lc() const { return c.empty() ? 0 : c.back(); }
  uint8_t coeff(unsigned i) const { return i < c.size() ? c[i] : 0; }
  bool is_monic() const { return lc() == 1; }

  uint8_t eval(uint8_t x) const { return up_eval(field(), c, x); }

  Poly monic() const { return wrap(up_monic(field(), c)); }
  Poly derivative() const { return wrap(up_derivative(field(), c)); }

  std::string str() const;

  friend Poly operator+(const Poly& a, const Poly& b) {
    return a.wrap(up_add(a.same(b), a.c, b.c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    return a.wrap(up_sub(a.same(b), a.c, b.c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    return a.wrap(up_mul(a.same(b), a.c, b.c));
  }
  friend Poly operator-(const Poly& a) { return a.wrap(up_neg(a.field(), a.c)); }
  friend Poly operator/(const Poly& a, const Poly& b) {
    return a.wrap(up_divmod(a.same(b), a.c, b.c).first);
  }
  friend Poly operator%(const Poly& a, const Poly& b) {
    return a.wrap(up_divmod(a.same(b), a.c, b.c).second);
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    a.same(b);
    return a.c == b.c;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Total order: by degree, then packed coefficients from the top down.
  // This is the order used everywhere canonical lists are emitted.
  friend bool operator<(const Poly& a, const Poly& b) {
    a.same(b);
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
    for (size_t i = a.c.size(); i-- > 0;)
      if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
  }

  Poly wrap(std::vector<uint8_t> v) const {
    Poly r(*k);
    r.c = std::move(v);
    return r;
  }

 private:
  FqField same(const Poly& b) const {
    check(k && b.k && k == b.k, Err::ConfigMismatch,
          "polynomials belong to different field configurations");
    return FqField(*k);
  }
};

Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_pow_mod(const Poly& base, uint64_t n, const Poly& m);

// Text form of sum c_i var^i with coefficients rendered by FqCtx::str;
// composite coefficients are parenthesized.
std::string poly_to_string(const FqCtx& k, const std::vector<uint8_t>& c,
                           const std::string& var);

}  // namespace drinfeld
