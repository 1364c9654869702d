#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

// Table-driven arithmetic for the coefficient fields F_q, q = p^e <= 16,
// p in {2,3}.  Elements are packed integers v = sum c_i p^i where
// sum c_i alpha^i is the element written in the power basis of a fixed
// modulus.  The moduli are the Conway polynomials for (p,e), so element
// encodings (and everything downstream: certificates, transcripts) are
// reproducible across runs and implementations.
class FqCtx {
 public:
  static const FqCtx& get(unsigned q);

  unsigned q() const { return q_; }
  unsigned p() const { return p_; }
  unsigned e() const { return e_; }

  uint8_t add(uint8_t a, uint8_t b) const { return add_[idx(a, b)]; }
  uint8_t sub(uint8_t a, uint8_t b) const { return add_[idx(a, neg_[b])]; }
  uint8_t neg(uint8_t a) const { return neg_[a]; }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_[idx(a, b)]; }
  uint8_t inv(uint8_t a) const {
    check(a != 0, Err::DivisionByZero, "inverse of 0 in F_" + std::to_string(q_));
    return inv_[a];
  }
  uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }
  // x -> x^p, the absolute Frobenius.
  uint8_t frobp(uint8_t a) const { return frob_[a]; }
  uint8_t pow(uint8_t a, uint64_t k) const;

  // Fixed primitive element: the class of x for e >= 2, the Conway root for e = 1.
  uint8_t gen() const { return gen_; }
  // Multiplicative order of a nonzero element.
  unsigned mult_order(uint8_t a) const;
  // Trace to the prime field: a + a^p + ... + a^(p^(e-1)).
  uint8_t abs_trace(uint8_t a) const {
    uint8_t t = 0, x = a;
    for (unsigned i = 0; i < e_; ++i) {
      t = add(t, x);
      x = frobp(x);
    }
    return t;
  }

  // Discrete log base gen(); a != 0.
  unsigned log(uint8_t a) const {
    check(a != 0, Err::DivisionByZero, "log of 0");
    return log_[a];
  }
  uint8_t exp(unsigned k) const { return exp_[k % (q_ - 1)]; }

  bool is_square(uint8_t a) const {
    if (p_ == 2 || a == 0) return true;
    return log_[a] % 2 == 0;
  }
  // Some square root (the one with even log, or the unique one in char 2).
  uint8_t sqrt(uint8_t a) const;

  // Canonical non-square unit (q odd): gen(), which has odd log by definition.
  uint8_t nonsquare_unit() const {
    check(p_ != 2, Err::EvenCharacteristic, "no non-square units in char 2");
    return gen_;
  }

  uint8_t scalar_from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<uint8_t>(r);
  }

  // Prime-subfield digits of the packed value, length e (low first).
  std::array<uint8_t, 4> digits(uint8_t a) const;
  uint8_t from_digits(const uint8_t* d) const;

  // Element text in the shared grammar: integers mod p, `w` the generator.
  std::string str(uint8_t a) const;

  FqCtx(const FqCtx&) = delete;
  FqCtx& operator=(const FqCtx&) = delete;

 private:
  FqCtx(unsigned p, unsigned e, const std::vector<uint8_t>& modulus);
  unsigned idx(uint8_t a, uint8_t b) const { return a * q_ + b; }

  unsigned q_, p_, e_;
  std::vector<uint8_t> modulus_;  // low-to-high over F_p, length e+1, monic
  std::vector<uint8_t> add_, mul_;
  std::vector<uint8_t> neg_, inv_, frob_;
  std::vector<uint8_t> exp_;
  std::vector<unsigned> log_;
  uint8_t gen_ = 0;
};

// Value-semantics wrapper used where mixing fields must be caught loudly.
struct Fq {
  const FqCtx* k = nullptr;
  uint8_t v = 0;

  Fq() = default;
  Fq(const FqCtx& ctx, uint8_t value) : k(&ctx), v(value) {}

  bool is_zero() const { return v == 0; }
  std::string str() const { return k->str(v); }

  friend Fq operator+(Fq a, Fq b) { return {same(a, b), a.k->add(a.v, b.v)}; }
  friend Fq operator-(Fq a, Fq b) { return {same(a, b), a.k->sub(a.v, b.v)}; }
  friend Fq operator*(Fq a, Fq b) { return {same(a, b), a.k->mul(a.v, b.v)}; }
  friend Fq operator/(Fq a, Fq b) { return {same(a, b), a.k->div(a.v, b.v)}; }
  friend Fq operator-(Fq a) { return {*a.k, a.k->neg(a.v)}; }
  friend bool operator==(Fq a, Fq b) { return &same(a, b) == a.k && a.v == b.v; }
  friend bool operator!=(Fq a, Fq b) { return !(a == b); }

 private:
  static const FqCtx& same(Fq a, Fq b) {
    check(a.k && b.k && a.k == b.k, Err::ConfigMismatch,
          "elements belong to different field configurations");
    return *a.k;
  }
};

// Field-context facade over FqCtx satisfying the generic coefficient-field
// interface used by the polynomial and extension templates.
struct FqField {
  using Elem = uint8_t;
  const FqCtx* k;

  explicit FqField(const FqCtx& ctx) : k(&ctx) {}

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return k->add(a, b); }
  Elem sub(Elem a, Elem b) const { return k->sub(a, b); }
  Elem neg(Elem a) const { return k->neg(a); }
  Elem mul(Elem a, Elem b) const { return k->mul(a, b); }
  Elem inv(Elem a) const { return k->inv(a); }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  Elem scalar(uint8_t c) const {
    check(c < k->q(), Err::FieldMismatch, "scalar out of range");
    return c;
  }
  Elem frobq(Elem a) const { return a; }
  Elem pow(Elem a, uint64_t n) const { return k->pow(a, n); }
  Elem pth_root(Elem a) const { return k->pow(a, k->q() / k->p()); }
  unsigned base_q() const { return k->q(); }
  unsigned base_p() const { return k->p(); }
  uint64_t card() const { return k->q(); }
  Elem from_index(uint64_t i) const { return static_cast<Elem>(i); }
  uint64_t to_index(Elem a) const { return a; }
  unsigned fq_dim() const { return 1; }
  void flatten(Elem a, uint8_t* out) const { out[0] = a; }
  Elem unflatten(const uint8_t* in) const { return in[0]; }
  std::string str(Elem a) const { return k->str(a); }

  bool operator==(const FqField& o) const { return k == o.k; }
};

}  // namespace drinfeld
