#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/fq.hpp"

namespace drinfeld {

// F_{q^s} with at most 4096 elements, as packed base-q integers over a fixed
// monic irreducible modulus m(y) in F_q[y].  Multiplication goes through
// log/exp tables; addition is XOR in characteristic 2 and a digit table in
// characteristic 3.  These fields back the residue fields k_P = F_q[T]/(P)
// (the modulus is then literally P, so packed digits are the T-power
// coordinates of the residue) and the evaluation grids of the bivariate and
// norm computations.
class TabCtx {
 public:
  // Field with the given modulus (monic irreducible over base).
  static const TabCtx& get(const FqCtx& base, const std::vector<uint8_t>& modulus);
  // Canonical field of degree s: first irreducible monic modulus in packed order.
  static const TabCtx& canonical(const FqCtx& base, unsigned s);

  const FqCtx& base() const { return *base_; }
  unsigned s() const { return s_; }
  uint32_t card() const { return n_; }
  const std::vector<uint8_t>& modulus() const { return modulus_; }

  uint16_t add(uint16_t a, uint16_t b) const {
    return p2_ ? static_cast<uint16_t>(a ^ b) : add_[static_cast<uint32_t>(a) * n_ + b];
  }
  uint16_t neg(uint16_t a) const { return neg_[a]; }
  uint16_t sub(uint16_t a, uint16_t b) const { return add(a, neg(b)); }
  uint16_t mul(uint16_t a, uint16_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (n_ - 1)];
  }
  uint16_t inv(uint16_t a) const {
    check(a != 0, Err::DivisionByZero, "inverse of 0 in extension field");
    return exp_[(n_ - 1 - log_[a]) % (n_ - 1)];
  }
  uint16_t pow(uint16_t a, uint64_t k) const;
  uint16_t frobq(uint16_t a) const { return frobq_[a]; }
  uint16_t pth_root(uint16_t a) const { return pth_root_[a]; }
  uint16_t gen() const { return gen_; }
  unsigned log(uint16_t a) const {
    check(a != 0, Err::DivisionByZero, "log of 0");
    return log_[a];
  }
  bool is_square(uint16_t a) const {
    if (base_->p() == 2 || a == 0) return true;
    return log_[a] % 2 == 0;
  }

  // Embedding of the base field as constants (digit 0).
  uint16_t embed(uint8_t c) const { return c; }

  // Packed base-q digits, low first; these are the power-basis coordinates.
  std::vector<uint8_t> digits(uint16_t a) const;
  uint16_t from_digits(const std::vector<uint8_t>& d) const;

  std::string str(uint16_t a, const std::string& var) const;

  TabCtx(const TabCtx&) = delete;
  TabCtx& operator=(const TabCtx&) = delete;

 private:
  TabCtx(const FqCtx& base, const std::vector<uint8_t>& modulus);

  const FqCtx* base_;
  unsigned s_;
  uint32_t n_;
  bool p2_;
  std::vector<uint8_t> modulus_;
  std::vector<uint16_t> add_;  // only populated in characteristic 3
  std::vector<uint16_t> neg_, exp_, frobq_, pth_root_;
  std::vector<unsigned> log_;
  uint16_t gen_ = 0;
};

struct TabField {
  using Elem = uint16_t;
  const TabCtx* k;

  explicit TabField(const TabCtx& ctx) : k(&ctx) {}

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return k->add(a, b); }
  Elem sub(Elem a, Elem b) const { return k->sub(a, b); }
  Elem neg(Elem a) const { return k->neg(a); }
  Elem mul(Elem a, Elem b) const { return k->mul(a, b); }
  Elem inv(Elem a) const { return k->inv(a); }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  Elem scalar(uint8_t c) const { return k->embed(c); }
  Elem frobq(Elem a) const { return k->frobq(a); }
  Elem pow(Elem a, uint64_t n) const { return k->pow(a, n); }
  Elem pth_root(Elem a) const { return k->pth_root(a); }
  unsigned base_q() const { return k->base().q(); }
  unsigned base_p() const { return k->base().p(); }
  uint64_t card() const { return k->card(); }
  Elem from_index(uint64_t i) const { return static_cast<Elem>(i); }
  uint64_t to_index(Elem a) const { return a; }
  unsigned fq_dim() const { return k->s(); }
  void flatten(Elem a, uint8_t* out) const {
    auto d = k->digits(a);
    for (unsigned i = 0; i < k->s(); ++i) out[i] = d[i];
  }
  Elem unflatten(const uint8_t* in) const {
    return k->from_digits(std::vector<uint8_t>(in, in + k->s()));
  }
  std::string str(Elem a) const { return k->str(a, "u"); }

  bool operator==(const TabField& o) const { return k == o.k; }
};

}  // namespace drinfeld
