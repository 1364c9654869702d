#pragma once

#include <memory>
#include <string>

#include "drinfeld/upoly.hpp"

namespace drinfeld {

// Horner evaluation of a K-coefficient polynomial at a point of a bigger
// context L, mapping coefficients through embed.
template <class L, class K, class EmbedFn>
typename L::Elem up_eval_map(const L& l, const K&,
                             const std::vector<typename K::Elem>& f, EmbedFn embed,
                             const typename L::Elem& x) {
  typename L::Elem acc = l.zero();
  for (size_t i = f.size(); i-- > 0;) acc = l.add(l.mul(acc, x), embed(f[i]));
  return acc;
}

// K[y]/(m): one extension step over an arbitrary field context K, usable as a
// field context itself (elements are reduced coefficient vectors).  Towers are
// nested instantiations.  The modulus is normally irreducible; the few callers
// that work in a non-field quotient ring (Gauss period arithmetic) stay away
// from inv().
template <class K>
struct Ext {
  using Elem = UP<K>;

  K base;
  UP<K> m;

  Ext(const K& b, const UP<K>& modulus)
      : base(b), m(modulus), xq_(std::make_shared<Cache>()) {
    check(up_deg(m) >= 1, Err::Precondition, "extension modulus must be nonconstant");
    check(b.eq(m.back(), b.one()), Err::Precondition, "extension modulus must be monic");
  }

  unsigned ext_deg() const { return static_cast<unsigned>(up_deg(m)); }

  Elem zero() const { return {}; }
  Elem one() const { return up_one(base); }
  Elem add(const Elem& a, const Elem& b) const { return up_add(base, a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return up_sub(base, a, b); }
  Elem neg(const Elem& a) const { return up_neg(base, a); }
  Elem mul(const Elem& a, const Elem& b) const { return up_mul_mod(base, a, b, m); }
  Elem inv(const Elem& a) const {
    check(!a.empty(), Err::DivisionByZero, "inverse of 0 in extension");
    return up_inv_mod(base, a, m);
  }
  bool is_zero(const Elem& a) const { return a.empty(); }
  bool eq(const Elem& a, const Elem& b) const { return up_eq(base, a, b); }

  Elem scalar(uint8_t c) const { return up_const(base, base.scalar(c)); }
  Elem embed(const typename K::Elem& c) const { return up_const(base, c); }
  // The class of y.
  Elem gen() const { return up_rem(base, up_x(base), m); }

  Elem pow(const Elem& a, uint64_t n) const {
    Elem acc = one(), b = a;
    while (n) {
      if (n & 1) acc = mul(acc, b);
      b = mul(b, b);
      n >>= 1;
    }
    return acc;
  }

  // x -> x^q for the bottom F_q: coefficientwise frobq, then compose with
  // y^q mod m (cached).
  Elem frobq(const Elem& a) const {
    if (!xq_->ready) {
      xq_->val = up_pow_mod(base, up_x(base), base.base_q(), m);
      xq_->ready = true;
    }
    Elem acc;
    for (size_t i = a.size(); i-- > 0;) {
      acc = up_mul_mod(base, acc, xq_->val, m);
      acc = up_add(base, acc, up_const(base, base.frobq(a[i])));
    }
    return acc;
  }

  Elem pth_root(const Elem& a) const { return pow(a, card() / base_p()); }

  unsigned base_q() const { return base.base_q(); }
  unsigned base_p() const { return base.base_p(); }

  uint64_t card() const {
    uint64_t c = 1, b = base.card();
    for (unsigned i = 0; i < ext_deg(); ++i) {
      check(c <= UINT64_MAX / b, Err::SizeLimit, "field cardinality overflows");
      c *= b;
    }
    return c;
  }

  Elem from_index(uint64_t idx) const {
    uint64_t b = base.card();
    Elem v;
    for (unsigned i = 0; i < ext_deg(); ++i) {
      v.push_back(base.from_index(idx % b));
      idx /= b;
    }
    up_norm(base, v);
    return v;
  }
  uint64_t to_index(const Elem& a) const {
    uint64_t b = base.card(), idx = 0;
    for (size_t i = a.size(); i-- > 0;) idx = idx * b + base.to_index(a[i]);
    return idx;
  }

  unsigned fq_dim() const { return ext_deg() * base.fq_dim(); }
  void flatten(const Elem& a, uint8_t* out) const {
    unsigned bd = base.fq_dim();
    for (unsigned i = 0; i < ext_deg(); ++i) {
      if (i < a.size())
        base.flatten(a[i], out + static_cast<size_t>(i) * bd);
      else
        for (unsigned j = 0; j < bd; ++j) out[static_cast<size_t>(i) * bd + j] = 0;
    }
  }
  Elem unflatten(const uint8_t* in) const {
    unsigned bd = base.fq_dim();
    Elem v;
    for (unsigned i = 0; i < ext_deg(); ++i)
      v.push_back(base.unflatten(in + static_cast<size_t>(i) * bd));
    up_norm(base, v);
    return v;
  }

  std::string str(const Elem& a) const { return str_var(a, "y"); }
  std::string str_var(const Elem& a, const std::string& var) const {
    if (a.empty()) return "0";
    std::string out;
    for (size_t i = a.size(); i-- > 0;) {
      if (base.is_zero(a[i])) continue;
      if (!out.empty()) out += "+";
      std::string cs = base.str(a[i]);
      bool composite = cs.find('+') != std::string::npos || cs.find('/') != std::string::npos;
      if (i == 0) {
        out += composite ? "(" + cs + ")" : cs;
        continue;
      }
      if (cs != "1") {
        out += composite ? "(" + cs + ")" : cs;
        out += "*";
      }
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  struct Cache {
    bool ready = false;
    UP<K> val;
  };
  std::shared_ptr<Cache> xq_;
};

}  // namespace drinfeld
