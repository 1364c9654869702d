#pragma once

#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

// K{tau}, twisted by the q-power Frobenius of the bottom field: tau c = c^q tau.
// Coefficients live in any field context providing frobq.
template <class K>
struct SkewPoly {
  std::vector<typename K::Elem> c;  // c[i] tau^i, normalized
};

template <class K>
void sk_norm(const K& k, SkewPoly<K>& f) {
  while (!f.c.empty() && k.is_zero(f.c.back())) f.c.pop_back();
}

template <class K>
int sk_deg(const SkewPoly<K>& f) {
  return static_cast<int>(f.c.size()) - 1;
}

template <class K>
bool sk_is_zero(const SkewPoly<K>& f) {
  return f.c.empty();
}

template <class K>
SkewPoly<K> sk_const(const K& k, const typename K::Elem& a) {
  SkewPoly<K> f{{a}};
  sk_norm(k, f);
  return f;
}

template <class K>
SkewPoly<K> sk_tau(const K& k, unsigned i = 1) {
  SkewPoly<K> f;
  f.c.assign(i + 1, k.zero());
  f.c[i] = k.one();
  return f;
}

template <class K>
bool sk_eq(const K& k, const SkewPoly<K>& a, const SkewPoly<K>& b) {
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!k.eq(a.c[i], b.c[i])) return false;
  return true;
}

template <class K>
SkewPoly<K> sk_add(const K& k, const SkewPoly<K>& a, const SkewPoly<K>& b) {
  SkewPoly<K> h;
  h.c.assign(std::max(a.c.size(), b.c.size()), k.zero());
  for (size_t i = 0; i < h.c.size(); ++i) {
    typename K::Elem x = i < a.c.size() ? a.c[i] : k.zero();
    typename K::Elem y = i < b.c.size() ? b.c[i] : k.zero();
    h.c[i] = k.add(x, y);
  }
  sk_norm(k, h);
  return h;
}

template <class K>
SkewPoly<K> sk_neg(const K& k, const SkewPoly<K>& a) {
  SkewPoly<K> h = a;
  for (auto& x : h.c) x = k.neg(x);
  return h;
}

template <class K>
SkewPoly<K> sk_sub(const K& k, const SkewPoly<K>& a, const SkewPoly<K>& b) {
  return sk_add(k, a, sk_neg(k, b));
}

template <class K>
typename K::Elem frobq_iter(const K& k, typename K::Elem a, unsigned times) {
  for (unsigned i = 0; i < times; ++i) a = k.frobq(a);
  return a;
}

// (sum a_i tau^i)(sum b_j tau^j) = sum_{i,j} a_i b_j^{q^i} tau^{i+j}.
template <class K>
SkewPoly<K> sk_mul(const K& k, const SkewPoly<K>& a, const SkewPoly<K>& b) {
  if (a.c.empty() || b.c.empty()) return {};
  SkewPoly<K> h;
  h.c.assign(a.c.size() + b.c.size() - 1, k.zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (k.is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (k.is_zero(b.c[j])) continue;
      typename K::Elem t = k.mul(a.c[i], frobq_iter(k, b.c[j], static_cast<unsigned>(i)));
      h.c[i + j] = k.add(h.c[i + j], t);
    }
  }
  sk_norm(k, h);
  return h;
}

template <class K>
SkewPoly<K> sk_scale(const K& k, const typename K::Elem& c, const SkewPoly<K>& a) {
  SkewPoly<K> h = a;
  for (auto& x : h.c) x = k.mul(c, x);
  sk_norm(k, h);
  return h;
}

template <class K>
SkewPoly<K> sk_pow(const K& k, const SkewPoly<K>& a, uint64_t n) {
  SkewPoly<K> acc = sk_const(k, k.one()), b = a;
  while (n) {
    if (n & 1) acc = sk_mul(k, acc, b);
    b = sk_mul(k, b, b);
    n >>= 1;
  }
  return acc;
}

// f = quo * g + rem with deg_tau(rem) < deg_tau(g); the divisor sits on the
// right, so the leading coefficient of g gets hit by iterated Frobenius.
template <class K>
std::pair<SkewPoly<K>, SkewPoly<K>> sk_right_divmod(const K& k, SkewPoly<K> f,
                                                    const SkewPoly<K>& g) {
  check(!g.c.empty(), Err::DivisionByZero, "skew division by zero");
  SkewPoly<K> quo;
  int dg = sk_deg(g);
  if (sk_deg(f) >= dg) quo.c.assign(f.c.size() - g.c.size() + 1, k.zero());
  while (sk_deg(f) >= dg) {
    unsigned d = static_cast<unsigned>(sk_deg(f) - dg);
    typename K::Elem c = k.mul(f.c.back(), k.inv(frobq_iter(k, g.c.back(), d)));
    quo.c[d] = k.add(quo.c[d], c);
    SkewPoly<K> t = sk_tau(k, d);
    t.c[d] = c;
    f = sk_sub(k, f, sk_mul(k, t, g));
  }
  sk_norm(k, quo);
  return {quo, f};
}

}  // namespace drinfeld
