#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"

// Dense univariate polynomials over an arbitrary field context K.
// A polynomial is a std::vector<typename K::Elem> of coefficients, low degree
// first, kept normalized: no trailing zeros, so the zero polynomial is the
// empty vector and deg is size-1 (deg 0 = -1 by convention, documented at the
// public boundary).  Algorithms follow von zur Gathen & Gerhard, chapters 2-6.

namespace drinfeld {

template <class K>
using UP = std::vector<typename K::Elem>;

template <class K>
void up_norm(const K& k, UP<K>& f) {
  while (!f.empty() && k.is_zero(f.back())) f.pop_back();
}

template <class E>
int up_deg(const std::vector<E>& f) {
  return static_cast<int>(f.size()) - 1;
}

template <class E>
bool up_is_zero(const std::vector<E>& f) {
  return f.empty();
}

template <class K>
UP<K> up_zero(const K&) {
  return {};
}

template <class K>
UP<K> up_const(const K& k, typename K::Elem c) {
  UP<K> f{c};
  up_norm(k, f);
  return f;
}

template <class K>
UP<K> up_one(const K& k) {
  return {k.one()};
}

template <class K>
UP<K> up_x(const K& k) {
  return {k.zero(), k.one()};
}

// c * x^n
template <class K>
UP<K> up_monomial(const K& k, typename K::Elem c, unsigned n) {
  if (k.is_zero(c)) return {};
  UP<K> f(n + 1, k.zero());
  f[n] = c;
  return f;
}

template <class K>
typename K::Elem up_lc(const K& k, const UP<K>& f) {
  return f.empty() ? k.zero() : f.back();
}

template <class K>
typename K::Elem up_coeff(const K& k, const UP<K>& f, unsigned i) {
  return i < f.size() ? f[i] : k.zero();
}

template <class K>
bool up_eq(const K& k, const UP<K>& f, const UP<K>& g) {
  if (f.size() != g.size()) return false;
  for (size_t i = 0; i < f.size(); ++i)
    if (!k.eq(f[i], g[i])) return false;
  return true;
}

template <class K>
UP<K> up_add(const K& k, const UP<K>& f, const UP<K>& g) {
  UP<K> h(std::max(f.size(), g.size()), k.zero());
  for (size_t i = 0; i < h.size(); ++i)
    h[i] = k.add(up_coeff(k, f, i), up_coeff(k, g, i));
  up_norm(k, h);
  return h;
}

template <class K>
UP<K> up_neg(const K& k, const UP<K>& f) {
  UP<K> h = f;
  for (auto& c : h) c = k.neg(c);
  return h;
}

template <class K>
UP<K> up_sub(const K& k, const UP<K>& f, const UP<K>& g) {
  return up_add(k, f, up_neg(k, g));
}

template <class K>
UP<K> up_scale(const K& k, typename K::Elem c, const UP<K>& f) {
  if (k.is_zero(c)) return {};
  UP<K> h = f;
  for (auto& a : h) a = k.mul(c, a);
  up_norm(k, h);
  return h;
}

template <class K>
UP<K> up_mul(const K& k, const UP<K>& f, const UP<K>& g) {
  if (f.empty() || g.empty()) return {};
  UP<K> h(f.size() + g.size() - 1, k.zero());
  for (size_t i = 0; i < f.size(); ++i) {
    if (k.is_zero(f[i])) continue;
    for (size_t j = 0; j < g.size(); ++j)
      h[i + j] = k.add(h[i + j], k.mul(f[i], g[j]));
  }
  up_norm(k, h);
  return h;
}

// Multiply by x^n.
template <class K>
UP<K> up_shift_up(const K& k, const UP<K>& f, unsigned n) {
  if (f.empty()) return {};
  UP<K> h(f.size() + n, k.zero());
  for (size_t i = 0; i < f.size(); ++i) h[i + n] = f[i];
  return h;
}

template <class K>
std::pair<UP<K>, UP<K>> up_divmod(const K& k, const UP<K>& f, const UP<K>& g) {
  check(!g.empty(), Err::DivisionByZero, "polynomial division by zero");
  UP<K> r = f;
  if (r.size() < g.size()) return {UP<K>{}, r};
  size_t dg = g.size() - 1;
  UP<K> q(r.size() - dg, k.zero());
  typename K::Elem lginv = k.inv(g.back());
  for (size_t i = r.size(); i-- > dg;) {
    if (k.is_zero(r[i])) continue;
    typename K::Elem c = k.mul(r[i], lginv);
    q[i - dg] = c;
    for (size_t j = 0; j <= dg; ++j)
      r[i - dg + j] = k.sub(r[i - dg + j], k.mul(c, g[j]));
  }
  r.resize(dg);
  up_norm(k, q);
  up_norm(k, r);
  return {q, r};
}

template <class K>
UP<K> up_rem(const K& k, const UP<K>& f, const UP<K>& g) {
  return up_divmod(k, f, g).second;
}

template <class K>
UP<K> up_monic(const K& k, const UP<K>& f) {
  if (f.empty()) return f;
  return up_scale(k, k.inv(f.back()), f);
}

// Monic gcd; gcd(0,0) = 0.
template <class K>
UP<K> up_gcd(const K& k, UP<K> f, UP<K> g) {
  while (!g.empty()) {
    UP<K> r = up_rem(k, f, g);
    f = std::move(g);
    g = std::move(r);
  }
  return up_monic(k, f);
}

// Extended gcd: returns (d, s, t) with d = s f + t g, d monic (or zero).
template <class K>
struct UPEgcd {
  UP<K> d, s, t;
};

template <class K>
UPEgcd<K> up_egcd(const K& k, const UP<K>& f, const UP<K>& g) {
  UP<K> r0 = f, r1 = g;
  UP<K> s0 = up_one(k), s1 = up_zero(k);
  UP<K> t0 = up_zero(k), t1 = up_one(k);
  while (!r1.empty()) {
    auto [q, r2] = up_divmod(k, r0, r1);
    UP<K> s2 = up_sub(k, s0, up_mul(k, q, s1));
    UP<K> t2 = up_sub(k, t0, up_mul(k, q, t1));
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (!r0.empty()) {
    typename K::Elem u = k.inv(r0.back());
    r0 = up_scale(k, u, r0);
    s0 = up_scale(k, u, s0);
    t0 = up_scale(k, u, t0);
  }
  return {r0, s0, t0};
}

// Inverse of f modulo m; requires gcd(f, m) = 1.
template <class K>
UP<K> up_inv_mod(const K& k, const UP<K>& f, const UP<K>& m) {
  auto e = up_egcd(k, f, m);
  check(up_deg(e.d) == 0, Err::DivisionByZero,
        "element is not invertible modulo the given polynomial");
  return up_rem(k, e.s, m);
}

template <class K>
UP<K> up_mul_mod(const K& k, const UP<K>& f, const UP<K>& g, const UP<K>& m) {
  return up_rem(k, up_mul(k, f, g), m);
}

template <class K>
UP<K> up_pow_mod(const K& k, UP<K> base, uint64_t n, const UP<K>& m) {
  UP<K> acc = up_rem(k, up_one(k), m);
  base = up_rem(k, base, m);
  while (n) {
    if (n & 1) acc = up_mul_mod(k, acc, base, m);
    base = up_mul_mod(k, base, base, m);
    n >>= 1;
  }
  return acc;
}

template <class K>
UP<K> up_pow(const K& k, UP<K> base, uint64_t n) {
  UP<K> acc = up_one(k);
  while (n) {
    if (n & 1) acc = up_mul(k, acc, base);
    base = up_mul(k, base, base);
    n >>= 1;
  }
  return acc;
}

template <class K>
typename K::Elem up_eval(const K& k, const UP<K>& f, typename K::Elem x) {
  typename K::Elem acc = k.zero();
  for (size_t i = f.size(); i-- > 0;) acc = k.add(k.mul(acc, x), f[i]);
  return acc;
}

template <class K>
UP<K> up_derivative(const K& k, const UP<K>& f) {
  if (f.size() <= 1) return {};
  UP<K> h(f.size() - 1, k.zero());
  for (size_t i = 1; i < f.size(); ++i) {
    typename K::Elem c = k.zero();
    unsigned imodp = static_cast<unsigned>(i % k.base_p());
    for (unsigned j = 0; j < imodp; ++j) c = k.add(c, f[i]);
    h[i - 1] = c;
  }
  up_norm(k, h);
  return h;
}

// f(x + c) via Horner.
template <class K>
UP<K> up_taylor_shift(const K& k, const UP<K>& f, typename K::Elem c) {
  UP<K> acc;
  UP<K> lin{c, k.one()};
  for (size_t i = f.size(); i-- > 0;)
    acc = up_add(k, up_mul(k, acc, lin), up_const(k, f[i]));
  return acc;
}

// Composition f(g(x)).
template <class K>
UP<K> up_compose(const K& k, const UP<K>& f, const UP<K>& g) {
  UP<K> acc;
  for (size_t i = f.size(); i-- > 0;)
    acc = up_add(k, up_mul(k, acc, g), up_const(k, f[i]));
  return acc;
}

// Lagrange interpolation through distinct nodes.
template <class K>
UP<K> up_interpolate(const K& k, const std::vector<typename K::Elem>& xs,
                     const std::vector<typename K::Elem>& ys) {
  check(xs.size() == ys.size(), Err::Precondition, "interpolation arity mismatch");
  UP<K> master = up_one(k);
  for (auto& x : xs) master = up_mul(k, master, UP<K>{k.neg(x), k.one()});
  UP<K> acc;
  for (size_t i = 0; i < xs.size(); ++i) {
    auto [li, rem] = up_divmod(k, master, UP<K>{k.neg(xs[i]), k.one()});
    check(rem.empty(), Err::Internal, "interpolation node division");
    typename K::Elem den = up_eval(k, li, xs[i]);
    check(!k.is_zero(den), Err::Precondition, "repeated interpolation node");
    acc = up_add(k, acc, up_scale(k, k.mul(ys[i], k.inv(den)), li));
  }
  return acc;
}

// Resultant with the convention Res(f,g) = lc(f)^deg g * prod g(alpha_i)
// over the roots of f, computed by the Euclidean recurrence
// (von zur Gathen & Gerhard, 6.: Res(f,g) = (-1)^(nm) lc(g)^(n-k) Res(g, r)).
template <class K>
typename K::Elem up_resultant(const K& k, UP<K> f, UP<K> g) {
  if (f.empty() || g.empty()) return k.zero();
  typename K::Elem acc = k.one();
  while (true) {
    int n = up_deg(f), m = up_deg(g);
    if (m == 0) {
      // Res(f, c) = c^deg f
      typename K::Elem c = g[0], r = k.one();
      for (int i = 0; i < n; ++i) r = k.mul(r, c);
      return k.mul(acc, r);
    }
    if (n < m) {
      std::swap(f, g);
      if ((n & 1) && (m & 1)) acc = k.neg(acc);
      continue;
    }
    UP<K> r = up_rem(k, f, g);
    if (r.empty()) return k.zero();
    int kk = up_deg(r);
    typename K::Elem lg = g.back(), pw = k.one();
    for (int i = 0; i < n - kk; ++i) pw = k.mul(pw, lg);
    if ((n & 1) && (m & 1)) acc = k.neg(acc);
    acc = k.mul(acc, pw);
    f = std::move(g);
    g = std::move(r);
  }
}

}  // namespace drinfeld
