#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "drinfeld/poly.hpp"
#include "drinfeld/upoly.hpp"

// Univariate factorization over finite coefficient contexts: squarefree
// decomposition in characteristic p, distinct-degree splitting, and
// Cantor-Zassenhaus equal-degree splitting (von zur Gathen & Gerhard ch. 14).
// The equal-degree stage draws from a fixed-seed generator; results are
// independent of the draws because every factor list is sorted canonically
// (degree first, then packed coefficients from the top down).

namespace drinfeld {

template <class K>
struct UPFactor {
  UP<K> f;
  unsigned mult;
};

template <class K>
bool up_less(const K& k, const UP<K>& a, const UP<K>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = a.size(); i-- > 0;) {
    uint64_t ia = k.to_index(a[i]), ib = k.to_index(b[i]);
    if (ia != ib) return ia < ib;
  }
  return false;
}

// Coefficient-wise p-th root of f(x) = g(x^p)^... : input must have nonzero
// coefficients only at exponents divisible by p.
template <class K>
UP<K> up_pth_root(const K& k, const UP<K>& f) {
  unsigned p = k.base_p();
  UP<K> g((f.size() + p - 1) / p, k.zero());
  for (size_t i = 0; i < f.size(); ++i) {
    if (i % p != 0) {
      check(k.is_zero(f[i]), Err::Internal, "p-th root of a non-p-th-power");
      continue;
    }
    g[i / p] = k.pth_root(f[i]);
  }
  up_norm(k, g);
  return g;
}

// Monic squarefree decomposition: f = lc * prod part_i ^ mult_i with the
// parts pairwise coprime and squarefree.  Multiplicities ascending.
template <class K>
std::vector<UPFactor<K>> up_squarefree_decomposition(const K& k, const UP<K>& f0) {
  check(!f0.empty(), Err::Precondition, "squarefree decomposition of zero");
  std::vector<UPFactor<K>> out;
  struct Item {
    UP<K> f;
    unsigned scale;
  };
  std::vector<Item> stack{{up_monic(k, f0), 1}};
  while (!stack.empty()) {
    auto [f, scale] = stack.back();
    stack.pop_back();
    if (up_deg(f) <= 0) continue;
    UP<K> fp = up_derivative(k, f);
    if (fp.empty()) {
      stack.push_back({up_pth_root(k, f), scale * k.base_p()});
      continue;
    }
    UP<K> t = up_gcd(k, f, fp);
    UP<K> v = up_divmod(k, f, t).first;
    unsigned i = 1;
    while (up_deg(v) > 0) {
      UP<K> w = up_gcd(k, t, v);
      UP<K> z = up_divmod(k, v, w).first;
      if (up_deg(z) > 0) out.push_back({z, i * scale});
      v = std::move(w);
      t = up_divmod(k, t, v).first;
      ++i;
    }
    if (up_deg(t) > 0) stack.push_back({up_pth_root(k, t), scale * k.base_p()});
  }
  std::sort(out.begin(), out.end(),
            [&](const UPFactor<K>& a, const UPFactor<K>& b) { return a.mult < b.mult; });
  return out;
}

// Distinct-degree decomposition of a monic squarefree f: list of
// (product of all irreducible factors of degree d, d), d ascending.
template <class K>
std::vector<std::pair<UP<K>, unsigned>> up_ddf(const K& k, UP<K> f) {
  std::vector<std::pair<UP<K>, unsigned>> out;
  uint64_t Q = k.card();
  UP<K> h = up_rem(k, up_x(k), f);
  unsigned d = 0;
  while (up_deg(f) > 0) {
    ++d;
    if (2 * d > static_cast<unsigned>(up_deg(f))) {
      out.push_back({f, static_cast<unsigned>(up_deg(f))});
      break;
    }
    h = up_pow_mod(k, h, Q, f);
    UP<K> g = up_gcd(k, up_sub(k, h, up_x(k)), f);
    if (up_deg(g) > 0) {
      out.push_back({g, d});
      f = up_divmod(k, f, g).first;
      h = up_rem(k, h, f);
    }
  }
  return out;
}

// Equal-degree splitting of monic squarefree f, all of whose irreducible
// factors have degree d.
template <class K>
std::vector<UP<K>> up_edf(const K& k, const UP<K>& f, unsigned d,
                          std::mt19937_64& rng) {
  std::vector<UP<K>> done, work{f};
  uint64_t Q = k.card();
  while (!work.empty()) {
    UP<K> g = work.back();
    work.pop_back();
    unsigned n = static_cast<unsigned>(up_deg(g));
    if (n == d) {
      done.push_back(g);
      continue;
    }
    // random element of the residue algebra
    UP<K> a(n, k.zero());
    for (unsigned i = 0; i < n; ++i) a[i] = k.from_index(rng() % Q);
    up_norm(k, a);
    if (up_deg(a) < 1) {
      work.push_back(g);
      continue;
    }
    UP<K> split;
    if (k.base_p() == 2) {
      // trace over F_2: sum of a^(2^i), i < log2(Q^d)
      unsigned bits = 0;
      for (uint64_t t = Q; t > 1; t >>= 1) ++bits;
      UP<K> tr = up_zero<K>(k), t = a;
      for (unsigned i = 0; i < bits * d; ++i) {
        tr = up_add(k, tr, t);
        t = up_mul_mod(k, t, t, g);
      }
      split = up_gcd(k, tr, g);
    } else {
      // norm to F_Q, then the (Q-1)/2 power map; avoids Q^d-sized exponents
      UP<K> xq = up_pow_mod(k, up_x(k), Q, g);
      UP<K> nrm = a, t = a;
      for (unsigned i = 1; i < d; ++i) {
        t = up_rem(k, up_compose(k, t, xq), g);
        nrm = up_mul_mod(k, nrm, t, g);
      }
      UP<K> b = up_pow_mod(k, nrm, (Q - 1) / 2, g);
      split = up_gcd(k, up_sub(k, b, up_one(k)), g);
    }
    if (up_deg(split) <= 0 || up_deg(split) == up_deg(g)) {
      work.push_back(g);
      continue;
    }
    work.push_back(split);
    work.push_back(up_divmod(k, g, split).first);
  }
  std::sort(done.begin(), done.end(),
            [&](const UP<K>& x, const UP<K>& y) { return up_less(k, x, y); });
  return done;
}

// Full factorization: f = unit * prod f_i^mult_i, factors monic irreducible,
// sorted by (degree, packed coefficients), multiplicities carried alongside.
template <class K>
std::pair<typename K::Elem, std::vector<UPFactor<K>>> up_factor(const K& k,
                                                                const UP<K>& f) {
  check(!f.empty(), Err::Precondition, "factorization of zero");
  typename K::Elem unit = up_lc(k, f);
  std::vector<UPFactor<K>> out;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  for (auto& part : up_squarefree_decomposition(k, f)) {
    for (auto& [prod, d] : up_ddf(k, part.f)) {
      for (auto& irr : up_edf(k, prod, d, rng)) out.push_back({irr, part.mult});
    }
  }
  std::sort(out.begin(), out.end(), [&](const UPFactor<K>& a, const UPFactor<K>& b) {
    if (a.f.size() != b.f.size()) return a.f.size() < b.f.size();
    return up_less(k, a.f, b.f);
  });
  UP<K> re = up_const(k, unit);
  for (auto& fac : out)
    for (unsigned i = 0; i < fac.mult; ++i) re = up_mul(k, re, fac.f);
  check(up_eq(k, re, f), Err::Internal, "factorization failed to re-multiply");
  return {unit, out};
}

template <class K>
bool up_is_irreducible(const K& k, const UP<K>& f) {
  int n = up_deg(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  uint64_t Q = k.card();
  UP<K> h = up_rem(k, up_x(k), f);
  for (int d = 1; 2 * d <= n; ++d) {
    h = up_pow_mod(k, h, Q, f);
    if (up_deg(up_gcd(k, up_sub(k, h, up_x(k)), f)) > 0) return false;
  }
  return true;
}

// Distinct roots in K, by direct scan (fields here are table-sized).
template <class K>
std::vector<typename K::Elem> up_roots(const K& k, const UP<K>& f) {
  check(!f.empty(), Err::Precondition, "roots of the zero polynomial");
  check(k.card() <= 65536, Err::SizeLimit, "root scan over oversized field");
  std::vector<typename K::Elem> out;
  for (uint64_t i = 0; i < k.card(); ++i) {
    typename K::Elem x = k.from_index(i);
    if (k.is_zero(up_eval(k, f, x))) out.push_back(x);
  }
  return out;
}

// ---- Poly-level conveniences over F_q[T] ----

struct PolyFactor {
  Poly f;
  unsigned mult;
};

std::pair<uint8_t, std::vector<PolyFactor>> factor_poly(const Poly& f);
bool is_irreducible(const Poly& f);
bool is_squarefree(const Poly& f);
Poly squarefree_part(const Poly& f);

// Monic irreducibles of degree in [min_deg, max_deg], sorted by degree then
// packed coefficients from the top down.
std::vector<Poly> enumerate_primes(const FqCtx& k, unsigned min_deg, unsigned max_deg);

}  // namespace drinfeld
