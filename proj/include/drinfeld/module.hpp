#pragma once

#include <vector>

#include "drinfeld/ratfunc.hpp"
#include "drinfeld/skew.hpp"
#include "drinfeld/tab.hpp"

namespace drinfeld {

// A Drinfeld F_q[T]-module of rank r over a field context K, given by the
// image of T: phi_T = t0 + g_1 tau + ... + g_r tau^r, g_r != 0, where
// t0 = gamma(T) is the A-field structure.  Over F = F_q(T) itself t0 = T;
// over a residue field k_P it is the class of T.
template <class K>
struct DrinfeldModule {
  K k;
  typename K::Elem t0;
  std::vector<typename K::Elem> g;

  DrinfeldModule(const K& ctx, typename K::Elem gamma_T,
                 std::vector<typename K::Elem> coeffs)
      : k(ctx), t0(std::move(gamma_T)), g(std::move(coeffs)) {
    check(!g.empty() && !k.is_zero(g.back()), Err::RankMismatch,
          "top coefficient of phi_T must be nonzero");
  }

  unsigned rank() const { return static_cast<unsigned>(g.size()); }

  SkewPoly<K> phi_T() const {
    SkewPoly<K> f;
    f.c.push_back(t0);
    for (auto& gi : g) f.c.push_back(gi);
    return f;
  }
};

// phi_a for a = sum alpha_j T^j (alpha_j in F_q, low first), by Horner in the
// commuting image of A.
template <class K>
SkewPoly<K> phi_of(const DrinfeldModule<K>& M, const std::vector<uint8_t>& a) {
  SkewPoly<K> acc, pT = M.phi_T();
  for (size_t j = a.size(); j-- > 0;) {
    acc = sk_mul(M.k, acc, pT);
    acc = sk_add(M.k, acc, sk_const(M.k, M.k.scalar(a[j])));
  }
  return acc;
}

// The F_q-linear polynomial whose roots are phi[a]: sum_i (phi_a)_i x^{q^i}.
template <class K>
UP<K> torsion_polynomial(const DrinfeldModule<K>& M, const std::vector<uint8_t>& a) {
  SkewPoly<K> f = phi_of(M, a);
  check(!f.c.empty(), Err::Precondition, "torsion polynomial of phi_0");
  uint64_t q = M.k.base_q(), top = 1;
  for (int i = 0; i < sk_deg(f); ++i) top *= q;
  UP<K> out(top + 1, M.k.zero());
  uint64_t pw = 1;
  for (size_t i = 0; i < f.c.size(); ++i) {
    out[pw] = f.c[i];
    if (i + 1 < f.c.size()) pw *= q;
  }
  up_norm(M.k, out);
  return out;
}

template <class K>
DrinfeldModule<K> carlitz_module(const K& k, typename K::Elem t0) {
  return DrinfeldModule<K>(k, t0, {k.one()});
}

// Evaluate a skew polynomial with coefficients in K at a point of a module
// context L: sum embed(c_i) x^(q^i).  EmbedFn maps K-elements into L.
template <class L, class K, class EmbedFn>
typename L::Elem apply_skew(const L& l, const SkewPoly<K>& f, EmbedFn embed,
                            const typename L::Elem& x) {
  typename L::Elem acc = l.zero(), xqi = x;
  for (size_t i = 0; i < f.c.size(); ++i) {
    acc = l.add(acc, l.mul(embed(f.c[i]), xqi));
    if (i + 1 < f.c.size()) xqi = l.pow(xqi, l.base_q());
  }
  return acc;
}

// Rank-1 determinant module of a rank-2 module: psi_T = t0 - g_2 tau
// (Hayes-normalized exterior power; see van der Heiden, Prop. 4.7.1).
template <class K>
DrinfeldModule<K> det_module(const DrinfeldModule<K>& M) {
  check(M.rank() == 2, Err::RankMismatch, "determinant module needs rank 2");
  return DrinfeldModule<K>(M.k, M.t0, {M.k.neg(M.g[1])});
}

// Conjugation by c in K^*: g_i -> c^(1-q^i) g_i.  The defining identity
// c phi_T = phi'_T c is re-checked exactly.
template <class K>
DrinfeldModule<K> twist_module(const DrinfeldModule<K>& M, typename K::Elem c) {
  check(!M.k.is_zero(c), Err::ZeroTwist, "twist by zero");
  std::vector<typename K::Elem> h = M.g;
  for (size_t i = 0; i < h.size(); ++i) {
    typename K::Elem cq = frobq_iter(M.k, c, static_cast<unsigned>(i + 1));
    h[i] = M.k.mul(M.k.mul(c, M.k.inv(cq)), h[i]);
  }
  DrinfeldModule<K> out(M.k, M.t0, h);
  SkewPoly<K> lhs = sk_mul(M.k, sk_const(M.k, c), M.phi_T());
  SkewPoly<K> rhs = sk_mul(M.k, out.phi_T(), sk_const(M.k, c));
  check(sk_eq(M.k, lhs, rhs), Err::Internal, "twist conjugation identity failed");
  return out;
}

using ModuleF = DrinfeldModule<RatField>;
using ModuleRes = DrinfeldModule<TabField>;

// Reduction at a monic prime P coprime to all denominators and to the top
// coefficient: coefficients are reduced verbatim into k_P = F_q[T]/(P).
ModuleRes reduce_mod(const ModuleF& M, const Poly& P);

// Class of T in k_P.
uint16_t residue_of_T(const TabCtx& kp);
// Poly -> k_P and RatFunc -> k_P (BadReduction if the denominator vanishes).
uint16_t residue_of_poly(const TabCtx& kp, const Poly& f);
uint16_t residue_of_ratfunc(const TabCtx& kp, const RatFunc& f);

// Convenience: the standard rank-2 module phi_T = T + g1 tau + g2 tau^2 over F.
ModuleF make_rank2(const FqCtx& k, const RatFunc& g1, const RatFunc& g2);

}  // namespace drinfeld
