#include "drinfeld/gl2.hpp"

namespace drinfeld {

std::string DualRing::str(Elem x) const {
  uint8_t a = unit_part(x), b = dual_part(x);
  if (b == 0) return k->str(a);
  std::string ub = b == 1 ? "u" : k->str(b) + "*u";
  if (a == 0) return ub;
  return k->str(a) + "+" + ub;
}

namespace {

MatGroup<DualRing> dual_by_lifting(const DualRing& D, bool special) {
  const FqCtx& k = *D.k;
  FqRing r(k);
  MatGroup<FqRing> base = special ? make_sl2(r) : make_gl2(r);
  MatGroup<DualRing> G(D);
  G.keys.reserve(static_cast<size_t>(base.order()) * k.q() * k.q() * k.q());
  unsigned q = k.q();
  for (uint32_t i = 0; i < base.order(); ++i) {
    Mat2 m0 = base.mat(i);
    Mat2D lift;
    for (int t = 0; t < 4; ++t) lift.e[t] = D.embed(uint8_t(m0.e[t]));
    // kernel factor 1 + uX; X runs over M_2(F_q), restricted to sl_2 when
    // the determinant must stay 1 (det(1+uX) = 1 + u tr X).
    for (unsigned x0 = 0; x0 < q; ++x0)
      for (unsigned x1 = 0; x1 < q; ++x1)
        for (unsigned x2 = 0; x2 < q; ++x2)
          for (unsigned x3f = 0; x3f < q; ++x3f) {
            uint8_t x3 = uint8_t(x3f);
            if (special) {
              if (x3f != 0) continue;
              x3 = k.neg(uint8_t(x0));
            }
            Mat2D ker = m2_make<DualRing>(
                D.make(1, uint8_t(x0)), D.make(0, uint8_t(x1)),
                D.make(0, uint8_t(x2)), D.make(1, x3));
            G.keys.push_back(m2_key(D, m2_mul(D, lift, ker)));
          }
  }
  mg_finalize(G);
  uint64_t expect = base.order();
  expect *= special ? uint64_t(q) * q * q : uint64_t(q) * q * q * q;
  check(G.order() == expect, Err::Internal, "lifted dual group has the wrong order");
  return G;
}

}  // namespace

MatGroup<DualRing> make_gl2_dual(const DualRing& D) { return dual_by_lifting(D, false); }

MatGroup<DualRing> make_sl2_dual(const DualRing& D) { return dual_by_lifting(D, true); }

std::vector<unsigned> cycle_pattern(const FqRing& r, const Mat2& m) {
  check(m2_invertible(r, m), Err::Precondition, "cycle pattern of a singular matrix");
  unsigned q = r.size();
  unsigned n = q * q;
  auto apply = [&](unsigned v) {
    uint16_t x = uint16_t(v / q), y = uint16_t(v % q);
    uint16_t nx = r.add(r.mul(m.e[0], x), r.mul(m.e[1], y));
    uint16_t ny = r.add(r.mul(m.e[2], x), r.mul(m.e[3], y));
    return unsigned(nx) * q + ny;
  };
  std::vector<bool> done(n, false);
  std::vector<unsigned> pattern;
  for (unsigned v = 1; v < n; ++v) {
    if (done[v]) continue;
    unsigned len = 0, w = v;
    do {
      done[w] = true;
      w = apply(w);
      ++len;
    } while (w != v);
    pattern.push_back(len);
  }
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

MatGroup<FqRing> gl2_small(unsigned q) {
  return make_gl2(FqRing(FqCtx::get(q)));
}

}  // namespace drinfeld
