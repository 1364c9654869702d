#include "drinfeld/tower.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "drinfeld/errors.hpp"
#include "drinfeld/factor.hpp"
#include "drinfeld/torsion.hpp"

namespace drinfeld {
namespace {

Poly poly_pow(Poly b, unsigned e) {
  Poly r = Poly::one(*b.k);
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Poly poly_lcm(const Poly& a, const Poly& b) {
  return ((a * b) / poly_gcd(a, b)).monic();
}

// Degree-1 table fields share their packing with FqCtx, so the two
// representations of F_q[T] convert verbatim.
UP<TabField> tup_of_poly(const Poly& a) {
  return UP<TabField>(a.c.begin(), a.c.end());
}

Poly poly_of_tup(const FqCtx& k, const UP<TabField>& a) {
  std::vector<uint8_t> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    check(a[i] < k.q(), Err::Internal, "table value escaped the base field");
    c[i] = static_cast<uint8_t>(a[i]);
  }
  return Poly(k, std::move(c));
}

// phi_a for every residue a mod a degree-d prime, indexed by packed digits.
std::vector<SkewPoly<RatField>> all_phi(const ModuleF& M, unsigned d) {
  unsigned q = M.k.base_q();
  uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) count *= q;
  std::vector<SkewPoly<RatField>> out;
  out.reserve(count);
  std::vector<uint8_t> digits(d);
  for (uint64_t idx = 0; idx < count; ++idx) {
    uint64_t v = idx;
    for (unsigned i = 0; i < d; ++i) {
      digits[i] = static_cast<uint8_t>(v % q);
      v /= q;
    }
    out.push_back(phi_of(M, digits));
  }
  return out;
}

template <class L>
bool span_contains(const L& l, const std::vector<typename L::Elem>& v,
                   const typename L::Elem& x) {
  for (auto& y : v)
    if (l.eq(y, x)) return true;
  return false;
}

template <class L>
struct LevelData {
  std::vector<typename L::Elem> basis;
  std::vector<typename L::Elem> span;
  UP<L> cofactor;  // Phi_x with the linear factors of all span points removed
  bool closed = false;
};

// Build the largest A/ell-submodule visible among the certified roots, check
// every point of it against Phi_x, and divide those points out.  The level is
// closed when nothing of Phi_x is left.
template <class L, class EmbedFn>
LevelData<L> analyze_level(const L& l, const RatField& F,
                           const std::vector<SkewPoly<RatField>>& phis,
                           EmbedFn embed, const UP<RatField>& Phix,
                           const std::vector<typename L::Elem>& roots,
                           unsigned rank, uint64_t full_count) {
  LevelData<L> out;
  out.span = {l.zero()};
  auto orbit = [&](const typename L::Elem& e) {
    std::vector<typename L::Elem> o;
    o.reserve(phis.size());
    for (auto& pa : phis) o.push_back(apply_skew(l, pa, embed, e));
    return o;
  };
  for (auto& r : roots) {
    if (out.basis.size() == rank) break;
    if (span_contains(l, out.span, r)) continue;
    out.basis.push_back(r);
    if (out.basis.size() == 1) {
      out.span = orbit(out.basis[0]);
    } else {
      auto o1 = orbit(out.basis[0]), o2 = orbit(out.basis[1]);
      out.span.clear();
      out.span.reserve(o1.size() * o2.size());
      for (auto& a : o1)
        for (auto& b : o2) out.span.push_back(l.add(a, b));
    }
  }

  for (auto& s : out.span) {
    if (l.is_zero(s)) continue;
    check(l.is_zero(up_eval_map(l, F, Phix, embed, s)), Err::Internal,
          "span point is not a torsion point");
  }
  for (size_t i = 0; i < out.span.size(); ++i)
    for (size_t j = i + 1; j < out.span.size(); ++j)
      check(!l.eq(out.span[i], out.span[j]), Err::Internal,
            "torsion points collide");

  UP<L> h(Phix.size());
  for (size_t i = 0; i < Phix.size(); ++i) h[i] = embed(Phix[i]);
  up_norm(l, h);
  h = up_monic(l, h);
  for (auto& s : out.span) {
    if (l.is_zero(s)) continue;
    auto [quo, rem] = up_divmod(l, h, UP<L>{l.neg(s), l.one()});
    check(up_deg(rem) < 0, Err::Internal, "span division left a remainder");
    h = std::move(quo);
  }
  out.cofactor = std::move(h);
  out.closed = out.span.size() == full_count && up_deg(out.cofactor) == 0;
  return out;
}

template <class K, class StrFn>
std::string up_str_with(const K& k, const UP<K>& f, StrFn cstr,
                        const std::string& var) {
  if (up_deg(f) < 0) return "0";
  std::string out;
  for (size_t i = f.size(); i-- > 0;) {
    if (k.is_zero(f[i])) continue;
    if (!out.empty()) out += "+";
    std::string cs = cstr(f[i]);
    bool comp = cs.find('+') != std::string::npos || cs.find('/') != std::string::npos;
    if (i == 0) {
      out += comp ? "(" + cs + ")" : cs;
      continue;
    }
    if (cs != "1") out += (comp ? "(" + cs + ")" : cs) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

constexpr size_t kSampleCap = 16;

template <class Elem, class StrFn>
void fill_samples(SplittingReport& rep, const std::vector<Elem>& span, StrFn str) {
  std::vector<std::string> printed;
  for (auto& s : span) printed.push_back(str(s));
  std::sort(printed.begin(), printed.end());
  if (printed.size() > kSampleCap) printed.resize(kSampleCap);
  rep.sample_points = std::move(printed);
}

}  // namespace

BiPoly bp_clear_denominators(const TabCtx& k1, const UP<RatField>& f, Poly* den_out) {
  check(k1.s() == 1, Err::Precondition,
        "denominator clearing expects the degree-1 table field");
  const FqCtx& kq = k1.base();
  Poly D = Poly::one(kq);
  for (auto& c : f)
    if (!c.is_zero()) D = poly_lcm(D, c.den);
  std::vector<UP<TabField>> cx(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    cx[i] = tup_of_poly(f[i].num * (D / f[i].den));
  }
  if (den_out) *den_out = D;
  return bp_make(k1, std::move(cx));
}

UP<RatField> up_from_bp_monic(const FqCtx& k, const BiPoly& g) {
  RatField F(k);
  UP<RatField> out(g.cx.size(), F.zero());
  for (size_t i = 0; i < g.cx.size(); ++i) out[i] = RatFunc(poly_of_tup(k, g.cx[i]));
  up_norm(F, out);
  return up_monic(F, out);
}

std::vector<std::pair<UP<RatField>, unsigned>> factor_over_F(const FqCtx& k,
                                                             const UP<RatField>& f) {
  RatField F(k);
  check(up_deg(f) >= 1, Err::Precondition, "factoring a constant over F_q(T)");
  const TabCtx& k1 = TabCtx::canonical(k, 1);
  BiFactorization bf = bivar_factor(bp_clear_denominators(k1, f));
  std::vector<std::pair<UP<RatField>, unsigned>> out;
  out.reserve(bf.factors.size());
  for (auto& fac : bf.factors)
    out.emplace_back(up_from_bp_monic(k, fac.f), fac.mult);
  return out;
}

std::pair<UP<RatField>, Poly> integral_rescale(const FqCtx& k, const UP<RatField>& g) {
  RatField F(k);
  int n = up_deg(g);
  check(n >= 1 && F.eq(g.back(), F.one()), Err::Precondition,
        "rescaling expects a monic nonconstant polynomial");
  const TabCtx& k1 = TabCtx::canonical(k, 1);
  BiPoly gi = bp_primitive_x(bp_clear_denominators(k1, g));
  check(gi.deg_x() == n, Err::Internal, "denominator clearing changed the degree");
  std::vector<Poly> u(n + 1, Poly::zero(k));
  for (int i = 0; i <= n; ++i) u[i] = poly_of_tup(k, gi.cx[i]);
  for (const Poly& v : monic_divisors(u[n])) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      ok = ((u[i] * poly_pow(v, static_cast<unsigned>(n - i))) % u[n]).is_zero();
    if (!ok) continue;
    UP<RatField> m(n + 1, F.zero());
    for (int i = 0; i <= n; ++i)
      m[i] = RatFunc((u[i] * poly_pow(v, static_cast<unsigned>(n - i))) / u[n]);
    up_norm(F, m);
    check(up_deg(m) == n && F.eq(m.back(), F.one()), Err::Internal,
          "rescaled minimal polynomial is not monic");
    return {m, v};
  }
  raise(Err::Internal, "no monic divisor cleared the leading coefficient");
}

TragerOutcome trager_factor(const ExtF& L, const UP<ExtF>& f) {
  const RatField& F = L.base;
  const FqCtx& kq = *F.kq;
  unsigned q = kq.q();
  unsigned n1 = L.ext_deg();
  int nf = up_deg(f);
  check(nf >= 1, Err::Precondition, "Trager factorization of a constant");
  check(L.eq(f.back(), L.one()), Err::Precondition,
        "Trager factorization expects a monic polynomial");
  for (auto& c : L.m)
    check(c.is_poly(), Err::Precondition, "Trager norms need an integral modulus");
  check(up_deg(up_gcd(L, f, up_derivative(L, f))) == 0, Err::Precondition,
        "Trager factorization expects a squarefree polynomial");

  TragerOutcome out;
  if (nf == 1) {
    out.factors = {f};
    out.norm = UP<RatField>{};
    return out;
  }

  const TabCtx& k1 = TabCtx::canonical(kq, 1);
  std::vector<Poly> mrows(n1 + 1, Poly::zero(kq));
  int dTm = 0;
  for (unsigned j = 0; j <= n1; ++j) {
    mrows[j] = L.m[j].as_poly();
    dTm = std::max(dTm, mrows[j].deg_or(0));
  }

  // Shifts c T^t z^j: the z-powers alone can cycle (z may generate a tiny
  // constant subfield), so the T-powers keep the ladder from exhausting.
  unsigned shift_index = 0;
  for (unsigned tpow = 0; tpow <= 6; ++tpow) {
  ExtF::Elem tmul = L.embed(rf_pow(RatFunc::T(kq), tpow));
  for (unsigned jpow = 1; jpow <= 6; ++jpow) {
    ExtF::Elem zj = L.mul(L.pow(L.gen(), jpow), tmul);
    for (uint8_t cmul = 1; cmul < q; ++cmul, ++shift_index) {
      ExtF::Elem w = L.mul(L.scalar(cmul), zj);
      UP<ExtF> G = up_taylor_shift(L, f, L.neg(w));

      Poly D = Poly::one(kq);
      for (auto& gi : G)
        for (auto& cz : gi)
          if (!cz.is_zero()) D = poly_lcm(D, cz.den);
      std::vector<std::vector<Poly>> Gint(G.size());
      int dzG = 0, dTG = 0;
      for (size_t i = 0; i < G.size(); ++i) {
        Gint[i].assign(n1, Poly::zero(kq));
        for (size_t jz = 0; jz < G[i].size(); ++jz) {
          if (G[i][jz].is_zero()) continue;
          Poly pij = G[i][jz].num * (D / G[i][jz].den);
          dzG = std::max(dzG, static_cast<int>(jz));
          dTG = std::max(dTG, pij.deg_or(0));
          Gint[i][jz] = std::move(pij);
        }
      }

      int dx = static_cast<int>(n1) * nf;
      int dTbound = dzG * dTm + static_cast<int>(n1) * dTG;
      int degD = D.deg_or(0);
      uint64_t need = std::max<uint64_t>(dx + 1, dTbound + degD + 1);
      uint64_t cs = q;
      unsigned s = 1;
      while (cs < need) {
        cs *= q;
        ++s;
        check(cs <= 4096, Err::CapExceeded,
              "norm interpolation grid exceeds the table field cap");
      }
      const TabCtx& Ks = TabCtx::canonical(kq, s);
      TabField tfs(Ks);
      auto eval_poly = [&](const Poly& P, uint16_t t0) -> uint16_t {
        uint16_t acc = 0;
        for (size_t i = P.c.size(); i-- > 0;)
          acc = tfs.add(tfs.mul(acc, t0), Ks.embed(P.c[i]));
        return acc;
      };

      std::vector<uint16_t> tnodes;
      for (uint64_t idx = 0; idx < cs && tnodes.size() <= static_cast<size_t>(dTbound);
           ++idx) {
        uint16_t t0 = static_cast<uint16_t>(idx);
        if (eval_poly(D, t0) != 0) tnodes.push_back(t0);
      }
      check(tnodes.size() == static_cast<size_t>(dTbound) + 1, Err::Internal,
            "interpolation grid ran out of nodes");
      std::vector<uint16_t> xnodes(dx + 1);
      for (int i = 0; i <= dx; ++i) xnodes[i] = static_cast<uint16_t>(i);

      // one x-interpolated slice of Res_z(m, G) per t-node
      std::vector<UP<TabField>> slices(tnodes.size());
      for (size_t ti = 0; ti < tnodes.size(); ++ti) {
        uint16_t t0 = tnodes[ti];
        UP<TabField> mt(n1 + 1);
        for (unsigned j = 0; j <= n1; ++j) mt[j] = eval_poly(mrows[j], t0);
        up_norm(tfs, mt);
        std::vector<std::vector<uint16_t>> A(n1, std::vector<uint16_t>(G.size(), 0));
        for (size_t i = 0; i < G.size(); ++i)
          for (unsigned jz = 0; jz < n1; ++jz)
            A[jz][i] = eval_poly(Gint[i][jz], t0);
        std::vector<uint16_t> vals(xnodes.size());
        for (size_t xi = 0; xi < xnodes.size(); ++xi) {
          uint16_t x0 = xnodes[xi];
          UP<TabField> gz(n1);
          for (unsigned jz = 0; jz < n1; ++jz) {
            uint16_t acc = 0;
            for (size_t i = G.size(); i-- > 0;)
              acc = tfs.add(tfs.mul(acc, x0), A[jz][i]);
            gz[jz] = acc;
          }
          up_norm(tfs, gz);
          vals[xi] = up_resultant(tfs, mt, gz);
        }
        std::vector<uint16_t> xelems(xnodes.begin(), xnodes.end());
        slices[ti] = up_interpolate(tfs, xelems, vals);
      }

      // interpolate each x-coefficient in T; the result is D^n1 times the
      // (rational) norm, so it is factored as is and the unit is dropped by
      // taking primitive parts
      std::vector<uint16_t> telems(tnodes.begin(), tnodes.end());
      std::vector<UP<TabField>> nrows(dx + 1);
      for (int i = 0; i <= dx; ++i) {
        std::vector<uint16_t> vals(tnodes.size());
        for (size_t ti = 0; ti < tnodes.size(); ++ti)
          vals[ti] = i < static_cast<int>(slices[ti].size()) ? slices[ti][i] : 0;
        UP<TabField> row = up_interpolate(tfs, telems, vals);
        nrows[i] = tup_of_poly(poly_of_tup(kq, row));
      }

      BiPoly N = bp_make(k1, std::move(nrows));
      check(N.deg_x() == dx, Err::Internal, "norm lost its leading term");
      check(poly_of_tup(kq, N.cx.back()) == poly_pow(D, n1), Err::Internal,
            "norm leading coefficient is not the cleared denominator");
      BiPoly Np = bp_derivative_x(N);
      if (Np.is_zero() || bp_gcd_x(N, Np).deg_x() > 0) continue;  // norm not squarefree

      BiFactorization bf = bivar_factor(N);
      out.norm = up_from_bp_monic(kq, N);
      out.shift_index = shift_index;
      if (bf.factors.size() == 1) {
        check(bf.factors[0].mult == 1, Err::Internal, "squarefree norm with multiplicity");
        out.factors = {f};
        return out;
      }

      UP<ExtF> rest = f;
      for (auto& fac : bf.factors) {
        check(fac.mult == 1, Err::Internal, "squarefree norm with multiplicity");
        UP<RatField> uk = up_from_bp_monic(kq, fac.f);
        // u_k(x + w) mod f by Horner, then gcd with f over L
        UP<ExtF> acc;
        UP<ExtF> xw{w, L.one()};
        for (size_t i = uk.size(); i-- > 0;) {
          acc = up_rem(L, up_mul(L, acc, xw), f);
          acc = up_add(L, acc, up_const(L, L.embed(uk[i])));
        }
        UP<ExtF> hk = up_gcd(L, f, acc);
        if (up_deg(hk) < 1) continue;
        out.factors.push_back(hk);
        auto [quo, rem] = up_divmod(L, rest, hk);
        check(up_deg(rem) < 0, Err::Internal, "norm factor did not divide the input");
        rest = std::move(quo);
      }
      check(up_deg(rest) == 0 && L.eq(rest[0], L.one()), Err::Internal,
            "norm factors do not multiply back to the input");
      check(out.factors.size() > 1, Err::Internal,
            "a reducible norm produced a single factor");
      return out;
    }
  }
  raise(Err::NormDegenerate, "no shift in the ladder produced a squarefree norm");
}

SplittingReport splitting_field(const ModuleF& M, const Poly& ell0, uint64_t degree_cap) {
  const FqCtx& kq = *M.k.kq;
  RatField F(kq);
  Poly ell = ell0.monic();
  check(ell.deg_or(0) >= 1 && up_is_irreducible(ell.field(), ell.c), Err::Precondition,
        "torsion level must be a monic prime of F_q[T]");
  unsigned d = static_cast<unsigned>(ell.c.size()) - 1;
  unsigned r = M.rank();
  check(r <= 2, Err::RankMismatch, "splitting fields are computed for ranks 1 and 2");
  uint64_t full = 1;
  for (unsigned i = 0; i < r * d; ++i) {
    full *= kq.q();
    check(full <= 81, Err::SizeLimit,
          "torsion module exceeds the 81-point enumeration limit");
  }
  if (degree_cap == 0) {
    // |GL_r(A/ell)| = prod_{i<r} (Q^r - Q^i) with Q = q^d
    uint64_t Q = 1;
    for (unsigned i = 0; i < d; ++i) Q *= kq.q();
    uint64_t Qr = 1;
    for (unsigned i = 0; i < r; ++i) Qr *= Q;
    degree_cap = 1;
    uint64_t Qi = 1;
    for (unsigned i = 0; i < r; ++i) {
      degree_cap *= Qr - Qi;
      Qi *= Q;
    }
  }
  auto cap_check = [&](uint64_t deg) {
    check(deg <= degree_cap, Err::CapExceeded,
          "splitting tower degree exceeds the configured cap");
  };

  UP<RatField> Phi = torsion_polynomial(M, ell.c);
  check(F.is_zero(Phi[0]), Err::Internal, "torsion polynomial has a constant term");
  UP<RatField> Phix(Phi.begin() + 1, Phi.end());
  check(!F.is_zero(Phix[0]), Err::InseparableModulus,
        "torsion polynomial is inseparable over the base");
  Phix = up_monic(F, Phix);

  auto phis = all_phi(M, d);
  SplittingReport rep;

  auto fac0 = factor_over_F(kq, Phix);
  std::vector<RatFunc> roots0;
  for (auto& [g, mult] : fac0) {
    check(mult == 1, Err::Internal, "separable torsion polynomial is not squarefree");
    rep.base_factor_degrees.push_back(static_cast<unsigned>(up_deg(g)));
    if (up_deg(g) == 1) roots0.push_back(F.neg(g[0]));
  }
  std::sort(rep.base_factor_degrees.begin(), rep.base_factor_degrees.end());

  auto id_embed = [](const RatFunc& c) { return c; };
  auto A0 = analyze_level(F, F, phis, id_embed, Phix, roots0, r, full);
  if (A0.closed) {
    rep.total_degree = 1;
    rep.split = true;
    rep.points = full;
    fill_samples(rep, A0.span, [&](const RatFunc& s) { return F.str(s); });
    return rep;
  }

  const UP<RatField>* gsel = nullptr;
  for (auto& [g, mult] : fac0)
    if (up_deg(g) >= 2) {
      gsel = &g;
      break;
    }
  check(gsel != nullptr, Err::Internal,
        "torsion is not rational yet every factor is linear");

  auto [m1, v1] = integral_rescale(kq, *gsel);
  ExtF L1(F, m1);
  ExtF::Elem lambda = L1.mul(L1.inv(L1.embed(RatFunc(v1))), L1.gen());
  auto emb1 = [&L1](const RatFunc& c) { return L1.embed(c); };
  check(L1.is_zero(up_eval_map(L1, F, Phix, emb1, lambda)), Err::Internal,
        "rescaled generator is not a torsion point");
  cap_check(L1.ext_deg());
  rep.levels.push_back({"z", up_str(F, m1, "z"), static_cast<unsigned>(up_deg(m1))});

  std::vector<ExtF::Elem> roots1;
  roots1.push_back(lambda);
  for (auto& r0 : roots0) roots1.push_back(L1.embed(r0));

  auto A1 = analyze_level(L1, F, phis, emb1, Phix, roots1, r, full);
  std::optional<TragerOutcome> trag;
  if (!A1.closed) {
    trag = trager_factor(L1, A1.cofactor);
    bool grew = false;
    for (auto& fk : trag->factors)
      if (up_deg(fk) == 1) {
        roots1.push_back(L1.neg(fk[0]));
        grew = true;
      }
    if (grew) A1 = analyze_level(L1, F, phis, emb1, Phix, roots1, r, full);
  }
  auto l1_str = [&](const ExtF::Elem& s) { return L1.str_var(s, "z"); };
  if (A1.closed) {
    rep.total_degree = L1.ext_deg();
    rep.split = true;
    rep.points = full;
    fill_samples(rep, A1.span, l1_str);
    return rep;
  }

  const UP<ExtF>* m2 = nullptr;
  for (auto& fk : trag->factors)
    if (up_deg(fk) >= 2) {
      m2 = &fk;
      break;
    }
  check(m2 != nullptr, Err::Internal,
        "open level whose cofactor has only linear factors");
  ExtF2 L2(L1, *m2);
  auto emb2 = [&](const RatFunc& c) { return L2.embed(L1.embed(c)); };
  cap_check(static_cast<uint64_t>(L1.ext_deg()) * static_cast<unsigned>(up_deg(*m2)));
  rep.levels.push_back({"y", up_str_with(L1, *m2, l1_str, "y"),
                        static_cast<unsigned>(up_deg(*m2))});

  std::vector<ExtF2::Elem> roots2;
  roots2.push_back(L2.gen());
  for (auto& r1 : roots1) roots2.push_back(L2.embed(r1));

  auto A2 = analyze_level(L2, F, phis, emb2, Phix, roots2, r, full);
  if (!A2.closed)
    raise(Err::CapExceeded, "splitting tower exceeded two extension steps");
  rep.total_degree = L1.ext_deg() * static_cast<unsigned>(up_deg(*m2));
  rep.split = true;
  rep.points = full;
  fill_samples(rep, A2.span, [&](const ExtF2::Elem& s) {
    return up_str_with(L1, s, l1_str, "y");
  });
  return rep;
}

unsigned splitting_field_degree(const ModuleF& M, const Poly& ell, uint64_t degree_cap) {
  return splitting_field(M, ell, degree_cap).total_degree;
}

}  // namespace drinfeld
