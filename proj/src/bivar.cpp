#include "drinfeld/bivar.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {

using TUP = UP<TabField>;

void bp_norm(BiPoly& f) {
  while (!f.cx.empty() && f.cx.back().empty()) f.cx.pop_back();
}

BiPoly bp_shift_up_x(const BiPoly& f, size_t n) {
  if (f.is_zero() || n == 0) return f;
  BiPoly g{f.k, {}};
  g.cx.resize(f.cx.size() + n);
  for (size_t i = 0; i < f.cx.size(); ++i) g.cx[i + n] = f.cx[i];
  return g;
}

BiPoly bp_scale_const(const TabField& tf, uint16_t c, const BiPoly& f) {
  if (tf.is_zero(c)) return BiPoly{f.k, {}};
  BiPoly g = f;
  for (auto& ci : g.cx) ci = up_scale(tf, c, ci);
  return g;
}

// Scale so the leading x-coefficient is monic in T.  Input must be nonzero.
BiPoly bp_normalize_lc(const TabField& tf, const BiPoly& f) {
  return bp_scale_const(tf, tf.inv(f.cx.back().back()), f);
}

// Fraction-free pseudo-remainder of a by b in x (deg_x a >= deg_x b >= 1).
BiPoly bp_prem(const TabField& tf, BiPoly a, const BiPoly& b) {
  (void)tf;
  const TUP& lb = b.cx.back();
  while (!a.is_zero() && a.deg_x() >= b.deg_x()) {
    TUP la = a.cx.back();
    size_t sh = static_cast<size_t>(a.deg_x() - b.deg_x());
    BiPoly t1 = bp_scale_T(lb, a);
    BiPoly t2 = bp_shift_up_x(bp_scale_T(la, b), sh);
    a = bp_sub(t1, t2);
    check(a.is_zero() || a.deg_x() < t1.deg_x(), Err::Internal,
          "pseudo-division failed to reduce the degree");
  }
  return a;
}

BiPoly bp_pth_root_x(const TabField& tf, const BiPoly& f) {
  unsigned p = tf.base_p();
  BiPoly g{f.k, {}};
  g.cx.resize(f.cx.size() / p + 1);
  for (size_t i = 0; i < f.cx.size(); ++i) {
    const TUP& c = f.cx[i];
    if (c.empty()) continue;
    check(i % p == 0, Err::Precondition,
          "inseparable polynomial is not a p-th power");
    TUP r(c.size() / p + 1, tf.zero());
    for (size_t j = 0; j < c.size(); ++j) {
      if (tf.is_zero(c[j])) continue;
      check(j % p == 0, Err::Precondition,
            "inseparable polynomial is not a p-th power");
      r[j / p] = tf.pth_root(c[j]);
    }
    up_norm(tf, r);
    g.cx[i / p] = std::move(r);
  }
  bp_norm(g);
  return g;
}

BiPoly bp_div_exact_or_throw(const BiPoly& f, const BiPoly& g) {
  auto q = bp_div_exact(f, g);
  check(q.has_value(), Err::Internal, "expected exact bivariate division");
  return *q;
}

// Squarefree decomposition in x over K(T), char-p Yun with p-th root
// recursion.  Input primitive in x; parts come out primitive and pairwise
// coprime, multiplicities ascending.
std::vector<BiFactor> bp_squarefree_decomposition(const TabField& tf, const BiPoly& f0) {
  std::vector<BiFactor> out;
  struct Item {
    BiPoly f;
    unsigned scale;
  };
  std::vector<Item> stack{{f0, 1}};
  while (!stack.empty()) {
    auto [f, scale] = stack.back();
    stack.pop_back();
    if (f.deg_x() <= 0) continue;
    BiPoly fp = bp_derivative_x(f);
    if (fp.is_zero()) {
      stack.push_back({bp_pth_root_x(tf, f), scale * tf.base_p()});
      continue;
    }
    BiPoly t = bp_gcd_x(f, fp);
    BiPoly v = bp_div_exact_or_throw(f, t);
    unsigned i = 1;
    while (v.deg_x() > 0) {
      BiPoly w = bp_gcd_x(t, v);
      BiPoly z = bp_div_exact_or_throw(v, w);
      if (z.deg_x() > 0) out.push_back({z, i * scale});
      v = std::move(w);
      t = bp_div_exact_or_throw(t, v);
      ++i;
    }
    if (t.deg_x() > 0) stack.push_back({bp_pth_root_x(tf, t), scale * tf.base_p()});
  }
  std::sort(out.begin(), out.end(),
            [](const BiFactor& a, const BiFactor& b) { return a.mult < b.mult; });
  return out;
}

// ---- truncated power series in T over K_s ----

TUP ser_trunc(const TabField& tf, TUP a, size_t B) {
  if (a.size() > B) a.resize(B);
  up_norm(tf, a);
  return a;
}

TUP ser_mul(const TabField& tf, const TUP& a, const TUP& b, size_t B) {
  return ser_trunc(tf, up_mul(tf, a, b), B);
}

TUP ser_inv(const TabField& tf, const TUP& a, size_t B) {
  check(!a.empty() && !tf.is_zero(a[0]), Err::DivisionByZero,
        "series inverse needs a unit constant term");
  TUP b{tf.inv(a[0])};
  size_t m = 1;
  while (m < B) {
    m = std::min(2 * m, B);
    TUP e = up_sub(tf, up_one(tf), ser_mul(tf, a, b, m));
    b = up_add(tf, b, ser_mul(tf, b, e, m));
    b = ser_trunc(tf, std::move(b), m);
  }
  return b;
}

// Polynomials in x whose coefficients are series mod T^prec.
using SP = std::vector<TUP>;

void sp_norm(SP& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}

int sp_deg(const SP& a) { return static_cast<int>(a.size()) - 1; }

SP sp_trunc(const TabField& tf, SP a, size_t B) {
  for (auto& c : a) c = ser_trunc(tf, std::move(c), B);
  sp_norm(a);
  return a;
}

SP sp_add(const TabField& tf, const SP& a, const SP& b) {
  SP r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = up_add(tf, a[i], b[i]);
    else
      r[i] = i < a.size() ? a[i] : b[i];
  }
  sp_norm(r);
  return r;
}

SP sp_sub(const TabField& tf, const SP& a, const SP& b) {
  SP r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    TUP x = i < a.size() ? a[i] : TUP{};
    TUP y = i < b.size() ? b[i] : TUP{};
    r[i] = up_sub(tf, x, y);
  }
  sp_norm(r);
  return r;
}

SP sp_mul(const TabField& tf, const SP& a, const SP& b, size_t B) {
  if (a.empty() || b.empty()) return {};
  SP r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].empty()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].empty()) continue;
      r[i + j] = up_add(tf, r[i + j], ser_mul(tf, a[i], b[j], B));
    }
  }
  sp_norm(r);
  return r;
}

bool sp_is_monic(const SP& a) {
  return !a.empty() && a.back().size() == 1 && a.back()[0] == 1;
}

// Division with remainder by a monic divisor, all coefficients mod T^B.
std::pair<SP, SP> sp_divmod_monic(const TabField& tf, SP r, const SP& m, size_t B) {
  check(sp_is_monic(m), Err::Internal, "series division needs a monic divisor");
  sp_norm(r);
  if (sp_deg(r) < sp_deg(m)) return {{}, std::move(r)};
  SP q(static_cast<size_t>(sp_deg(r) - sp_deg(m)) + 1);
  while (sp_deg(r) >= sp_deg(m)) {
    size_t sh = static_cast<size_t>(sp_deg(r) - sp_deg(m));
    TUP c = r.back();
    q[sh] = up_add(tf, q[sh], c);
    for (size_t i = 0; i < m.size(); ++i) {
      r[sh + i] = up_sub(tf, r[sh + i], ser_mul(tf, c, m[i], B));
    }
    check(r.back().empty(), Err::Internal, "series division leading term survived");
    sp_norm(r);
  }
  sp_norm(q);
  return {std::move(q), std::move(r)};
}

SP sp_from_univariate(const TUP& f) {
  SP a(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] != 0) a[i] = TUP{f[i]};
  }
  sp_norm(a);
  return a;
}

// One quadratic Hensel iteration ladder: lift F = g*h from precision 1 to B,
// maintaining the Bezout pair s*g + t*h = 1.  Everything monic in x.
void hensel_lift_pair(const TabField& tf, const SP& F, SP& g, SP& h, SP& s, SP& t,
                      size_t B) {
  SP one{TUP{1}};
  int dg = sp_deg(g), dh = sp_deg(h);
  size_t m = 1;
  while (m < B) {
    size_t m2 = std::min(2 * m, B);
    SP e = sp_sub(tf, sp_trunc(tf, F, m2), sp_mul(tf, g, h, m2));
    auto [q, r] = sp_divmod_monic(tf, sp_mul(tf, s, e, m2), h, m2);
    g = sp_trunc(tf, sp_add(tf, g, sp_add(tf, sp_mul(tf, t, e, m2), sp_mul(tf, q, g, m2))), m2);
    h = sp_trunc(tf, sp_add(tf, h, r), m2);
    check(sp_deg(g) == dg && sp_deg(h) == dh && sp_is_monic(g) && sp_is_monic(h),
          Err::Internal, "Hensel step disturbed the factor degrees");
    SP b = sp_sub(tf, sp_add(tf, sp_mul(tf, s, g, m2), sp_mul(tf, t, h, m2)), one);
    b = sp_trunc(tf, std::move(b), m2);
    auto [c, d] = sp_divmod_monic(tf, sp_mul(tf, s, b, m2), h, m2);
    s = sp_trunc(tf, sp_sub(tf, s, d), m2);
    t = sp_trunc(tf, sp_sub(tf, sp_sub(tf, t, sp_mul(tf, t, b, m2)), sp_mul(tf, c, g, m2)), m2);
    m = m2;
  }
}

// Lift the univariate factorization facs of F(x, 0) to precision B along a
// balanced factor tree (von zur Gathen & Gerhard, multifactor Hensel).
std::vector<SP> lift_tree(const TabField& tf, const SP& F, const std::vector<TUP>& facs,
                          size_t lo, size_t hi, size_t B) {
  if (hi - lo == 1) {
    SP out = sp_trunc(tf, F, B);
    check(sp_deg(out) == up_deg(facs[lo]), Err::Internal,
          "lifted factor degree mismatch");
    return {std::move(out)};
  }
  size_t mid = lo + (hi - lo) / 2;
  TUP g0 = up_one(tf), h0 = up_one(tf);
  for (size_t i = lo; i < mid; ++i) g0 = up_mul(tf, g0, facs[i]);
  for (size_t i = mid; i < hi; ++i) h0 = up_mul(tf, h0, facs[i]);
  auto e = up_egcd(tf, g0, h0);
  check(up_deg(e.d) == 0, Err::Internal, "modular factors are not coprime");
  SP g = sp_from_univariate(g0), h = sp_from_univariate(h0);
  SP s = sp_from_univariate(e.s), t = sp_from_univariate(e.t);
  hensel_lift_pair(tf, F, g, h, s, t, B);
  auto left = lift_tree(tf, g, facs, lo, mid, B);
  auto right = lift_tree(tf, h, facs, mid, hi, B);
  for (auto& x : right) left.push_back(std::move(x));
  return left;
}

// Recombine lifted modular factors into true factors of the (shifted,
// primitive, squarefree) polynomial f.  Subsets are tried in order of
// cardinality, so every hit is irreducible.
std::vector<BiPoly> recombine(const TabField& tf, const TabCtx& k, BiPoly f_cur,
                              const std::vector<SP>& lifted, size_t B) {
  std::vector<BiPoly> out;
  std::vector<size_t> active(lifted.size());
  for (size_t i = 0; i < active.size(); ++i) active[i] = i;
  uint64_t budget = 2'000'000;

  // Cheap necessary condition checked before the full subset product: the
  // constant coefficient of a true (lc-adjusted) candidate divides
  // lc * f[0] in K[T], because the candidate's content divides lc.
  TUP target = up_mul(tf, f_cur.cx.back(), f_cur.cx.front());

  size_t sz = 1;
  while (!active.empty() && 2 * sz <= active.size()) {
    std::vector<size_t> comb(sz);
    for (size_t i = 0; i < sz; ++i) comb[i] = i;
    bool hit = false;
    while (true) {
      bool skip = (2 * sz == active.size()) && comb[0] != 0;
      if (!skip) {
        check(budget-- > 0, Err::CapExceeded,
              "factor recombination exceeded the search budget");
        TUP c0 = f_cur.cx.back();
        for (size_t i : comb) {
          if (c0.empty()) break;
          c0 = ser_mul(tf, c0, lifted[active[i]][0], B);
        }
        if (!c0.empty() && !target.empty() && !up_rem(tf, target, c0).empty())
          goto next_subset;
        {
          SP cand = sp_from_univariate(TUP{1});
          for (size_t i : comb) cand = sp_mul(tf, cand, lifted[active[i]], B);
          // multiply back the current leading coefficient and clear to K[T][x]
          SP lc = {f_cur.cx.back()};
          cand = sp_mul(tf, cand, lc, B);
          BiPoly c{&k, cand};
          bp_norm(c);
          BiPoly prim = bp_primitive_x(c);
          if (auto quo = bp_div_exact(f_cur, prim)) {
            out.push_back(prim);
            f_cur = *quo;
            std::vector<size_t> rest;
            for (size_t i = 0, j = 0; i < active.size(); ++i) {
              if (j < comb.size() && comb[j] == i) {
                ++j;
                continue;
              }
              rest.push_back(active[i]);
            }
            active = std::move(rest);
            target = up_mul(tf, f_cur.cx.back(), f_cur.cx.front());
            hit = true;
            break;
          }
        }
      }
    next_subset:
      // next combination of indices into active
      size_t i = sz;
      while (i-- > 0) {
        if (comb[i] + (sz - i) < active.size()) {
          ++comb[i];
          for (size_t j = i + 1; j < sz; ++j) comb[j] = comb[j - 1] + 1;
          break;
        }
        if (i == 0) {
          i = SIZE_MAX;
          break;
        }
      }
      if (i == SIZE_MAX) break;
    }
    if (!hit) ++sz;
  }
  if (f_cur.deg_x() > 0) {
    out.push_back(bp_primitive_x(f_cur));
  } else {
    check(active.empty() && f_cur.deg_T() <= 0, Err::Internal,
          "recombination left an unexplained cofactor");
  }
  return out;
}

struct ScanHit {
  uint16_t t0;
  std::vector<TUP> facs;  // monic irreducible factors of f(x, t0), distinct
};

std::optional<ScanHit> scan_specializations(const TabField& tf, const BiPoly& g) {
  std::optional<ScanHit> best;
  for (uint32_t idx = 0; idx < g.k->card(); ++idx) {
    uint16_t t0 = static_cast<uint16_t>(idx);
    if (tf.is_zero(up_eval(tf, g.cx.back(), t0))) continue;
    TUP f0 = bp_eval_T(g, t0);
    TUP fp = up_derivative(tf, f0);
    if (fp.empty() || up_deg(up_gcd(tf, f0, fp)) > 0) continue;
    auto [unit, ufacs] = up_factor(tf, f0);
    (void)unit;
    std::vector<TUP> facs;
    for (auto& uf : ufacs) facs.push_back(uf.f);
    if (facs.size() == 1) return ScanHit{t0, std::move(facs)};
    if (!best || facs.size() < best->facs.size()) best = ScanHit{t0, std::move(facs)};
  }
  return best;
}

std::vector<BiPoly> factor_squarefree_primitive(const BiPoly& g);

// No specialization point in K_s works; factor over an extension field and
// descend by grouping the factors into Frobenius orbits.
std::vector<BiPoly> factor_by_descent(const BiPoly& g) {
  const TabCtx& k = *g.k;
  for (unsigned e = 2;; ++e) {
    uint64_t big = 1;
    for (unsigned i = 0; i < e; ++i) big *= k.card();
    check(big <= 4096, Err::CapExceeded,
          "no good specialization point within the field size cap");
    const TabCtx& kb = TabCtx::canonical(k.base(), k.s() * e);
    TabField tb(kb);
    // embed K_s into the big field via a root of its defining polynomial
    TUP mod(kb.s() + 1);
    {
      const std::vector<uint8_t>& m = k.modulus();
      mod.assign(m.size(), 0);
      for (size_t i = 0; i < m.size(); ++i) mod[i] = kb.embed(m[i]);
      up_norm(tb, mod);
    }
    auto roots = up_roots(tb, mod);
    check(!roots.empty(), Err::Internal, "subfield modulus has no root upstairs");
    uint16_t rho = *std::min_element(roots.begin(), roots.end());
    std::vector<uint16_t> fwd(k.card());
    std::map<uint16_t, uint16_t> back;
    for (uint32_t a = 0; a < k.card(); ++a) {
      auto d = k.digits(static_cast<uint16_t>(a));
      uint16_t v = 0;
      for (size_t i = d.size(); i-- > 0;) v = tb.add(tb.mul(v, rho), kb.embed(d[i]));
      fwd[a] = v;
      back[v] = static_cast<uint16_t>(a);
    }
    BiPoly gb{&kb, {}};
    gb.cx.resize(g.cx.size());
    for (size_t i = 0; i < g.cx.size(); ++i) {
      TUP c(g.cx[i].size());
      for (size_t j = 0; j < c.size(); ++j) c[j] = fwd[g.cx[i][j]];
      gb.cx[i] = std::move(c);
    }
    std::optional<ScanHit> up_there = scan_specializations(tb, gb);
    if (!up_there) continue;
    std::vector<BiPoly> facs_big = factor_squarefree_primitive(gb);
    // group into orbits of x -> x^{q^s}
    auto sigma = [&](const BiPoly& f) {
      BiPoly r = f;
      for (auto& c : r.cx)
        for (auto& v : c)
          for (unsigned i = 0; i < k.s(); ++i) v = kb.frobq(v);
      return bp_normalize_lc(tb, r);
    };
    std::vector<bool> used(facs_big.size(), false);
    std::vector<BiPoly> out;
    for (size_t i = 0; i < facs_big.size(); ++i) {
      if (used[i]) continue;
      BiPoly prod{&kb, {TUP{1}}};
      BiPoly cur = facs_big[i];
      while (true) {
        size_t at = SIZE_MAX;
        for (size_t j = 0; j < facs_big.size(); ++j) {
          if (!used[j] && bp_eq(facs_big[j], cur)) {
            at = j;
            break;
          }
        }
        if (at == SIZE_MAX) break;
        used[at] = true;
        prod = bp_mul(prod, facs_big[at]);
        cur = sigma(cur);
      }
      BiPoly down{&k, {}};
      down.cx.resize(prod.cx.size());
      for (size_t ci = 0; ci < prod.cx.size(); ++ci) {
        TUP c(prod.cx[ci].size());
        for (size_t j = 0; j < c.size(); ++j) {
          auto it = back.find(prod.cx[ci][j]);
          check(it != back.end(), Err::Internal,
                "Frobenius orbit product escaped the ground field");
          c[j] = it->second;
        }
        down.cx[ci] = std::move(c);
      }
      out.push_back(down);
    }
    return out;
  }
}

// g primitive in x, squarefree and separable over K(T), deg_x >= 1.
// Returns its irreducible factors over K(T), primitive in x with monic
// leading T-coefficient.
std::vector<BiPoly> factor_squarefree_primitive(const BiPoly& g) {
  const TabCtx& k = *g.k;
  TabField tf(k);
  if (g.deg_x() == 1) return {bp_normalize_lc(tf, g)};
  auto scan = scan_specializations(tf, g);
  if (scan && scan->facs.size() == 1) return {bp_normalize_lc(tf, g)};
  // A very fragmented specialization makes recombination expensive; a larger
  // coefficient field usually offers a point with fewer Frobenius orbits, so
  // prefer descent and keep the fragmented point only as a fallback.
  constexpr size_t kManyFactors = 10;
  if (!scan || scan->facs.size() > kManyFactors) {
    try {
      auto facs = factor_by_descent(g);
      for (auto& f : facs) f = bp_normalize_lc(tf, f);
      std::sort(facs.begin(), facs.end(), bp_less);
      return facs;
    } catch (const Error& err) {
      if (!scan || err.code() != Err::CapExceeded) throw;
    }
  }

  BiPoly shifted = bp_taylor_shift_T(g, scan->t0);
  const TUP& lc = shifted.cx.back();
  size_t B = static_cast<size_t>(shifted.deg_T()) + static_cast<size_t>(up_deg(lc)) + 1;
  TUP lcinv = ser_inv(tf, lc, B);
  SP F(shifted.cx.size());
  for (size_t i = 0; i < shifted.cx.size(); ++i)
    F[i] = ser_mul(tf, shifted.cx[i], lcinv, B);
  check(sp_is_monic(F), Err::Internal, "monic normalization failed");

  // modular factors of the monic specialization at T = 0
  TUP f0 = up_monic(tf, bp_eval_T(shifted, 0));
  auto [u0, ufacs] = up_factor(tf, f0);
  (void)u0;
  std::vector<TUP> facs;
  for (auto& uf : ufacs) facs.push_back(uf.f);
  check(facs.size() == scan->facs.size(), Err::Internal,
        "specialization factor count changed under the shift");

  auto lifted = lift_tree(tf, F, facs, 0, facs.size(), B);
  auto found = recombine(tf, k, shifted, lifted, B);
  for (auto& f : found) {
    f = bp_taylor_shift_T(f, tf.neg(scan->t0));
    f = bp_normalize_lc(tf, bp_primitive_x(f));
  }
  std::sort(found.begin(), found.end(), bp_less);
  return found;
}

}  // namespace

int BiPoly::deg_T() const {
  int d = -1;
  for (const auto& c : cx) d = std::max(d, up_deg(c));
  return d;
}

BiPoly bp_make(const TabCtx& k, std::vector<UP<TabField>> cx) {
  TabField tf(k);
  BiPoly f{&k, std::move(cx)};
  for (auto& c : f.cx) up_norm(tf, c);
  bp_norm(f);
  return f;
}

BiPoly bp_from_univariate_x(const TabCtx& k, const UP<TabField>& f) {
  BiPoly g{&k, {}};
  g.cx.resize(f.size());
  for (size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0) g.cx[i] = TUP{f[i]};
  bp_norm(g);
  return g;
}

BiPoly bp_from_univariate_T(const TabCtx& k, const UP<TabField>& c) {
  BiPoly g{&k, {}};
  if (!c.empty()) g.cx.push_back(c);
  return g;
}

bool bp_eq(const BiPoly& a, const BiPoly& b) {
  check(a.k == b.k, Err::ContextMismatch, "bivariate operands over different fields");
  return a.cx == b.cx;
}

bool bp_less(const BiPoly& a, const BiPoly& b) {
  if (a.cx.size() != b.cx.size()) return a.cx.size() < b.cx.size();
  TabField tf(*a.k);
  for (size_t i = a.cx.size(); i-- > 0;) {
    if (a.cx[i] != b.cx[i]) return up_less(tf, a.cx[i], b.cx[i]);
  }
  return false;
}

BiPoly bp_add(const BiPoly& a, const BiPoly& b) {
  check(a.k == b.k, Err::ContextMismatch, "bivariate operands over different fields");
  TabField tf(*a.k);
  BiPoly r{a.k, {}};
  r.cx.resize(std::max(a.cx.size(), b.cx.size()));
  for (size_t i = 0; i < r.cx.size(); ++i) {
    TUP x = i < a.cx.size() ? a.cx[i] : TUP{};
    TUP y = i < b.cx.size() ? b.cx[i] : TUP{};
    r.cx[i] = up_add(tf, x, y);
  }
  bp_norm(r);
  return r;
}

BiPoly bp_sub(const BiPoly& a, const BiPoly& b) {
  check(a.k == b.k, Err::ContextMismatch, "bivariate operands over different fields");
  TabField tf(*a.k);
  BiPoly r{a.k, {}};
  r.cx.resize(std::max(a.cx.size(), b.cx.size()));
  for (size_t i = 0; i < r.cx.size(); ++i) {
    TUP x = i < a.cx.size() ? a.cx[i] : TUP{};
    TUP y = i < b.cx.size() ? b.cx[i] : TUP{};
    r.cx[i] = up_sub(tf, x, y);
  }
  bp_norm(r);
  return r;
}

BiPoly bp_mul(const BiPoly& a, const BiPoly& b) {
  check(a.k == b.k, Err::ContextMismatch, "bivariate operands over different fields");
  if (a.is_zero() || b.is_zero()) return BiPoly{a.k, {}};
  TabField tf(*a.k);
  BiPoly r{a.k, {}};
  r.cx.resize(a.cx.size() + b.cx.size() - 1);
  for (size_t i = 0; i < a.cx.size(); ++i) {
    if (a.cx[i].empty()) continue;
    for (size_t j = 0; j < b.cx.size(); ++j) {
      if (b.cx[j].empty()) continue;
      r.cx[i + j] = up_add(tf, r.cx[i + j], up_mul(tf, a.cx[i], b.cx[j]));
    }
  }
  bp_norm(r);
  return r;
}

BiPoly bp_scale_T(const UP<TabField>& c, const BiPoly& f) {
  TabField tf(*f.k);
  if (c.empty() || f.is_zero()) return BiPoly{f.k, {}};
  BiPoly r = f;
  for (auto& ci : r.cx) ci = up_mul(tf, c, ci);
  return r;
}

BiPoly bp_derivative_x(const BiPoly& f) {
  TabField tf(*f.k);
  BiPoly r{f.k, {}};
  if (f.cx.size() <= 1) return r;
  r.cx.resize(f.cx.size() - 1);
  for (size_t i = 1; i < f.cx.size(); ++i) {
    unsigned m = static_cast<unsigned>(i % tf.base_p());
    TUP c{};
    for (unsigned j = 0; j < m; ++j) c = up_add(tf, c, f.cx[i]);
    r.cx[i - 1] = std::move(c);
  }
  bp_norm(r);
  return r;
}

UP<TabField> bp_eval_T(const BiPoly& f, uint16_t t0) {
  TabField tf(*f.k);
  TUP r(f.cx.size(), tf.zero());
  for (size_t i = 0; i < f.cx.size(); ++i) r[i] = up_eval(tf, f.cx[i], t0);
  up_norm(tf, r);
  return r;
}

BiPoly bp_taylor_shift_T(const BiPoly& f, uint16_t c) {
  TabField tf(*f.k);
  BiPoly r = f;
  for (auto& ci : r.cx) ci = up_taylor_shift(tf, ci, c);
  return r;
}

UP<TabField> bp_content_x(const BiPoly& f) {
  TabField tf(*f.k);
  TUP g{};
  for (const auto& c : f.cx) g = up_gcd(tf, g, c);
  return g;
}

BiPoly bp_primitive_x(const BiPoly& f) {
  if (f.is_zero()) return f;
  TabField tf(*f.k);
  TUP cont = bp_content_x(f);
  BiPoly r{f.k, {}};
  r.cx.resize(f.cx.size());
  for (size_t i = 0; i < f.cx.size(); ++i) {
    if (f.cx[i].empty()) continue;
    auto [q, rem] = up_divmod(tf, f.cx[i], cont);
    check(rem.empty(), Err::Internal, "content did not divide a coefficient");
    r.cx[i] = std::move(q);
  }
  return r;
}

std::optional<BiPoly> bp_div_exact(const BiPoly& f, const BiPoly& g) {
  check(!g.is_zero(), Err::DivisionByZero, "bivariate division by zero");
  check(f.k == g.k, Err::ContextMismatch, "bivariate operands over different fields");
  TabField tf(*f.k);
  BiPoly r = f;
  if (r.is_zero()) return r;
  if (r.deg_x() < g.deg_x()) return std::nullopt;
  BiPoly q{f.k, {}};
  q.cx.resize(static_cast<size_t>(r.deg_x() - g.deg_x()) + 1);
  while (!r.is_zero() && r.deg_x() >= g.deg_x()) {
    auto [qc, rc] = up_divmod(tf, r.cx.back(), g.cx.back());
    if (!rc.empty()) return std::nullopt;
    size_t sh = static_cast<size_t>(r.deg_x() - g.deg_x());
    q.cx[sh] = qc;
    r = bp_sub(r, bp_shift_up_x(bp_scale_T(qc, g), sh));
    if (!r.is_zero() && r.deg_x() >= static_cast<int>(sh) + g.deg_x())
      return std::nullopt;
  }
  if (!r.is_zero()) return std::nullopt;
  bp_norm(q);
  return q;
}

BiPoly bp_gcd_x(const BiPoly& a0, const BiPoly& b0) {
  check(a0.k == b0.k, Err::ContextMismatch, "bivariate operands over different fields");
  TabField tf(*a0.k);
  if (a0.is_zero()) return b0.is_zero() ? a0 : bp_normalize_lc(tf, bp_primitive_x(b0));
  if (b0.is_zero()) return bp_normalize_lc(tf, bp_primitive_x(a0));
  BiPoly a = bp_primitive_x(a0), b = bp_primitive_x(b0);
  if (a.deg_x() < b.deg_x()) std::swap(a, b);
  while (true) {
    if (b.deg_x() == 0) return BiPoly{a0.k, {TUP{1}}};
    BiPoly r = bp_prem(tf, a, b);
    if (r.is_zero()) return bp_normalize_lc(tf, b);
    a = std::move(b);
    b = bp_primitive_x(r);
  }
}

std::string BiPoly::str(const std::string& xvar) const {
  if (is_zero()) return "0";
  const TabCtx& ctx = *k;
  TabField tf(ctx);
  auto coeff_str = [&](const TUP& c) {
    std::string s;
    bool first = true;
    for (size_t j = c.size(); j-- > 0;) {
      if (c[j] == 0) continue;
      if (!first) s += "+";
      first = false;
      std::string es = ctx.str(c[j], "w");
      bool composite = es.find('+') != std::string::npos;
      if (j == 0) {
        s += composite ? "(" + es + ")" : es;
        continue;
      }
      if (c[j] != 1) s += (composite ? "(" + es + ")" : es) + "*";
      s += "T";
      if (j > 1) s += "^" + std::to_string(j);
    }
    return s;
  };
  std::string s;
  bool first = true;
  for (size_t i = cx.size(); i-- > 0;) {
    if (cx[i].empty()) continue;
    if (!first) s += "+";
    first = false;
    std::string cs = coeff_str(cx[i]);
    if (i == 0) {
      s += cs;
      continue;
    }
    if (!(cx[i].size() == 1 && cx[i][0] == 1)) {
      bool wrap = cs.find('+') != std::string::npos || cs.find('*') != std::string::npos ||
                  cs.find('^') != std::string::npos;
      s += (wrap ? "(" + cs + ")" : cs) + "*";
    }
    s += xvar;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

BiFactorization bivar_factor(const BiPoly& f) {
  check(!f.is_zero(), Err::Precondition, "factorization of zero");
  const TabCtx& k = *f.k;
  TabField tf(k);
  BiFactorization out;
  out.content = bp_content_x(f);
  out.content_factors = up_factor(tf, out.content).second;
  BiPoly prim = bp_primitive_x(f);
  if (prim.deg_x() >= 1) {
    for (auto& part : bp_squarefree_decomposition(tf, prim)) {
      for (auto& irr : factor_squarefree_primitive(part.f)) {
        out.factors.push_back({bp_normalize_lc(tf, irr), part.mult});
      }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const BiFactor& x, const BiFactor& y) { return bp_less(x.f, y.f); });
  }
  // recover the unit and verify the whole decomposition by remultiplying
  BiPoly P = bp_from_univariate_T(k, out.content);
  if (P.is_zero()) P = BiPoly{&k, {TUP{1}}};
  for (auto& [g, m] : out.factors)
    for (unsigned i = 0; i < m; ++i) P = bp_mul(P, g);
  uint16_t u = tf.mul(f.cx.back().back(), tf.inv(P.cx.back().back()));
  out.unit = u;
  check(bp_eq(bp_scale_const(tf, u, P), f), Err::Internal,
        "factor remultiplication mismatch");
  return out;
}

bool bivar_is_irreducible(const BiPoly& f) {
  if (f.is_zero()) return false;
  BiPoly prim = bp_primitive_x(f);
  if (prim.deg_x() < 1) return false;
  if (prim.deg_x() == 1) return true;
  TabField tf(*f.k);
  BiPoly fp = bp_derivative_x(prim);
  check(!fp.is_zero(), Err::Precondition,
        "cannot certify irreducibility of an inseparable polynomial");
  if (bp_gcd_x(prim, fp).deg_x() > 0) return false;
  return factor_squarefree_primitive(prim).size() == 1;
}

}  // namespace drinfeld
