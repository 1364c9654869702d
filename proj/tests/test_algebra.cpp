#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "drinfeld/ext.hpp"
#include "drinfeld/factor.hpp"
#include "drinfeld/linalg.hpp"
#include "drinfeld/module.hpp"
#include "drinfeld/ratfunc.hpp"
#include "drinfeld/tab.hpp"

using namespace drinfeld;

TEST_CASE("F4 arithmetic against hand values") {
  const FqCtx& k = FqCtx::get(4);
  // w^2 = w+1 under the Conway modulus x^2+x+1
  CHECK(k.mul(2, 2) == 3);
  CHECK(k.mul(2, 3) == 1);  // w * w^2 = w^3 = 1
  CHECK(k.mult_order(2) == 3);
  CHECK(k.frobp(2) == 3);
  CHECK(k.add(2, 3) == 1);
  CHECK(k.inv(2) == 3);
  CHECK(k.str(3) == "w+1");
  CHECK(k.str(2) == "w");
  CHECK(k.str(0) == "0");
}

TEST_CASE("F3 and F9 arithmetic") {
  const FqCtx& k3 = FqCtx::get(3);
  CHECK(k3.inv(2) == 2);
  CHECK(k3.neg(1) == 2);
  CHECK(k3.gen() == 2);
  CHECK(k3.mult_order(2) == 2);
  CHECK_FALSE(k3.is_square(2));

  const FqCtx& k9 = FqCtx::get(9);
  // x^2+2x+2: w^2 = w+1, w^3 = 2w+1
  CHECK(k9.mul(3, 3) == 4);
  CHECK(k9.pow(3, 3) == 7);
  CHECK(k9.frobp(3) == 7);
  CHECK(k9.mult_order(3) == 8);
  CHECK(k9.str(7) == "2*w+1");
  // squares are the even powers of w
  CHECK(k9.is_square(k9.mul(3, 3)));
  CHECK_FALSE(k9.is_square(3));
}

TEST_CASE("F8 and F16 generators") {
  const FqCtx& k8 = FqCtx::get(8);
  CHECK(k8.pow(2, 3) == 3);  // w^3 = w+1
  CHECK(k8.mult_order(2) == 7);
  const FqCtx& k16 = FqCtx::get(16);
  CHECK(k16.pow(2, 4) == 3);  // w^4 = w+1
  CHECK(k16.mult_order(2) == 15);
  CHECK_THROWS_AS(FqCtx::get(5), Error);
  CHECK_THROWS_AS(FqCtx::get(27), Error);
}

TEST_CASE("field axioms on random triples, all supported q") {
  for (unsigned q : {2u, 3u, 4u, 8u, 9u, 16u}) {
    const FqCtx& k = FqCtx::get(q);
    std::mt19937_64 rng(q);
    for (int trial = 0; trial < 200; ++trial) {
      uint8_t a = rng() % q, b = rng() % q, c = rng() % q;
      CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
      CHECK(k.mul(k.mul(a, b), c) == k.mul(a, k.mul(b, c)));
      CHECK(k.frobp(k.add(a, b)) == k.add(k.frobp(a), k.frobp(b)));
      if (a) CHECK(k.mul(a, k.inv(a)) == 1);
    }
  }
}

static Poly rand_poly(const FqCtx& k, std::mt19937_64& rng, int deg) {
  std::vector<uint8_t> c(deg + 1);
  for (auto& x : c) x = rng() % k.q();
  return Poly(k, c);
}

TEST_CASE("polynomial division and gcd invariants") {
  const FqCtx& k = FqCtx::get(9);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Poly f = rand_poly(k, rng, 1 + rng() % 9);
    Poly g = rand_poly(k, rng, 1 + rng() % 6);
    if (g.is_zero()) continue;
    Poly q = f / g, r = f % g;
    CHECK(q * g + r == f);
    CHECK(r.deg_or(-1) < g.deg_or(0));
    Poly d = poly_gcd(f, g);
    if (!f.is_zero()) CHECK((f % d).is_zero());
    CHECK((g % d).is_zero());
  }
}

TEST_CASE("egcd, modular inverse, interpolation") {
  const FqCtx& kc = FqCtx::get(4);
  FqField k(kc);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Poly f = rand_poly(kc, rng, 1 + rng() % 6);
    Poly g = rand_poly(kc, rng, 1 + rng() % 6);
    if (f.is_zero() || g.is_zero()) continue;
    auto e = up_egcd(k, f.c, g.c);
    CHECK(up_eq(k, e.d, up_add(k, up_mul(k, e.s, f.c), up_mul(k, e.t, g.c))));
  }
  // interpolation round trip through 4 nodes
  std::vector<uint8_t> xs = {0, 1, 2, 3}, ys = {3, 1, 0, 2};
  auto f = up_interpolate(k, xs, ys);
  for (int i = 0; i < 4; ++i) CHECK(up_eval(k, f, xs[i]) == ys[i]);
}

TEST_CASE("resultant matches the root product formula") {
  const FqCtx& kc = FqCtx::get(9);
  FqField k(kc);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    // f = prod (x - a_i), monic with known roots
    int n = 1 + rng() % 4;
    UP<FqField> f = up_one(k);
    std::vector<uint8_t> roots;
    for (int i = 0; i < n; ++i) {
      uint8_t a = rng() % 9;
      roots.push_back(a);
      f = up_mul(k, f, UP<FqField>{kc.neg(a), 1});
    }
    Poly g = rand_poly(kc, rng, rng() % 4);
    if (g.is_zero()) continue;
    uint8_t expect = 1;
    for (uint8_t a : roots) expect = kc.mul(expect, g.eval(a));
    CHECK(up_resultant(k, f, g.c) == expect);
    // swap symmetry: Res(g,f) = (-1)^(nm) Res(f,g)
    uint8_t sgn = ((n * g.deg_or(0)) % 2) ? kc.neg(1) : 1;
    CHECK(up_resultant(k, g.c, f) == kc.mul(sgn, expect));
  }
}

TEST_CASE("irreducible counts match the necklace formula") {
  // (1/n) sum_{d|n} mu(d) q^(n/d)
  auto counts = [](const FqCtx& k, unsigned dmax) {
    std::vector<size_t> by_deg(dmax + 1, 0);
    for (auto& P : enumerate_primes(k, 1, dmax)) by_deg[P.deg_or(0)]++;
    return by_deg;
  };
  auto c2 = counts(FqCtx::get(2), 6);
  CHECK(c2[1] == 2);
  CHECK(c2[2] == 1);
  CHECK(c2[3] == 2);
  CHECK(c2[4] == 3);
  CHECK(c2[5] == 6);
  CHECK(c2[6] == 9);
  auto c3 = counts(FqCtx::get(3), 6);
  CHECK(c3[1] == 3);
  CHECK(c3[2] == 3);
  CHECK(c3[3] == 8);
  CHECK(c3[4] == 18);
  CHECK(c3[5] == 48);
  CHECK(c3[6] == 116);
  auto c4 = counts(FqCtx::get(4), 4);
  CHECK(c4[1] == 4);
  CHECK(c4[2] == 6);
  CHECK(c4[3] == 20);
  CHECK(c4[4] == 60);
}

TEST_CASE("T^9 - T splits into the primes of degree dividing 2 over F3") {
  const FqCtx& k = FqCtx::get(3);
  std::vector<uint8_t> coeffs(10, 0);
  coeffs[9] = 1;
  coeffs[1] = 2;  // T^9 - T
  Poly f(k, coeffs);
  auto [unit, parts] = factor_poly(f);
  CHECK(unit == 1);
  CHECK(parts.size() == 6);
  Poly prod = Poly::one(k);
  for (auto& pf : parts) {
    CHECK(pf.mult == 1);
    CHECK(is_irreducible(pf.f));
    CHECK(pf.f.deg_or(0) <= 2);
    prod = prod * pf.f;
  }
  CHECK(prod == f);
}

TEST_CASE("factorization re-multiplies, random inputs") {
  for (unsigned q : {2u, 3u, 4u, 9u}) {
    const FqCtx& k = FqCtx::get(q);
    std::mt19937_64 rng(100 + q);
    for (int trial = 0; trial < 200; ++trial) {
      Poly f = rand_poly(k, rng, 1 + rng() % 10);
      if (f.deg_or(0) < 1) continue;
      auto [unit, parts] = factor_poly(f);
      Poly prod = Poly::constant(k, unit);
      for (auto& pf : parts) {
        CHECK(is_irreducible(pf.f));
        CHECK(pf.f.is_monic());
        for (unsigned m = 0; m < pf.mult; ++m) prod = prod * pf.f;
      }
      CHECK(prod == f);
    }
  }
}

TEST_CASE("squarefree decomposition handles p-th powers") {
  const FqCtx& k = FqCtx::get(3);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    // assemble f = prod part^mult with random small parts
    Poly f = Poly::one(k);
    int nparts = 1 + rng() % 3;
    for (int i = 0; i < nparts; ++i) {
      Poly part = rand_poly(k, rng, 1 + rng() % 3);
      if (part.deg_or(0) < 1) continue;
      unsigned mult = 1 + rng() % 6;  // includes multiples of 3
      for (unsigned m = 0; m < mult; ++m) f = f * part;
    }
    if (f.deg_or(0) < 1) continue;
    auto parts = up_squarefree_decomposition(f.field(), f.c);
    Poly prod = Poly::constant(k, f.lc());
    for (auto& pf : parts) {
      Poly pp = f.wrap(pf.f);
      CHECK(is_squarefree(pp));
      for (unsigned m = 0; m < pf.mult; ++m) prod = prod * pp;
    }
    CHECK(prod == f);
  }
}

TEST_CASE("rational function normalization and valuations") {
  const FqCtx& k = FqCtx::get(3);
  Poly T = Poly::T(k);
  Poly Tp1 = T + Poly::one(k);
  RatFunc f(T * T + Poly::constant(k, 2) * T, Tp1);  // (T^2+2T)/(T+1)
  CHECK(f.str() == "(T^2+2*T)/(T+1)");
  CHECK(f.valuation(T) == 1);
  CHECK(f.valuation(Tp1) == -1);
  CHECK(f.valuation_inf() == -1);

  // cancellation: (T^2-1)/(T-1) = T+1
  RatFunc g(T * T - Poly::one(k), T - Poly::one(k));
  CHECK(g.is_poly());
  CHECK(g.as_poly() == Tp1);

  // denominators normalize monic: T/(2T+1) = 2T/(T+2)
  RatFunc h(T, Poly(k, {1, 2}));
  CHECK(h.den.is_monic());
  CHECK(h.str() == "(2*T)/(T+2)");

  CHECK_THROWS_AS(RatFunc::zero(k).valuation(T), Error);
}

TEST_CASE("degree formula: valuations sum to zero against the infinite place") {
  const FqCtx& k = FqCtx::get(3);
  std::mt19937_64 rng(23);
  auto primes = enumerate_primes(k, 1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    Poly n = rand_poly(k, rng, 1 + rng() % 5);
    Poly d = rand_poly(k, rng, 1 + rng() % 5);
    if (n.is_zero() || d.is_zero()) continue;
    RatFunc f(n, d);
    if (f.is_zero()) continue;
    long long total = f.valuation_inf();
    for (auto& P : primes) total += static_cast<long long>(P.deg_or(0)) * f.valuation(P);
    CHECK(total == 0);
  }
}

TEST_CASE("TabCtx residue field of T^2+1 over F3") {
  const FqCtx& k = FqCtx::get(3);
  const TabCtx& kp = TabCtx::get(k, {1, 0, 1});  // T^2+1
  CHECK(kp.card() == 9);
  uint16_t t = residue_of_T(kp);
  CHECK(kp.mul(t, t) == kp.embed(2));  // t^2 = -1
  // frobq fixes exactly the prime field
  int fixed = 0;
  for (uint32_t a = 0; a < kp.card(); ++a)
    if (kp.frobq(static_cast<uint16_t>(a)) == a) ++fixed;
  CHECK(fixed == 3);
  // norm of the residue of T: t^(1+3) = t^4 = (-1)^2 = 1
  CHECK(kp.pow(t, 4) == 1);
}

TEST_CASE("TabCtx axioms and pth_root, canonical F_{2^5}") {
  const FqCtx& k = FqCtx::get(2);
  const TabCtx& kk = TabCtx::canonical(k, 5);
  CHECK(kk.card() == 32);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    uint16_t a = rng() % 32, b = rng() % 32, c = rng() % 32;
    CHECK(kk.mul(a, kk.add(b, c)) == kk.add(kk.mul(a, b), kk.mul(a, c)));
    CHECK(kk.mul(kk.mul(a, b), c) == kk.mul(a, kk.mul(b, c)));
    CHECK(kk.pth_root(kk.mul(a, a)) == a);
    if (a) CHECK(kk.mul(a, kk.inv(a)) == 1);
  }
  CHECK_THROWS_AS(TabCtx::canonical(k, 13), Error);  // 8192 > table limit
}

TEST_CASE("TabCtx char-3 addition table path") {
  const FqCtx& k = FqCtx::get(9);
  const TabCtx& kk = TabCtx::canonical(k, 3);  // F_729 over F_9
  CHECK(kk.card() == 729);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    uint16_t a = rng() % 729, b = rng() % 729;
    CHECK(kk.add(a, b) == kk.add(b, a));
    CHECK(kk.sub(kk.add(a, b), b) == a);
    CHECK(kk.frobq(kk.add(a, b)) == kk.add(kk.frobq(a), kk.frobq(b)));
    CHECK(kk.frobq(kk.mul(a, b)) == kk.mul(kk.frobq(a), kk.frobq(b)));
  }
  // frobq (x -> x^9) fixes exactly the base F_9
  int fixed = 0;
  for (uint32_t a = 0; a < kk.card(); ++a)
    if (kk.frobq(static_cast<uint16_t>(a)) == a) ++fixed;
  CHECK(fixed == 9);
}

TEST_CASE("factorization over a TabField extension") {
  const FqCtx& k = FqCtx::get(3);
  const TabCtx& kk = TabCtx::canonical(k, 4);  // F_81
  TabField f(kk);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    UP<TabField> poly(2 + rng() % 8, 0);
    for (auto& c : poly) c = static_cast<uint16_t>(rng() % 81);
    up_norm(f, poly);
    if (up_deg(poly) < 1) continue;
    auto [unit, parts] = up_factor(f, poly);
    UP<TabField> prod = up_const(f, unit);
    for (auto& pf : parts) {
      CHECK(up_is_irreducible(f, pf.f));
      for (unsigned m = 0; m < pf.mult; ++m) prod = up_mul(f, prod, pf.f);
    }
    CHECK(up_eq(f, prod, poly));
  }
}

TEST_CASE("linear algebra: kernel and solve over F4") {
  const FqCtx& kc = FqCtx::get(4);
  FqField k(kc);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    unsigned nr = 1 + rng() % 5, nc = 1 + rng() % 5;
    Mat<FqField> m(k, nr, nc);
    for (auto& x : m.a) x = rng() % 4;
    auto kerb = mat_kernel(k, m);
    // rank-nullity
    Mat<FqField> mc = m;
    CHECK(kerb.size() == nc - mat_rref(k, mc).size());
    for (auto& v : kerb) {
      for (unsigned r = 0; r < nr; ++r) {
        uint8_t acc = 0;
        for (unsigned c = 0; c < nc; ++c) acc = kc.add(acc, kc.mul(m.at(r, c), v[c]));
        CHECK(acc == 0);
      }
    }
    // solve with a known-consistent rhs
    std::vector<uint8_t> x0(nc);
    for (auto& v : x0) v = rng() % 4;
    std::vector<uint8_t> b(nr, 0);
    for (unsigned r = 0; r < nr; ++r)
      for (unsigned c = 0; c < nc; ++c) b[r] = kc.add(b[r], kc.mul(m.at(r, c), x0[c]));
    SolveInfo info;
    auto sol = mat_solve(k, m, b, &info);
    REQUIRE(sol.has_value());
    for (unsigned r = 0; r < nr; ++r) {
      uint8_t acc = 0;
      for (unsigned c = 0; c < nc; ++c) acc = kc.add(acc, kc.mul(m.at(r, c), (*sol)[c]));
      CHECK(acc == b[r]);
    }
  }
}

TEST_CASE("Ext tower basics: F_81 as a quadratic extension of F_9") {
  const FqCtx& kc = FqCtx::get(9);
  FqField k9(kc);
  // find an irreducible quadratic over F_9
  UP<FqField> m;
  for (unsigned v = 0; v < 81; ++v) {
    m = {static_cast<uint8_t>(v % 9), static_cast<uint8_t>(v / 9), 1};
    if (up_is_irreducible(k9, m)) break;
  }
  Ext<FqField> L(k9, m);
  CHECK(L.card() == 81);
  CHECK(L.fq_dim() == 2);
  auto y = L.gen();
  // frobq has order 2 over F_9 here
  auto y9 = L.frobq(y);
  CHECK_FALSE(L.eq(y9, y));
  CHECK(L.eq(L.frobq(y9), y));
  // norm and trace land in F_9
  auto nrm = L.mul(y, y9);
  auto tr = L.add(y, y9);
  CHECK(up_deg(nrm) <= 0);
  CHECK(up_deg(tr) <= 0);
  // flatten/unflatten round trip
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = L.from_index(rng() % 81);
    std::vector<uint8_t> buf(L.fq_dim());
    L.flatten(a, buf.data());
    CHECK(L.eq(L.unflatten(buf.data()), a));
  }
}
