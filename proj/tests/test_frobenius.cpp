#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "drinfeld/factor.hpp"
#include "drinfeld/frobenius.hpp"
#include "drinfeld/parse.hpp"

using namespace drinfeld;

TEST_CASE("the Carlitz Frobenius at P is multiplication by P") {
  for (unsigned q : {2u, 3u}) {
    const FqCtx& k = FqCtx::get(q);
    ModuleF C = carlitz_module(RatField(k), RatFunc::T(k));
    for (const Poly& P : enumerate_primes(k, 1, 3)) {
      auto [c, mu] = frob_scalar_rank1(reduce_mod(C, P));
      CHECK(mu == 1);
      CHECK(c == P);
    }
  }
}

TEST_CASE("hand value at T+1 for T + tau - T^2 tau^2") {
  const FqCtx& k = FqCtx::get(3);
  ModuleF phi = parse_module(k, "T+t+2*T^2*t^2");
  FrobCharPoly fc = frob_charpoly(reduce_mod(phi, Poly(k, {1, 1})));
  CHECK(fc.a == Poly::one(k));
  CHECK(fc.mu == 1);
}

TEST_CASE("trace, determinant and cycle type of the mod-ell matrix") {
  const FqCtx& k = FqCtx::get(3);
  FqRing r(k);
  ModuleF phi = parse_module(k, "T+t+2*T^2*t^2");
  std::vector<Poly> ells = {Poly::T(k), Poly(k, {1, 1}), Poly(k, {2, 1})};
  for (const Poly& P : enumerate_primes(k, 1, 3)) {
    if (P == Poly::T(k)) continue;  // bad reduction
    ModuleRes M = reduce_mod(phi, P);
    FrobCharPoly fc = frob_charpoly(M);
    Poly muP = Poly::constant(k, fc.mu) * P;
    for (const Poly& ell : ells) {
      if (ell == P) continue;
      std::string note;
      Mat2 m = frob_matrix_mod_l(M, ell, &note);
      CHECK(!note.empty());
      uint8_t lam = k.neg(ell.c[0]);
      CHECK(uint8_t(m2_trace(r, m)) == fc.a.eval(lam));
      CHECK(uint8_t(m2_det(r, m)) == muP.eval(lam));
      CHECK(division_pattern(M, ell) == cycle_pattern(r, m));
    }
  }
}

TEST_CASE("the determinant module carries mu P") {
  const FqCtx& k = FqCtx::get(3);
  ModuleF phi = parse_module(k, "T+t+2*T^2*t^2");
  ModuleF psi = det_module(phi);
  for (const Poly& P : enumerate_primes(k, 2, 3)) {
    FrobCharPoly fc = frob_charpoly(reduce_mod(phi, P));
    auto [c, mu] = frob_scalar_rank1(reduce_mod(psi, P));
    CHECK(mu == fc.mu);
    CHECK(c == Poly::constant(k, fc.mu) * P);
  }
}

TEST_CASE("charpoly degree bound across small fields") {
  const FqCtx& k2 = FqCtx::get(2);
  ModuleF a = make_rank2(k2, RatFunc(Poly(k2, {1, 1})), RatFunc::one(k2));
  for (const Poly& P : enumerate_primes(k2, 1, 4)) {
    FrobCharPoly fc = frob_charpoly(reduce_mod(a, P));
    int d = int(*P.degree());
    CHECK((fc.a.is_zero() || *fc.a.degree() * 2 <= d));
    CHECK(fc.mu != 0);
  }
  const FqCtx& k4 = FqCtx::get(4);
  ModuleF b = parse_module(k4, "T+t+T^3*t^2");
  for (const Poly& P : enumerate_primes(k4, 1, 2)) {
    if (P == Poly::T(k4)) continue;  // bad reduction
    FrobCharPoly fc = frob_charpoly(reduce_mod(b, P));
    int d = int(*P.degree());
    CHECK((fc.a.is_zero() || *fc.a.degree() * 2 <= d));
  }
}

TEST_CASE("sign character matches the constant-field parity when g1 = 0") {
  const FqCtx& k = FqCtx::get(2);
  ModuleF phi = make_rank2(k, RatFunc::zero(k), RatFunc::one(k));
  for (const Poly& ell : {Poly::T(k), Poly(k, {1, 1})})
    for (const Poly& P : enumerate_primes(k, 1, 5)) {
      if (P == ell) continue;
      CHECK(sign_character(phi, ell, P) == ((*P.degree() % 2 == 0) ? 1 : -1));
    }
}

TEST_CASE("determinant-deficient certificate at (T)") {
  const FqCtx& k = FqCtx::get(3);
  ModuleF phi = make_rank2(k, RatFunc::one(k), RatFunc::T(k));
  ImageCertificate c = certify_mod_l_surjective(phi, Poly::T(k), 4);
  CHECK(c.det_deficient);
  CHECK_FALSE(c.surjective);
  CHECK(c.verdict == "Undecided");
  CHECK(!c.sampled.empty());
  CHECK(!c.candidates.empty());
}

TEST_CASE("certificate internals on the running example") {
  const FqCtx& k = FqCtx::get(3);
  ModuleF phi = parse_module(k, "T+t+2*T^2*t^2");
  ImageCertificate c = certify_mod_l_surjective(phi, Poly::T(k), 4);
  CHECK_FALSE(c.det_deficient);
  CHECK(!c.sampled.empty());
  for (const SampledPrime& s : c.sampled) {
    unsigned tot = 0;
    for (unsigned d : s.pattern) tot += d;
    CHECK(tot == 8);
    CHECK(s.det_mod != 0);
    CHECK(s.a_mod == s.a.eval(0));
  }
  CHECK(c.skipped.size() >= 1);  // at least the bad prime (T)
}
