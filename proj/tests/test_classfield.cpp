#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "drinfeld/factor.hpp"
#include "drinfeld/frobenius.hpp"
#include "drinfeld/parse.hpp"
#include "drinfeld/quadext.hpp"

using namespace drinfeld;

TEST_CASE("square classes normalize to eta * squarefree monic") {
  const FqCtx& k = FqCtx::get(3);
  Poly T = Poly::T(k), T1 = Poly(k, {1, 1});
  KummerClass a = kummer_class(RatFunc(T * T * T1));
  CHECK(a.unit == 1);
  CHECK(a.m == T1);
  KummerClass b = kummer_class(RatFunc(Poly::constant(k, 2) * T));
  CHECK(b.unit == k.nonsquare_unit());
  CHECK(b.m == T);
  CHECK(kummer_mul(b, b).is_trivial());
  KummerClass c = kummer_class(RatFunc(T, T1));
  CHECK(c.unit == 1);
  CHECK(c.m == T * T1);
}

TEST_CASE("artin-schreier normal form of the resolvent class, worked example") {
  const FqCtx& k = FqCtx::get(2);
  RatFunc b = rf_pow(RatFunc::T(k), 4);  // ell = T, g1 = g2 = 1
  ASClass c = as_reduce((RatFunc::one(k) + b * b) / (b * b));
  CHECK(c.constant_part);
  REQUIRE(c.finite.size() == 1);
  CHECK(c.finite[0].first == Poly::T(k));
  CHECK(c.finite[0].second == RatFunc(Poly::one(k), Poly::T(k)));
  CHECK(c.infinity.is_zero());
  CHECK(c.finite_conductor() == Poly::T(k) * Poly::T(k));
  CHECK(c == as_reduce(RatFunc::one(k) + RatFunc(Poly::one(k), Poly::T(k))));
  CHECK_FALSE(c.wild());

  // idempotence and invariance under adding h^2 + h
  RatFunc h(Poly(k, {1, 1}), Poly(k, {1, 1, 1}));
  CHECK(as_reduce(c.rep()) == c);
  CHECK(as_reduce((RatFunc::one(k) + b * b) / (b * b) + h * h + h) == c);
}

TEST_CASE("hayes classification and the carlitz subfield rule") {
  const FqCtx& k = FqCtx::get(3);
  Poly T = Poly::T(k);
  KummerClass ct = carlitz_quad_subfield(T);
  CHECK(ct.unit == k.nonsquare_unit());
  CHECK(ct.m == T);
  HayesClass h1 = hayes_classify(ct);
  CHECK_FALSE(h1.constant_needed);
  CHECK(h1.conductor == T);
  CHECK_FALSE(h1.wild);
  HayesClass h2 = hayes_classify(kummer_class(RatFunc(T)));
  CHECK(h2.constant_needed);
  CHECK(h2.conductor == T);

  Poly P2(k, {1, 0, 1});  // T^2 + 1, eta = +1
  KummerClass c2 = carlitz_quad_subfield(P2);
  CHECK(c2.unit == 1);
  CHECK(c2.m == P2);
}

TEST_CASE("reciprocity: the quadratic subfield splits exactly at split primes") {
  const FqCtx& k = FqCtx::get(3);
  ModuleF C = carlitz_module(RatField(k), RatFunc::T(k));
  Poly P2(k, {1, 0, 1});
  QuadExtDescriptor d = carlitz_quad_descriptor(P2);
  SplitReport r = verify_subfield_by_splitting(d, C, P2, 5);
  CHECK(r.counterexamples.empty());
  CHECK(r.total_split >= r.min_required);
  CHECK(r.confirming == r.total_split);

  // a wrong containment is refuted
  SplitReport w =
      verify_subfield_by_splitting(kummer_class(RatFunc::T(k)), C, Poly(k, {1, 1}), 4);
  CHECK(!w.counterexamples.empty());
}

TEST_CASE("claim rows for square and non-square -g2") {
  const FqCtx& k = FqCtx::get(3);
  // -g2 = T^2 is a square: every division class equals its carlitz partner
  Claim51Report r1 = claim_check_5_1(parse_module(k, "T+t+2*T^2*t^2"));
  CHECK_FALSE(r1.precondition_ok);
  CHECK_FALSE(r1.all_distinct);
  REQUIRE(r1.rows.size() == 3);
  for (const Claim51Row& row : r1.rows) {
    CHECK_FALSE(row.distinct);
    CHECK(row.division_class == row.carlitz_class);
  }
  // -g2 = 2 is a non-square unit: all three rows distinct
  Claim51Report r2 = claim_check_5_1(make_rank2(k, RatFunc::one(k), RatFunc::one(k)));
  CHECK(r2.precondition_ok);
  CHECK(r2.all_distinct);
  REQUIRE(r2.rows.size() == 3);
  for (const Claim51Row& row : r2.rows) CHECK(row.distinct);
}

TEST_CASE("division classes match the resolvent construction, q = 2") {
  const FqCtx& k = FqCtx::get(2);
  struct Case {
    const char* g1;
    const char* g2;
  } cases[] = {{"T+1", "T^2+T+1"}, {"T^2+1", "T"}, {"1", "T^3+T+1"}};
  unsigned checked = 0;
  for (const Case& c : cases) {
    RatFunc g1(parse_poly(k, c.g1)), g2(parse_poly(k, c.g2));
    ModuleF phi = make_rank2(k, g1, g2);
    for (const Poly& ellp : {Poly::T(k), Poly(k, {1, 1})}) {
      QuadExtDescriptor d;
      try {
        d = quad_subext(phi, ellp);
      } catch (const Error& e) {
        if (e.code() == Err::ImageTooSmall) continue;
        throw;
      }
      RatFunc ell(ellp);
      RatFunc s = rf_pow(g1, 3) / (ell * ell * g2);
      REQUIRE(d.artin_schreier.has_value());
      CHECK(*d.artin_schreier == as_reduce(RatFunc::one(k) + s));
      ++checked;
    }
  }
  CHECK(checked >= 3);
}

TEST_CASE("descriptors outside the tame pattern") {
  const FqCtx& k = FqCtx::get(2);
  // g1 = T, g2 = 1 at (T): class of 1 + T, wildly ramified at infinity
  QuadExtDescriptor da =
      quad_subext(make_rank2(k, RatFunc::T(k), RatFunc::one(k)), Poly::T(k));
  CHECK(da.wild());
  CHECK(da.hayes.wild);
  CHECK_FALSE(da.trivial());

  // g1 = T+1, g2 = (T+1)^2 at (T): a pure constant class with g1 != 0
  Poly t1(k, {1, 1});
  QuadExtDescriptor db =
      quad_subext(make_rank2(k, RatFunc(t1), RatFunc(t1 * t1)), Poly::T(k));
  CHECK(db.constant());
  CHECK_FALSE(db.trivial());
  CHECK_FALSE(db.hayes.wild);
  CHECK(db.hayes.constant_needed);
  CHECK(db.hayes.conductor.is_one());

  // g1 = 1, g2 = T+1 at (T): the torsion cubic has the root 1, image too small
  try {
    quad_subext(make_rank2(k, RatFunc::one(k), RatFunc(t1)), Poly::T(k));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::ImageTooSmall);
  }
}

TEST_CASE("resolvent character equals the permutation sign") {
  const FqCtx& k = FqCtx::get(2);
  // at (T+1) the cubic of the first module has the root 1, so skip that pair
  ModuleF wildm = make_rank2(k, RatFunc::T(k), RatFunc::one(k));
  ModuleF tamem =
      make_rank2(k, RatFunc(Poly(k, {0, 1, 1})), RatFunc(Poly(k, {1, 0, 1, 0, 1})));
  std::vector<std::pair<ModuleF, Poly>> pairs = {
      {wildm, Poly::T(k)}, {tamem, Poly::T(k)}, {tamem, Poly(k, {1, 1})}};
  for (const auto& [phi, ell] : pairs) {
    QuadExtDescriptor d = quad_subext(phi, ell);
    for (const Poly& P : enumerate_primes(k, 1, 5)) {
      if (P == ell) continue;
      int lhs = quad_character_value(d, P);
      if (lhs == 0) continue;  // ramified for the class
      int rhs;
      try {
        rhs = sign_character(phi, ell, P);
      } catch (const Error&) {
        continue;
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("determinant character at primes, q = 3") {
  const FqCtx& k = FqCtx::get(3);
  ModuleF phi = make_rank2(k, RatFunc::one(k), RatFunc::one(k));
  Poly ell(k, {1, 1});
  QuadExtDescriptor d = quad_subext(phi, ell);
  REQUIRE(d.kummer.has_value());
  CHECK(d.kummer->m == ell);
  uint8_t lam = k.neg(ell.c[0]);
  for (const Poly& P : enumerate_primes(k, 1, 4)) {
    if (P == ell) continue;
    int chi = quad_character_value(d, P);
    if (chi == 0) continue;
    FrobCharPoly fc = frob_charpoly(reduce_mod(phi, P));
    uint8_t det = k.mul(fc.mu, P.eval(lam));
    CHECK(chi == (k.is_square(det) ? 1 : -1));
  }
}

TEST_CASE("witness kinds across the model cases") {
  const FqCtx& k2 = FqCtx::get(2);
  const FqCtx& k3 = FqCtx::get(3);

  // constant entanglement: g1 = 0
  EntanglementWitness w1 =
      nonsurjectivity_witness(make_rank2(k2, RatFunc::zero(k2), RatFunc::one(k2)));
  CHECK(w1.kind == WitnessKind::TwoConstant);
  CHECK(w1.proves_nonsurjective);
  REQUIRE(w1.moduli.size() == 2);
  CHECK(w1.moduli[0] == Poly::T(k2));
  CHECK(w1.moduli[1] == Poly(k2, {1, 1}));
  CHECK(w1.validation.character_mismatches == 0);
  CHECK(w1.validation.character_samples > 0);

  // two moduli sharing one non-constant quadratic field
  EntanglementWitness w2 = nonsurjectivity_witness(
      make_rank2(k2, RatFunc(Poly(k2, {0, 1, 1})), RatFunc(Poly(k2, {1, 0, 1, 0, 1}))));
  CHECK(w2.kind == WitnessKind::SharedQuadraticClass);
  CHECK(w2.proves_nonsurjective);
  CHECK(w2.moduli.size() == 2);
  REQUIRE(w2.descriptor.has_value());
  CHECK_FALSE(w2.descriptor->constant());
  REQUIRE(w2.descriptor->artin_schreier.has_value());
  REQUIRE(w2.descriptor->artin_schreier->finite.size() == 1);
  CHECK(w2.descriptor->artin_schreier->finite[0].first == Poly(k2, {1, 1, 1}));

  // determinant deficiency at (T)
  EntanglementWitness w3 =
      nonsurjectivity_witness(make_rank2(k3, RatFunc::one(k3), RatFunc::T(k3)));
  CHECK(w3.kind == WitnessKind::DetDeficient);
  CHECK(w3.proves_nonsurjective);
  REQUIRE(w3.moduli.size() == 1);
  CHECK(w3.moduli[0] == Poly::T(k3));

  // carlitz linkage: g2 = -T(T+1), the class at (T) has conductor T+1
  EntanglementWitness w4 =
      nonsurjectivity_witness(make_rank2(k3, RatFunc::one(k3), RatFunc(Poly(k3, {0, 2, 2}))));
  CHECK(w4.kind == WitnessKind::CarlitzLinkage);
  CHECK(w4.proves_nonsurjective);
  REQUIRE(w4.moduli.size() == 1);
  CHECK(w4.moduli[0] == Poly::T(k3));
  REQUIRE(w4.descriptor.has_value());
  CHECK(w4.descriptor->hayes.conductor == Poly(k3, {1, 1}));
  CHECK_FALSE(w4.descriptor->hayes.constant_needed);
  CHECK(w4.validation.split_primes_checked >= 3);
  CHECK(w4.validation.counterexamples == 0);

  // g2 = 1: every class needs the constant field, nothing is proved
  EntanglementWitness w5 =
      nonsurjectivity_witness(make_rank2(k3, RatFunc::one(k3), RatFunc::one(k3)));
  CHECK(w5.kind == WitnessKind::Inconclusive);
  CHECK_FALSE(w5.proves_nonsurjective);
  CHECK(w5.all_classes.size() == 3);
  CHECK(w5.pair_products.size() == 3);
  for (const PairProductData& p : w5.pair_products) CHECK_FALSE(p.trivial_product);
}
