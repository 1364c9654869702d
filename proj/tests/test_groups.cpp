#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <random>

#include "doctest.h"
#include "drinfeld/gl2.hpp"
#include "drinfeld/group_checks.hpp"

using namespace drinfeld;

TEST_CASE("GL2/SL2 orders from the scan") {
  for (unsigned q : {2u, 3u, 4u}) {
    const FqCtx& k = FqCtx::get(q);
    FqRing r(k);
    CHECK(make_gl2(r).order() == (q * q - 1) * (q * q - q));
    CHECK(make_sl2(r).order() == (q * q - 1) * q);
  }
}

TEST_CASE("dual-ring lifts agree with the exhaustive scan") {
  for (unsigned q : {2u, 3u}) {
    const FqCtx& k = FqCtx::get(q);
    DualRing D(k);
    CHECK(make_gl2_dual(D).keys == make_gl2(D).keys);
    CHECK(make_sl2_dual(D).keys == make_sl2(D).keys);
  }
}

TEST_CASE("subgroup classifications cross-check on GL2(F2) and SL2(F3)") {
  const FqCtx& k2 = FqCtx::get(2);
  FqRing r2(k2);
  MatGroup<FqRing> G = make_gl2(r2);
  auto subs = all_subgroups(G);
  auto classes = subgroups_up_to_conjugacy(G);
  CHECK(subs.size() == 6);
  CHECK(classes.size() == 4);
  unsigned total = 0;
  for (const SubgroupClass& c : classes) total += c.class_size;
  CHECK(total == subs.size());

  const FqCtx& k3 = FqCtx::get(3);
  FqRing r3(k3);
  MatGroup<FqRing> S = make_sl2(r3);
  CHECK(S.order() == 24);
  auto subs3 = all_subgroups(S);
  auto classes3 = subgroups_up_to_conjugacy(S);
  CHECK(subs3.size() == 15);
  CHECK(classes3.size() == 7);
  unsigned tot3 = 0;
  std::map<unsigned, unsigned> by_order;
  for (const SubgroupClass& c : classes3) {
    tot3 += c.class_size;
    by_order[c.order] += c.class_size;
    if (c.order == 8) CHECK(c.normal);  // the quaternion subgroup
  }
  CHECK(tot3 == subs3.size());
  CHECK(by_order[1] == 1);
  CHECK(by_order[2] == 1);
  CHECK(by_order[3] == 4);
  CHECK(by_order[4] == 3);
  CHECK(by_order[6] == 4);
  CHECK(by_order[8] == 1);
  CHECK(by_order[24] == 1);
}

TEST_CASE("filtration layer maps are homomorphisms") {
  const FqCtx& k = FqCtx::get(2);
  FiltrationGroup F = make_filtration(k, false);
  CHECK(F.G.order() == 96);
  CHECK(F.Q.order() == 6);
  CHECK(F.kernel.size() == 16);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    uint32_t a = uint32_t(rng() % F.G.order());
    uint32_t b = uint32_t(rng() % F.G.order());
    CHECK(F.v0(F.G.mul(a, b)) == F.Q.mul(F.v0(a), F.v0(b)));
  }
  FqRing r(k);
  for (uint32_t a : F.kernel)
    for (uint32_t b : F.kernel) {
      Mat2 Xa = m2_from_key(r, F.v1(a));
      Mat2 Xb = m2_from_key(r, F.v1(b));
      CHECK(F.v1(F.G.mul(a, b)) == m2_key(r, m2_add(r, Xa, Xb)));
    }
}

TEST_CASE("cycle patterns of the torsion-plane action") {
  const FqCtx& k = FqCtx::get(3);
  FqRing r(k);
  CHECK(cycle_pattern(r, m2_id(r)) == std::vector<unsigned>(8, 1));
  Mat2 minus = m2_make<FqRing>(2, 0, 0, 2);
  CHECK(cycle_pattern(r, minus) == std::vector<unsigned>({2, 2, 2, 2}));
}

TEST_CASE("GL2(F2) report") {
  Gl2F2Report g = verify_gl2_f2();
  CHECK(g.order == 6);
  CHECK(g.action_faithful);
  CHECK(g.image_is_s3);
  CHECK(g.subgroup_count == 6);
  CHECK(g.class_count == 4);
  CHECK(g.index2_subgroups == 1);
  CHECK(g.index2_normal);
}

TEST_CASE("invariant subspaces and the trace step") {
  Lemma55Report l = verify_lemma_5_5();
  CHECK(l.subspace_count == 212);
  CHECK(l.invariant.size() == 4);
  CHECK(l.invariant_exactly_expected);
  CHECK_FALSE(l.w1_invariant);
  CHECK(l.w1_closure_is_sl2);

  TraceStepReport t = verify_prop_5_6_trace_step();
  CHECK(t.qualifying == 1);
  CHECK(t.only_full_space);
  CHECK(t.sl2_excluded);
  CHECK(t.scalars_excluded);
}

TEST_CASE("level-2 search, small seeded run") {
  Level2Report r = verify_prop_5_6_level2(25, 12345);
  CHECK(r.group_order == 3888);
  CHECK(r.group_order_scan == 3888);
  CHECK(r.full_group_ok);
  CHECK(r.sl2_preimage_excluded);
  CHECK(r.counterexamples.empty());
  CHECK(r.trials == 25);
}

TEST_CASE("SL2(F4) and its dual-number lift") {
  Lemma61Report r = verify_lemma_6_1(4);
  CHECK(r.sl2_order == 60);
  CHECK(r.sl2_perfect);
  CHECK(r.center_trivial);
  CHECK(r.sl2_simple);
  CHECK(r.level2_order == 3840);
  CHECK(r.level2_perfect);
  CHECK(r.level2_exhaustive);
  CHECK(r.generator_count == 2);
  CHECK(r.displays_nonscalar);
  CHECK(r.displays_match_formula);
}
