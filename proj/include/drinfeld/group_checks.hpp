#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/gl2.hpp"

namespace drinfeld {

// Machine verifications of the finite-group facts the image classification
// rests on.  Each returns a report carrying the enumeration statistics that
// make the run reproducible; randomized searches record their seed.

// GL_2(A/p^2) or SL_2(A/p^2) for a degree-one prime, realized over the dual
// numbers F_q[u]/(u^2), together with the two layer maps: v0 reduces mod u
// onto the residue group, v1 reads off X from a kernel element 1 + uX.
struct FiltrationGroup {
  DualRing ring;
  MatGroup<DualRing> G;
  MatGroup<FqRing> Q;
  bool special = false;
  std::vector<uint32_t> v0_map;   // element index in G -> index in Q
  std::vector<uint32_t> kernel;   // indices of ker v0, ascending

  uint32_t v0(uint32_t i) const { return v0_map[i]; }
  // Packed M_2(F_q) key of X for a kernel element 1 + uX.
  uint64_t v1(uint32_t i) const;
};

FiltrationGroup make_filtration(const FqCtx& k, bool special);

struct Lemma55Report {
  unsigned subspace_count = 0;  // all subspaces of M_2(F_3)
  std::vector<std::string> invariant;  // labels of the conjugation-invariant ones
  bool invariant_exactly_expected = false;
  bool w1_invariant = true;            // the antidiagonal plane; must come out false
  bool w1_closure_is_sl2 = false;
};
Lemma55Report verify_lemma_5_5();

struct TraceStepReport {
  unsigned qualifying = 0;  // invariant, has a non-scalar, trace surjective
  bool only_full_space = false;
  bool sl2_excluded = false;      // fails trace surjectivity
  bool scalars_excluded = false;  // fails the non-scalar requirement
};
TraceStepReport verify_prop_5_6_trace_step();

struct Level2Report {
  uint64_t seed = 0;
  unsigned trials = 0;
  unsigned satisfied = 0;  // trials whose random subgroup met all hypotheses
  unsigned group_order = 0;        // 3888, from the lift construction
  unsigned group_order_scan = 0;   // 3888 again, from the independent scan
  std::vector<std::string> counterexamples;
  bool full_group_ok = false;       // the full group meets hypotheses and conclusion
  bool sl2_preimage_excluded = false;  // det-deficient subgroup fails the hypotheses
};
Level2Report verify_prop_5_6_level2(unsigned trials, uint64_t seed);

struct Lemma61Report {
  unsigned qf = 0;
  unsigned sl2_order = 0;
  bool sl2_perfect = false;
  bool checked_simplicity = false;  // only for qf = 4
  bool center_trivial = false;
  bool sl2_simple = false;
  uint64_t level2_order = 0;
  bool level2_perfect = false;
  bool level2_exhaustive = false;  // false when the closure was replaced by the
                                   // layered argument (qf = 16)
  std::string level2_method;
  unsigned generator_count = 0;    // generators alpha of F_qf^*
  bool displays_nonscalar = false; // s X s^-1 - X non-scalar for each of them
  bool displays_match_formula = false;
};
Lemma61Report verify_lemma_6_1(unsigned qf);

struct Gl2F2Report {
  unsigned order = 0;
  bool action_faithful = false;
  bool image_is_s3 = false;
  unsigned subgroup_count = 0;        // 6
  unsigned class_count = 0;           // 4
  unsigned index2_subgroups = 0;      // 1
  bool index2_normal = false;
};
Gl2F2Report verify_gl2_f2();

}  // namespace drinfeld
