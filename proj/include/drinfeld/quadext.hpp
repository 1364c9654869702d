#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/classfield.hpp"
#include "drinfeld/module.hpp"

namespace drinfeld {

// The quadratic subextension of the ell-division field of a rank-2 module,
// held as the exact class whose square (resp. Artin-Schreier) root generates
// it, plus the Hayes classification of where that class sits inside the
// maximal abelian extension.  Nontrivial descriptor <=> the subextension has
// degree 2; descriptor equality <=> field equality.
struct QuadExtDescriptor {
  Poly ell;
  std::string construction;  // which recipe produced the class
  std::optional<KummerClass> kummer;      // q odd
  std::optional<ASClass> artin_schreier;  // q even
  HayesClass hayes;

  bool trivial() const;
  bool constant() const;  // nontrivial and cut out by a constant class
  bool wild() const;
  std::string class_str() const;

  friend bool operator==(const QuadExtDescriptor& a, const QuadExtDescriptor& b) {
    return a.kummer == b.kummer && a.artin_schreier == b.artin_schreier;
  }
  friend bool operator!=(const QuadExtDescriptor& a, const QuadExtDescriptor& b) {
    return !(a == b);
  }
};

// q = 3: the determinant route, Kummer class of ell/g2 (trivial allowed, it
// flags determinant deficiency).  q = 2, g1 = 0: the constant descriptor.
// q = 2, g1 != 0: the resolvent class of (1+b^2)/b^2, b = ell^4 g2^2 / g1^6,
// valid once the mod-ell image is all of GL_2(F_2); raises ImageTooSmall
// when the splitting degree says otherwise.
QuadExtDescriptor quad_subext(const ModuleF& phi, const Poly& ell);

// The quadratic subfield of the P-th Carlitz division field as a descriptor
// (q odd; the class is eta P with eta = (-1)^deg P).
QuadExtDescriptor carlitz_quad_descriptor(const Poly& P);

// Value of the quadratic character attached to a class at a good prime P:
// +1 split, -1 inert, 0 ramified (P meets the class support).
int quad_character_value(const KummerClass& c, const Poly& P);
int quad_character_value(const ASClass& c, const Poly& P);
int quad_character_value(const QuadExtDescriptor& d, const Poly& P);

// Sampling check of a containment M_chi subset F(phi[a]): at every sampled
// good prime P where the a-torsion of phi is totally split, the character
// must evaluate to +1.  Counterexamples refute the containment; too few
// totally split samples raise InsufficientSplitPrimes.
struct SplitReport {
  Poly a;
  unsigned max_deg = 0;
  unsigned min_required = 0;
  unsigned total_split = 0;
  unsigned confirming = 0;
  std::vector<Poly> counterexamples;
  std::vector<std::pair<Poly, std::string>> skipped;  // prime, reason
};
SplitReport verify_subfield_by_splitting(const KummerClass& chi, const ModuleF& phi,
                                         const Poly& a, unsigned max_deg,
                                         unsigned min_split = 3);
SplitReport verify_subfield_by_splitting(const ASClass& chi, const ModuleF& phi,
                                         const Poly& a, unsigned max_deg,
                                         unsigned min_split = 3);
SplitReport verify_subfield_by_splitting(const QuadExtDescriptor& chi,
                                         const ModuleF& phi, const Poly& a,
                                         unsigned max_deg, unsigned min_split = 3);

// Per-modulus comparison of the division-field class (T+i)/g2 against the
// Carlitz class -(T+i); the two differ for every i exactly when -g2 is a
// non-square, and the ratio class is always the class of -g2.
struct Claim51Row {
  Poly ell;
  KummerClass division_class;
  KummerClass carlitz_class;
  bool distinct = false;
};
struct Claim51Report {
  bool precondition_ok = false;  // -g2 is a non-square
  bool all_distinct = false;
  std::vector<Claim51Row> rows;
};
Claim51Report claim_check_5_1(const ModuleF& phi);

enum class WitnessKind {
  TwoConstant,
  SharedQuadraticClass,
  DetDeficient,
  CarlitzLinkage,
  Inconclusive,
};
const char* witness_kind_name(WitnessKind k);

struct ModulusClassData {
  Poly ell;
  QuadExtDescriptor descriptor;
};
struct PairProductData {
  Poly ell1, ell2;
  std::string product_class;
  bool trivial_product = false;
};
struct WitnessValidation {
  unsigned character_samples = 0;
  unsigned character_mismatches = 0;
  unsigned split_primes_checked = 0;
  unsigned counterexamples = 0;
  std::vector<std::string> notes;
};

// Outcome of the case analysis over all degree-one moduli.  Every kind except
// Inconclusive is a proof that the adelic representation is not surjective:
// a trivial descriptor (determinant deficiency), two moduli sharing one
// quadratic field, a descriptor lying in a Carlitz division field at a
// coprime conductor, or a modulus whose image is already too small.
struct EntanglementWitness {
  WitnessKind kind = WitnessKind::Inconclusive;
  std::vector<Poly> moduli;
  std::optional<QuadExtDescriptor> descriptor;
  std::vector<ModulusClassData> all_classes;
  std::vector<PairProductData> pair_products;
  WitnessValidation validation;
  bool proves_nonsurjective = false;
};
EntanglementWitness nonsurjectivity_witness(const ModuleF& phi,
                                            unsigned sample_max_deg = 6);

}  // namespace drinfeld
