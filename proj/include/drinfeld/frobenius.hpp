#pragma once

#include <string>
#include <utility>
#include <vector>

#include "drinfeld/gl2.hpp"
#include "drinfeld/module.hpp"

namespace drinfeld {

// The Frobenius pi = tau^d of a rank-2 module reduced at a good prime P of
// degree d satisfies pi^2 - phi_a pi + phi_{mu P} = 0 with deg a <= d/2 and
// mu a unit; a is the trace datum, mu P the norm.  Both are found by linear
// algebra over F_q and the identity is then re-verified exactly in the skew
// ring.
struct FrobCharPoly {
  Poly P;
  Poly a;
  uint8_t mu = 1;
};
FrobCharPoly frob_charpoly(const ModuleRes& M);

// Rank-1 analogue: tau^d = psi_c with c = mu P.  Returns (c, mu).  This is
// the oracle side of the determinant contract det(rho_P) = mu P.
std::pair<Poly, uint8_t> frob_scalar_rank1(const ModuleRes& M);

// Degrees of the irreducible factors of the ell-torsion polynomial divided
// by x over k_P, ascending: the cycle type of Frobenius acting on the
// nonzero ell-torsion points.
std::vector<unsigned> division_pattern(const ModuleRes& M, const Poly& ell);

// Matrix of the k_P-Frobenius on phi[ell] for a degree-one prime ell != P,
// well defined up to conjugacy.  The basis is found inside a single factor
// field of the torsion polynomial: either Frobenius is scalar, or some
// torsion point e has (e, Frob e) independent and the matrix is a companion
// block, or all factor roots are eigenvectors and two distinct eigenvalues
// give a diagonal form.  basis_note, when given, records which case fired.
Mat2 frob_matrix_mod_l(const ModuleRes& M, const Poly& ell,
                       std::string* basis_note = nullptr);

// Quadratic-resolvent character of a rank-2 module over F_2(T) at the
// degree-one modulus ell, evaluated at a good prime P: the sign of the
// Frobenius permutation of the three nonzero ell-torsion points, +1 exactly
// when the factor pattern of the torsion cubic mod P is {3} or {1,1,1}.
int sign_character(const ModuleF& phi, const Poly& ell, const Poly& P);

struct SampledPrime {
  Poly P;
  Poly a;
  uint8_t mu = 1;
  uint8_t a_mod = 0;    // a mod ell
  uint8_t det_mod = 0;  // mu P mod ell
  std::vector<unsigned> pattern;
};

struct CandidateSubgroup {
  unsigned order = 0;
  unsigned class_size = 0;
  std::vector<std::string> generators;
};

// Sampling certificate for the mod-ell image.  Every sampled prime
// contributes the conjugacy invariants (trace, det, cycle type) of its
// Frobenius; a subgroup class stays a candidate only if it realizes every
// sampled triple.  "Surjective" means no proper class survived; otherwise
// the verdict is "Undecided" and the surviving classes are listed.
struct ImageCertificate {
  Poly ell;
  unsigned max_deg = 0;
  std::vector<SampledPrime> sampled;
  std::vector<std::pair<Poly, std::string>> skipped;  // prime, reason
  std::vector<CandidateSubgroup> candidates;
  bool det_deficient = false;  // realized determinants generate a proper subgroup
  bool surjective = false;
  std::string verdict;
};

ImageCertificate certify_mod_l_surjective(const ModuleF& phi, const Poly& ell,
                                          unsigned max_deg);

}  // namespace drinfeld
