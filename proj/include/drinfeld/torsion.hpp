#pragma once

#include <string>
#include <vector>

#include "drinfeld/ext.hpp"
#include "drinfeld/module.hpp"

namespace drinfeld {

using ResExt = Ext<TabField>;

// [k_P(phi[a]) : k_P] for a reduced module with gcd(a, P) = 1: the order of
// the k_P-Frobenius on the (squarefree) torsion polynomial.
unsigned torsion_splitting_degree(const ModuleRes& M, const Poly& a);

// The full a-torsion of a reduced module, realized inside a concrete
// extension of k_P of exactly the splitting degree.  Points are enumerated
// deterministically (F_q-combinations of a reduced kernel basis in lex
// order), and for rank 2 an A/a-basis (e1, e2) is extracted with annihilator
// certificates.
struct TorsionPoints {
  Poly a;                 // monic torsion modulus
  unsigned split_deg = 0;
  ResExt L;               // ambient extension of k_P
  std::vector<ResExt::Elem> points;
  std::vector<ResExt::Elem> basis;              // rank entries
  std::vector<Poly> annihilators;               // per point, monic divisor of a
  std::vector<std::pair<Poly, Poly>> coords;    // per point, (c, d) with
                                                // pt = phi_c(e1) + phi_d(e2)
  TorsionPoints(ResExt ambient) : L(std::move(ambient)) {}
};

TorsionPoints torsion_points(const ModuleRes& M, const Poly& a);

// Monic divisors of a, sorted by degree then packed coefficients.
std::vector<Poly> monic_divisors(const Poly& a);

// Index of a point in tp.points, by flattened coordinates; -1 if absent.
int torsion_point_index(const TorsionPoints& tp, const ResExt::Elem& x);

}  // namespace drinfeld
