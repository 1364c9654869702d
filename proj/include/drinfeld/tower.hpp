#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/bivar.hpp"
#include "drinfeld/ext.hpp"
#include "drinfeld/module.hpp"
#include "drinfeld/poly.hpp"
#include "drinfeld/ratfunc.hpp"

namespace drinfeld {

using ExtF = Ext<RatField>;
using ExtF2 = Ext<ExtF>;

// f with coefficients in F_q(T), multiplied through by the monic lcm D of the
// coefficient denominators and converted to K[T][x] over the degree-1 table
// field k1.  D comes back through den_out when requested.
BiPoly bp_clear_denominators(const TabCtx& k1, const UP<RatField>& f,
                             Poly* den_out = nullptr);

// Integral bivariate g read back with F_q(T) coefficients and made monic.
UP<RatField> up_from_bp_monic(const FqCtx& k, const BiPoly& g);

// Monic irreducible factors of f over F_q(T) with multiplicities, in the
// canonical order of the underlying integral factors.
std::vector<std::pair<UP<RatField>, unsigned>> factor_over_F(const FqCtx& k,
                                                             const UP<RatField>& f);

// For monic irreducible g over F_q(T): the minimal monic v in F_q[T] such that
// m(z) = v^deg(g) g(z/v) has polynomial coefficients.  m is monic integral and
// z = v x carries roots of g to roots of m.
std::pair<UP<RatField>, Poly> integral_rescale(const FqCtx& k, const UP<RatField>& g);

// Trager's norm method (Trager 1976): monic irreducible factors over
// L = F(z)/(m) of a monic squarefree f, where m is monic with polynomial
// coefficients.  N(x) = Res_z(m(z), f(x - c z^j)) for the first shift in the
// ladder c z, c z^2, ... that gives a squarefree norm; the resultant is
// computed on an evaluation grid over a table field and interpolated back.
struct TragerOutcome {
  std::vector<UP<ExtF>> factors;  // monic, ordered by their norms
  UP<RatField> norm;              // the squarefree norm that was factored
  unsigned shift_index = 0;       // position in the shift ladder that worked
};
TragerOutcome trager_factor(const ExtF& L, const UP<ExtF>& f);

struct SplittingLevel {
  std::string var;       // printed name of this step's generator
  std::string min_poly;  // its monic minimal polynomial over the level below
  unsigned degree = 1;
};

struct SplittingReport {
  std::vector<unsigned> base_factor_degrees;  // degrees of Phi_ell(x)/x over F
  std::vector<SplittingLevel> levels;         // extension steps, bottom up
  unsigned total_degree = 1;                  // [F(phi[ell]) : F]
  uint64_t points = 0;                        // torsion points certified on top
  bool split = false;
  std::vector<std::string> sample_points;     // printed points, capped
};

// Splitting field of the ell-torsion of M over F = F_q(T), for ell monic
// irreducible with q^(rank deg ell) <= 81.  Builds at most two explicit
// extension steps and certifies the result by enumerating the full torsion
// module and checking every point against the torsion polynomial.  The
// tower degree is capped: degree_cap = 0 selects |GL_rank(A/ell)|, which
// the true degree always divides, so the default only trips on a bug;
// a smaller explicit cap aborts oversized runs with CapExceeded.
SplittingReport splitting_field(const ModuleF& M, const Poly& ell,
                                uint64_t degree_cap = 0);
unsigned splitting_field_degree(const ModuleF& M, const Poly& ell,
                                uint64_t degree_cap = 0);

// Polynomial printer over any field context; composite coefficients are
// parenthesized, powers descend.
template <class K>
std::string up_str(const K& k, const UP<K>& f, const std::string& var) {
  if (up_deg(f) < 0) return "0";
  std::string out;
  for (size_t i = f.size(); i-- > 0;) {
    if (k.is_zero(f[i])) continue;
    if (!out.empty()) out += "+";
    std::string cs = k.str(f[i]);
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

}  // namespace drinfeld
