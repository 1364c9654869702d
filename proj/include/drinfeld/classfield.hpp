#pragma once

#include <vector>

#include "drinfeld/ratfunc.hpp"

namespace drinfeld {

// Square classes of F = F_q(T), q odd: every class has a unique representative
// eta * m with eta in {1, fixed non-square unit} and m monic squarefree.
struct KummerClass {
  const FqCtx* k = nullptr;
  uint8_t unit = 1;  // 1 or FqCtx::nonsquare_unit()
  Poly m;

  bool is_trivial() const { return unit == 1 && m.is_one(); }
  bool is_constant() const { return m.is_one(); }
  RatFunc rep() const {
    return RatFunc(Poly::constant(*k, unit) * m);
  }
  std::string str() const { return rep().str(); }

  friend bool operator==(const KummerClass& a, const KummerClass& b) {
    return a.unit == b.unit && a.m == b.m;
  }
  friend bool operator!=(const KummerClass& a, const KummerClass& b) {
    return !(a == b);
  }
};

KummerClass kummer_class(const RatFunc& f);
KummerClass kummer_mul(const KummerClass& a, const KummerClass& b);

// Artin-Schreier classes of F, q even: f mod the image of x^2 + x.  Normal
// form: a constant bit (absolute trace of the constant term), principal parts
// at finite primes with poles only in odd orders, and a polynomial tail
// supported on odd-degree monomials.  The form is unique: any nonzero element
// of this shape has a pole of odd order somewhere (or nonzero trace), while
// every element of the image of x^2 + x has even-order poles only.
struct ASClass {
  const FqCtx* k = nullptr;
  bool constant_part = false;
  std::vector<std::pair<Poly, RatFunc>> finite;  // sorted by prime
  Poly infinity;  // odd-degree monomials, zero constant term

  bool is_trivial() const {
    return !constant_part && finite.empty() && infinity.is_zero();
  }
  bool wild() const { return !infinity.is_zero(); }
  RatFunc rep() const;
  // prod P^(m_P + 1), m_P the largest (odd) pole order at P.
  Poly finite_conductor() const;

  friend bool operator==(const ASClass& a, const ASClass& b) {
    return a.constant_part == b.constant_part && a.finite == b.finite &&
           a.infinity == b.infinity;
  }
  friend bool operator!=(const ASClass& a, const ASClass& b) { return !(a == b); }
};

ASClass as_reduce(const RatFunc& f);
ASClass as_add(const ASClass& a, const ASClass& b);

// The canonical constant of absolute trace 1 (the representative of the
// nontrivial constant AS class).
uint8_t as_trace_one_constant(const FqCtx& k);

// Where a quadratic extension sits inside the Hayes decomposition
// E . K_T . L_infinity of the maximal abelian extension: whether the constant
// quadratic E-part is needed, the finite Carlitz conductor, and whether the
// extension is wildly ramified at infinity (in which case it is not contained
// in E . K_T at all and the conductor only covers the finite part).
struct HayesClass {
  bool constant_needed = false;
  Poly conductor;
  bool wild = false;
};

HayesClass hayes_classify(const KummerClass& c);
HayesClass hayes_classify(const ASClass& c);

// The quadratic subfield of the P-th Carlitz cyclotomic extension, q odd:
// F(sqrt(eta P)) with eta = (-1)^deg P.  For deg P <= 2 the class is
// recomputed from scratch via Gauss periods and the rule is asserted against
// it; see carlitz_quad_subfield_gauss.
KummerClass carlitz_quad_subfield(const Poly& P);

// Gauss-period computation of the same class (deg P small enough that the
// cyclotomic field F[x]/(C_P(x)/x) is manageable).
KummerClass carlitz_quad_subfield_gauss(const Poly& P);

}  // namespace drinfeld
