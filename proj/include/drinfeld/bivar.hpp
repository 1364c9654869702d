#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/factor.hpp"
#include "drinfeld/tab.hpp"
#include "drinfeld/upoly.hpp"

namespace drinfeld {

// Polynomials in K_s[T][x] where K_s is a table field.  cx[i] is the
// coefficient of x^i, itself a polynomial in T (low degree first).  The
// trailing coefficient is nonzero; an empty cx means the zero polynomial.
struct BiPoly {
  const TabCtx* k = nullptr;
  std::vector<UP<TabField>> cx;

  bool is_zero() const { return cx.empty(); }
  int deg_x() const { return static_cast<int>(cx.size()) - 1; }
  int deg_T() const;
  std::string str(const std::string& xvar = "x") const;
};

BiPoly bp_make(const TabCtx& k, std::vector<UP<TabField>> cx);
BiPoly bp_from_univariate_x(const TabCtx& k, const UP<TabField>& f);
BiPoly bp_from_univariate_T(const TabCtx& k, const UP<TabField>& c);

bool bp_eq(const BiPoly& a, const BiPoly& b);
bool bp_less(const BiPoly& a, const BiPoly& b);
BiPoly bp_add(const BiPoly& a, const BiPoly& b);
BiPoly bp_sub(const BiPoly& a, const BiPoly& b);
BiPoly bp_mul(const BiPoly& a, const BiPoly& b);
BiPoly bp_scale_T(const UP<TabField>& c, const BiPoly& f);
BiPoly bp_derivative_x(const BiPoly& f);
UP<TabField> bp_eval_T(const BiPoly& f, uint16_t t0);
BiPoly bp_taylor_shift_T(const BiPoly& f, uint16_t c);

// Content and primitive part with respect to x: the content is the monic gcd
// in K[T] of the x-coefficients.
UP<TabField> bp_content_x(const BiPoly& f);
BiPoly bp_primitive_x(const BiPoly& f);

// Exact division in K[T][x]; nullopt when g does not divide f there.  For g
// primitive in x this is also a divisibility test over K(T), by Gauss.
std::optional<BiPoly> bp_div_exact(const BiPoly& f, const BiPoly& g);

// Gcd over K(T)[x] via a primitive remainder sequence; the result is
// primitive in x with monic leading T-coefficient (1 for coprime inputs).
BiPoly bp_gcd_x(const BiPoly& a, const BiPoly& b);

struct BiFactor {
  BiPoly f;
  unsigned mult;
};

// f = unit * content(T) * prod factors_i ^ mult_i, with the content monic in
// K[T] and each factor irreducible over K(T), primitive in x, and normalized
// so that its leading x-coefficient is monic in T.  content_factors is the
// irreducible decomposition of the content.
struct BiFactorization {
  uint16_t unit;
  UP<TabField> content;
  std::vector<UPFactor<TabField>> content_factors;
  std::vector<BiFactor> factors;
};

BiFactorization bivar_factor(const BiPoly& f);
bool bivar_is_irreducible(const BiPoly& f);

}  // namespace drinfeld
