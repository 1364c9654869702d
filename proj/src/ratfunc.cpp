#include "drinfeld/ratfunc.hpp"

namespace drinfeld {

void RatFunc::normalize() {
  check(num.k && den.k && num.k == den.k, Err::ConfigMismatch,
        "numerator and denominator over different fields");
  check(!den.is_zero(), Err::DivisionByZero, "zero denominator");
  if (num.is_zero()) {
    den = Poly::one(*den.k);
    return;
  }
  Poly g = poly_gcd(num, den);
  if (g.deg_or(0) > 0) {
    num = num / g;
    den = den / g;
  }
  uint8_t u = den.lc();
  if (u != 1) {
    uint8_t ui = den.k->inv(u);
    num = num.wrap(up_scale(num.field(), ui, num.c));
    den = den.wrap(up_scale(den.field(), ui, den.c));
  }
}

std::string RatFunc::str() const {
  if (den.is_one()) return num.str();
  return "(" + num.str() + ")/(" + den.str() + ")";
}

int poly_valuation(const Poly& f, const Poly& P) {
  check(!f.is_zero(), Err::ValuationOfZero, "valuation of the zero polynomial");
  check(P.deg_or(0) >= 1 && P.is_monic(), Err::Precondition,
        "valuation prime must be monic of positive degree");
  int v = 0;
  Poly g = f;
  while (true) {
    auto [q, r] = std::pair{g / P, g % P};
    if (!r.is_zero()) return v;
    g = q;
    ++v;
  }
}

int RatFunc::valuation(const Poly& P) const {
  check(!is_zero(), Err::ValuationOfZero, "valuation of zero");
  int vd = poly_valuation(den, P);
  return poly_valuation(num, P) - vd;
}

int RatFunc::valuation_inf() const {
  check(!is_zero(), Err::ValuationOfZero, "valuation of zero");
  return den.deg_or(0) - num.deg_or(0);
}

RatFunc rf_pow(const RatFunc& a, uint64_t n) {
  RatFunc acc = RatFunc::one(a.ctx()), base = a;
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

}  // namespace drinfeld
