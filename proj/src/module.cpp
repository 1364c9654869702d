#include "drinfeld/module.hpp"

namespace drinfeld {

uint16_t residue_of_T(const TabCtx& kp) {
  if (kp.s() == 1) return kp.embed(kp.base().neg(kp.modulus()[0]));
  return kp.from_digits({0, 1});
}

uint16_t residue_of_poly(const TabCtx& kp, const Poly& f) {
  check(f.k == &kp.base(), Err::ConfigMismatch, "polynomial over the wrong base field");
  uint16_t t = residue_of_T(kp), acc = 0;
  for (size_t i = f.c.size(); i-- > 0;)
    acc = kp.add(kp.mul(acc, t), kp.embed(f.c[i]));
  return acc;
}

uint16_t residue_of_ratfunc(const TabCtx& kp, const RatFunc& f) {
  uint16_t d = residue_of_poly(kp, f.den);
  check(d != 0, Err::BadReduction,
        "denominator vanishes at the reduction prime");
  return kp.mul(residue_of_poly(kp, f.num), kp.inv(d));
}

ModuleRes reduce_mod(const ModuleF& M, const Poly& P) {
  check(P.is_monic() && P.deg_or(0) >= 1, Err::Precondition,
        "reduction prime must be monic of positive degree");
  check(is_irreducible(P), Err::Precondition, "reduction modulus must be prime");
  const TabCtx& kp = TabCtx::get(*P.k, P.c);
  TabField kf(kp);
  std::vector<uint16_t> g;
  for (auto& gi : M.g) g.push_back(residue_of_ratfunc(kp, gi));
  check(g.back() != 0, Err::BadReduction,
        "top coefficient of phi_T vanishes at the reduction prime");
  return ModuleRes(kf, residue_of_T(kp), g);
}

ModuleF make_rank2(const FqCtx& k, const RatFunc& g1, const RatFunc& g2) {
  RatField F(k);
  return ModuleF(F, RatFunc::T(k), {g1, g2});
}

}  // namespace drinfeld
