#pragma once

#include <string>

#include "drinfeld/module.hpp"
#include "drinfeld/skew.hpp"

namespace drinfeld {

// Shared element grammar.  Integer literals are reduced mod p, `w` is the
// fixed generator of F_{p^e}, `T` the polynomial variable and `t` the twist
// tau.  Operators: + - * / ^ and parentheses; juxtaposition multiplies, so
// `2T` and `2*T` agree.  Division requires both operands to be free of `t`.
// Products are taken left to right and are NOT commutative once `t` is
// involved: `t*T` parses to T^q t.

Poly parse_poly(const FqCtx& k, const std::string& text);
RatFunc parse_ratfunc(const FqCtx& k, const std::string& text);
SkewPoly<RatField> parse_skew(const FqCtx& k, const std::string& text);

// phi_T as a skew expression; the t-free term must be exactly T and at
// least one positive power of t must appear.
ModuleF parse_module(const FqCtx& k, const std::string& text);

std::string skew_str(const RatField& F, const SkewPoly<RatField>& f);
std::string module_str(const ModuleF& phi);

}  // namespace drinfeld
