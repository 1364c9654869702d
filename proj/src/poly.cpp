#include "drinfeld/poly.hpp"

namespace drinfeld {

std::string poly_to_string(const FqCtx& k, const std::vector<uint8_t>& c,
                           const std::string& var) {
  if (c.empty()) return "0";
  std::string out;
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    std::string cs = k.str(c[i]);
    bool composite = cs.find('+') != std::string::npos;
    if (i == 0) {
      out += composite ? "(" + cs + ")" : cs;
      continue;
    }
    if (cs != "1") {
      out += composite ? "(" + cs + ")" : cs;
      out += "*";
    }
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

std::string Poly::str() const { return poly_to_string(*k, c, "T"); }

Poly poly_gcd(const Poly& a, const Poly& b) {
  FqField f(*a.k);
  return a.wrap(up_gcd(f, a.c, b.c));
}

Poly poly_pow_mod(const Poly& base, uint64_t n, const Poly& m) {
  FqField f(*base.k);
  return base.wrap(up_pow_mod(f, base.c, n, m.c));
}

}  // namespace drinfeld
