#include "drinfeld/factor.hpp"

namespace drinfeld {

std::pair<uint8_t, std::vector<PolyFactor>> factor_poly(const Poly& f) {
  FqField k = f.field();
  auto [unit, parts] = up_factor(k, f.c);
  std::vector<PolyFactor> out;
  out.reserve(parts.size());
  for (auto& pf : parts) out.push_back({f.wrap(pf.f), pf.mult});
  return {unit, out};
}

bool is_irreducible(const Poly& f) { return up_is_irreducible(f.field(), f.c); }

bool is_squarefree(const Poly& f) {
  check(!f.is_zero(), Err::Precondition, "squarefree test on zero");
  if (f.deg_or(0) == 0) return true;
  Poly d = f.derivative();
  if (d.is_zero()) return false;
  return poly_gcd(f, d).deg_or(0) == 0;
}

Poly squarefree_part(const Poly& f) {
  check(!f.is_zero(), Err::Precondition, "squarefree part of zero");
  Poly out = Poly::one(*f.k);
  for (auto& part : up_squarefree_decomposition(f.field(), f.c))
    out = out * f.wrap(part.f);
  return out;
}

std::vector<Poly> enumerate_primes(const FqCtx& k, unsigned min_deg, unsigned max_deg) {
  check(min_deg >= 1, Err::Precondition, "primes have degree >= 1");
  std::vector<Poly> out;
  FqField kf(k);
  for (unsigned d = min_deg; d <= max_deg; ++d) {
    uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) {
      count *= k.q();
      check(count <= 10'000'000, Err::SizeLimit, "prime enumeration range too large");
    }
    std::vector<std::pair<std::vector<uint8_t>, Poly>> batch;
    for (uint64_t v = 0; v < count; ++v) {
      std::vector<uint8_t> c(d + 1, 0);
      uint64_t t = v;
      for (unsigned i = 0; i < d; ++i) {
        c[i] = static_cast<uint8_t>(t % k.q());
        t /= k.q();
      }
      c[d] = 1;
      if (c[0] == 0 && d > 1) continue;  // divisible by T
      Poly cand(k, c);
      if (up_is_irreducible(kf, cand.c)) batch.push_back({cand.c, cand});
    }
    std::sort(batch.begin(), batch.end(), [&](const auto& a, const auto& b) {
      return up_less(kf, a.first, b.first);
    });
    for (auto& [cv, cp] : batch) out.push_back(cp);
  }
  return out;
}

}  // namespace drinfeld
