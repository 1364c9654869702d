#include "drinfeld/classfield.hpp"

#include <algorithm>
#include <set>

#include "drinfeld/ext.hpp"
#include "drinfeld/linalg.hpp"
#include "drinfeld/module.hpp"

namespace drinfeld {

KummerClass kummer_class(const RatFunc& f) {
  const FqCtx& k = f.ctx();
  check(k.p() != 2, Err::EvenCharacteristic,
        "square classes are Artin-Schreier data in characteristic 2");
  check(!f.is_zero(), Err::Precondition, "square class of zero");
  Poly g = f.num * f.den;  // same class as f
  KummerClass out;
  out.k = &k;
  out.unit = k.is_square(g.lc()) ? 1 : k.nonsquare_unit();
  out.m = Poly::one(k);
  for (auto& part : up_squarefree_decomposition(g.field(), g.c))
    if (part.mult % 2 == 1) out.m = out.m * g.wrap(part.f);
  return out;
}

KummerClass kummer_mul(const KummerClass& a, const KummerClass& b) {
  check(a.k == b.k, Err::ConfigMismatch, "classes over different fields");
  const FqCtx& k = *a.k;
  KummerClass out;
  out.k = &k;
  out.unit = k.is_square(k.mul(a.unit, b.unit)) ? 1 : k.nonsquare_unit();
  Poly g = poly_gcd(a.m, b.m);
  out.m = (a.m / g) * (b.m / g);
  return out;
}

uint8_t as_trace_one_constant(const FqCtx& k) {
  check(k.p() == 2, Err::OddCharacteristic,
        "Artin-Schreier constants live in characteristic 2");
  for (unsigned c = 1; c < k.q(); ++c)
    if (k.abs_trace(static_cast<uint8_t>(c)) == 1) return static_cast<uint8_t>(c);
  raise(Err::Internal, "no trace-one constant");
}

RatFunc ASClass::rep() const {
  RatFunc acc = RatFunc::zero(*k);
  if (constant_part) acc = acc + RatFunc::constant(*k, as_trace_one_constant(*k));
  for (auto& [P, part] : finite) acc = acc + part;
  return acc + RatFunc(infinity);
}

Poly ASClass::finite_conductor() const {
  Poly out = Poly::one(*k);
  for (auto& [P, part] : finite) {
    int m = -part.valuation(P);
    for (int i = 0; i < m + 1; ++i) out = out * P;
  }
  return out;
}

namespace {

// Rewrite a principal part num/P^m so that only odd pole orders carry digits:
// an even-position digit s is replaced through x^2+x applied to sqrt(s)/P^(j/2).
RatFunc normalize_as_part(const FqCtx& k, const Poly& P, Poly num, unsigned m) {
  FqField kf(k);
  uint64_t kp_card = 1;
  for (int i = 0; i < P.deg_or(0); ++i) kp_card *= k.q();
  // base-P digits of the numerator: num = sum digit[j] P^(m-j), j = 1..m
  std::vector<Poly> digit(m + 1, Poly::zero(k));
  Poly t = num;
  for (unsigned idx = 0; idx < m && !t.is_zero(); ++idx) {
    digit[m - idx] = t % P;
    t = t / P;
  }
  check(t.is_zero(), Err::Internal, "principal part numerator too large");
  for (unsigned j = m; j >= 2; --j) {
    if (j % 2 != 0 || digit[j].is_zero()) continue;
    Poly u = Poly(k, up_pow_mod(kf, digit[j].c, kp_card / 2, P.c));
    // subtract u^2/P^j + u/P^(j/2); the u^2 carry lands one position up
    Poly carry = (u * u) / P;
    digit[j] = Poly::zero(k);
    digit[j - 1] = digit[j - 1] + carry;  // char 2: minus = plus
    digit[j / 2] = digit[j / 2] + u;
    check(digit[j - 1].deg_or(-1) < P.deg_or(0), Err::Internal,
          "digit overflow in Artin-Schreier reduction");
  }
  Poly out = Poly::zero(k);
  for (unsigned j = 1; j <= m; ++j) {
    Poly pw = Poly::one(k);
    for (unsigned i = 0; i < m - j; ++i) pw = pw * P;
    out = out + digit[j] * pw;
  }
  Poly den = Poly::one(k);
  for (unsigned i = 0; i < m; ++i) den = den * P;
  return RatFunc(out, den);
}

}  // namespace

ASClass as_reduce(const RatFunc& f) {
  const FqCtx& k = f.ctx();
  check(k.p() == 2, Err::OddCharacteristic,
        "Artin-Schreier reduction requires characteristic 2");
  FqField kf(k);
  ASClass out;
  out.k = &k;
  out.infinity = Poly::zero(k);

  Poly polypart = f.num / f.den;
  Poly r = f.num % f.den;

  // partial fractions of r / den over the prime powers of den
  if (!r.is_zero()) {
    auto [unit, dparts] = factor_poly(f.den);
    (void)unit;  // monic by RatFunc normalization
    RatFunc recon = RatFunc::zero(k);
    for (auto& [P, e] : dparts) {
      Poly die = Poly::one(k);
      for (unsigned i = 0; i < e; ++i) die = die * P;
      Poly rest = f.den / die;
      Poly inv = Poly(k, up_inv_mod(kf, rest.c, die.c));
      Poly numi = (r * inv) % die;
      if (numi.is_zero()) continue;
      RatFunc part(numi, die);
      recon = recon + part;
      unsigned m = static_cast<unsigned>(-part.valuation(P));
      RatFunc reduced = normalize_as_part(k, P, part.num, m);
      // part and reduced differ by an element of the image of x^2+x, and the
      // reduced form may have dropped to zero
      if (!reduced.is_zero()) out.finite.push_back({P, reduced});
    }
    check(recon == RatFunc(r, f.den), Err::Internal, "partial fractions disagree");
    std::sort(out.finite.begin(), out.finite.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  // polynomial tail: fold even-degree monomials down through x^2+x
  std::vector<uint8_t> b = polypart.c;
  for (size_t i = b.size(); i > 2;) {
    --i;
    if (i % 2 != 0 || b[i] == 0) continue;
    uint8_t u = k.sqrt(b[i]);
    b[i] = 0;
    b[i / 2] = k.add(b[i / 2], u);
  }
  if (!b.empty()) {
    out.constant_part = k.abs_trace(b[0]) == 1;
    b[0] = 0;
  }
  out.infinity = Poly(k, b);
  return out;
}

ASClass as_add(const ASClass& a, const ASClass& b) {
  check(a.k == b.k, Err::ConfigMismatch, "classes over different fields");
  return as_reduce(a.rep() + b.rep());
}

HayesClass hayes_classify(const KummerClass& c) {
  const FqCtx& k = *c.k;
  HayesClass out;
  out.conductor = c.m;
  out.wild = false;
  // the quadratic inside F(C[m]) has class ((-1)^deg m) * m; any discrepancy
  // in the unit is a constant-field twist
  uint8_t want = (c.m.deg_or(0) % 2 == 1) ? k.neg(1) : 1;
  uint8_t want_unit = k.is_square(want) ? 1 : k.nonsquare_unit();
  out.constant_needed = c.unit != want_unit;
  return out;
}

HayesClass hayes_classify(const ASClass& c) {
  HayesClass out;
  out.constant_needed = c.constant_part;
  out.conductor = c.finite_conductor();
  out.wild = c.wild();
  return out;
}

KummerClass carlitz_quad_subfield_gauss(const Poly& P) {
  const FqCtx& k = *P.k;
  check(k.p() != 2, Err::EvenCharacteristic, "no quadratic subfield for even q here");
  check(P.is_monic() && is_irreducible(P), Err::Precondition,
        "Carlitz modulus must be a monic prime");
  unsigned d = static_cast<unsigned>(P.deg_or(0));
  uint64_t n = 1;
  for (unsigned i = 0; i < d; ++i) n *= k.q();
  check(n <= 128, Err::SizeLimit, "Gauss period field too large");

  RatField F(k);
  auto C = carlitz_module(F, RatFunc::T(k));
  UP<RatField> CP = torsion_polynomial(C, P.c);
  // C_P(x)/x, the Carlitz cyclotomic polynomial of P: irreducible of degree n-1
  UP<RatField> Cx(CP.begin() + 1, CP.end());
  Ext<RatField> L(F, Cx);
  auto lambda = L.gen();

  // theta = sum over the square residue classes s mod P of C_s(lambda)
  std::set<uint64_t> squares;
  FqField kf(k);
  for (uint64_t idx = 1; idx < n; ++idx) {
    std::vector<uint8_t> a;
    uint64_t t = idx;
    for (unsigned i = 0; i < d; ++i) {
      a.push_back(static_cast<uint8_t>(t % k.q()));
      t /= k.q();
    }
    up_norm(kf, a);
    UP<FqField> sq = up_rem(kf, up_mul(kf, a, a), P.c);
    uint64_t key = 0;
    for (size_t i = sq.size(); i-- > 0;) key = key * k.q() + sq[i];
    squares.insert(key);
  }
  std::vector<Ext<RatField>::Elem> conjugates;
  for (uint64_t key : squares) {
    std::vector<uint8_t> s;
    uint64_t t = key;
    for (unsigned i = 0; i < d; ++i) {
      s.push_back(static_cast<uint8_t>(t % k.q()));
      t /= k.q();
    }
    up_norm(kf, s);
    SkewPoly<RatField> Cs = phi_of(C, s);
    conjugates.push_back(apply_skew(
        L, Cs, [&](const RatFunc& c) { return L.embed(c); }, lambda));
  }

  // Gauss periods of successive powers: theta_j = sum_{s in H} sigma_s(lambda)^j
  // is the trace of lambda^j to the fixed field of the squares.  The plain
  // j = 1 period can collapse (e.g. when -1 is a square both s and -s occur),
  // so take the first power that actually generates the quadratic subfield and
  // read off its minimal polynomial x^2 + b x + c by linear algebra.
  unsigned N = L.ext_deg();
  std::vector<Ext<RatField>::Elem> powers(conjugates.size(), L.one());
  for (unsigned j = 1; j <= N; ++j) {
    auto theta = L.zero();
    for (size_t i = 0; i < conjugates.size(); ++i) {
      powers[i] = L.mul(powers[i], conjugates[i]);
      theta = L.add(theta, powers[i]);
    }
    if (up_deg(theta) <= 0) continue;  // period lies in F, try the next power
    auto theta2 = L.mul(theta, theta);
    Mat<RatField> A(F, N, 2);
    std::vector<RatFunc> rhs(N, F.zero());
    for (unsigned r = 0; r < N; ++r) {
      A.at(r, 0) = r < theta.size() ? theta[r] : F.zero();
      A.at(r, 1) = r == 0 ? F.one() : F.zero();
      rhs[r] = F.neg(r < theta2.size() ? theta2[r] : F.zero());
    }
    SolveInfo info;
    auto sol = mat_solve(F, A, rhs, &info);
    check(sol.has_value() && info.kernel_dim == 0, Err::Internal,
          "Gauss period outside the quadratic subfield");
    RatFunc b = (*sol)[0], c = (*sol)[1];
    RatFunc disc = b * b - RatFunc::constant(k, k.scalar_from_int(4)) * c;
    return kummer_class(disc);
  }
  raise(Err::Internal, "no Gauss period generated the quadratic subfield");
}

KummerClass carlitz_quad_subfield(const Poly& P) {
  const FqCtx& k = *P.k;
  check(k.p() != 2, Err::EvenCharacteristic,
        "F(C[P])/F has odd degree for q = 2: no quadratic subfield");
  check(P.is_monic() && is_irreducible(P), Err::Precondition,
        "Carlitz modulus must be a monic prime");
  KummerClass out;
  out.k = &k;
  uint8_t u = (P.deg_or(0) % 2 == 1) ? k.neg(1) : 1;
  out.unit = k.is_square(u) ? 1 : k.nonsquare_unit();
  out.m = P;
  if (P.deg_or(0) <= 2) {
    KummerClass gauss = carlitz_quad_subfield_gauss(P);
    check(gauss == out, Err::Internal,
          "Gauss period class disagrees with the sign rule");
  }
  return out;
}

}  // namespace drinfeld
