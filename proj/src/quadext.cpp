#include "drinfeld/quadext.hpp"

#include <functional>

#include "drinfeld/factor.hpp"
#include "drinfeld/frobenius.hpp"
#include "drinfeld/tower.hpp"

namespace drinfeld {

bool QuadExtDescriptor::trivial() const {
  if (kummer) return kummer->is_trivial();
  if (artin_schreier) return artin_schreier->is_trivial();
  return true;
}

bool QuadExtDescriptor::constant() const {
  if (trivial()) return false;
  if (kummer) return kummer->is_constant();
  return artin_schreier->finite.empty() && !artin_schreier->wild();
}

bool QuadExtDescriptor::wild() const {
  return artin_schreier && artin_schreier->wild();
}

std::string QuadExtDescriptor::class_str() const {
  if (kummer) return kummer->str();
  if (artin_schreier) return artin_schreier->rep().str();
  return "1";
}

QuadExtDescriptor quad_subext(const ModuleF& phi, const Poly& ell) {
  check(phi.rank() == 2, Err::RankMismatch, "quadratic subextension needs rank 2");
  check(ell.k != nullptr && ell.is_monic() && ell.deg_or(-1) == 1, Err::Precondition,
        "quadratic subextension needs a monic degree-one modulus");
  const FqCtx& kq = *ell.k;
  QuadExtDescriptor d;
  d.ell = ell;

  if (kq.q() == 3) {
    d.construction = "determinant-kummer";
    d.kummer = kummer_class(RatFunc(ell) / phi.g[1]);
    d.hayes = hayes_classify(*d.kummer);
    return d;
  }
  if (kq.q() == 2) {
    const RatFunc& g1 = phi.g[0];
    const RatFunc& g2 = phi.g[1];
    if (g1.is_zero()) {
      d.construction = "constant-artin-schreier";
      d.artin_schreier =
          as_reduce(RatFunc::constant(kq, as_trace_one_constant(kq)));
      d.hayes = hayes_classify(*d.artin_schreier);
      return d;
    }
    unsigned deg = splitting_field_degree(phi, ell);
    check(deg == 6, Err::ImageTooSmall,
          "mod-l image has order " + std::to_string(deg) +
              ", not 6; the resolvent class is undefined");
    RatFunc b = rf_pow(RatFunc(ell), 4) * g2 * g2 / rf_pow(g1, 6);
    RatFunc b2 = b * b;
    d.construction = "cubic-resolvent";
    d.artin_schreier = as_reduce((RatFunc::one(kq) + b2) / b2);
    d.hayes = hayes_classify(*d.artin_schreier);
    check(!d.artin_schreier->is_trivial(), Err::Internal,
          "full mod-l image with a trivial resolvent class");
    return d;
  }
  raise(Err::UnsupportedField,
        "quadratic subextension theory is implemented for q in {2,3}");
}

QuadExtDescriptor carlitz_quad_descriptor(const Poly& P) {
  QuadExtDescriptor d;
  d.ell = P;
  d.construction = "carlitz";
  d.kummer = carlitz_quad_subfield(P);
  d.hayes = hayes_classify(*d.kummer);
  return d;
}

int quad_character_value(const KummerClass& c, const Poly& P) {
  check(c.k != nullptr, Err::Precondition, "character class is unset");
  check(P.is_monic() && is_irreducible(P), Err::Precondition,
        "character point must be a monic prime");
  const TabCtx& kp = TabCtx::get(*c.k, P.c);
  uint16_t r = residue_of_ratfunc(kp, c.rep());
  if (r == 0) return 0;
  return kp.is_square(r) ? 1 : -1;
}

int quad_character_value(const ASClass& c, const Poly& P) {
  check(c.k != nullptr, Err::Precondition, "character class is unset");
  check(c.k->q() == 2, Err::Precondition,
        "Artin-Schreier characters are implemented over F_2");
  check(P.is_monic() && is_irreducible(P), Err::Precondition,
        "character point must be a monic prime");
  const TabCtx& kp = TabCtx::get(*c.k, P.c);
  uint16_t r;
  try {
    r = residue_of_ratfunc(kp, c.rep());
  } catch (const Error& e) {
    if (e.code() == Err::BadReduction) return 0;
    throw;
  }
  uint16_t t = 0, x = r;
  for (unsigned i = 0; i < kp.s(); ++i) {
    t = kp.add(t, x);
    x = kp.mul(x, x);
  }
  return t == 0 ? 1 : -1;
}

int quad_character_value(const QuadExtDescriptor& d, const Poly& P) {
  if (d.kummer) return quad_character_value(*d.kummer, P);
  if (d.artin_schreier) return quad_character_value(*d.artin_schreier, P);
  return 1;
}

namespace {

SplitReport run_split_check(const std::function<int(const Poly&)>& chi_at,
                            const ModuleF& phi, const Poly& a, unsigned max_deg,
                            unsigned min_split) {
  check(a.k != nullptr && a.is_monic() && a.deg_or(-1) >= 1, Err::Precondition,
        "torsion conductor must be monic nonconstant");
  const FqCtx& kq = *a.k;
  SplitReport rep;
  rep.a = a;
  rep.max_deg = max_deg;
  rep.min_required = min_split;

  for (const Poly& P : enumerate_primes(kq, 1, max_deg)) {
    if (poly_gcd(a, P).deg_or(0) > 0) {
      rep.skipped.push_back({P, "divides the torsion conductor"});
      continue;
    }
    int cv = chi_at(P);
    if (cv == 0) {
      rep.skipped.push_back({P, "character ramified"});
      continue;
    }
    std::optional<ModuleRes> Mres;
    try {
      Mres.emplace(reduce_mod(phi, P));
    } catch (const Error& e) {
      if (e.code() != Err::BadReduction) throw;
      rep.skipped.push_back({P, "bad reduction"});
      continue;
    }
    const TabField& kp = Mres->k;
    UP<TabField> Phi = torsion_polynomial(*Mres, a.c);
    check(!kp.is_zero(up_coeff(kp, Phi, 1)), Err::Internal,
          "coprime conductor vanished at the sampled prime");
    UP<TabField> cof = up_monic(kp, UP<TabField>(Phi.begin() + 1, Phi.end()));
    UP<TabField> R = up_pow_mod(kp, up_x(kp), kp.card(), cof);
    if (!up_eq(kp, R, up_rem(kp, up_x(kp), cof))) continue;
    ++rep.total_split;
    if (cv > 0)
      ++rep.confirming;
    else
      rep.counterexamples.push_back(P);
  }
  check(rep.total_split >= min_split, Err::InsufficientSplitPrimes,
        "only " + std::to_string(rep.total_split) +
            " totally split primes of degree <= " + std::to_string(max_deg));
  return rep;
}

}  // namespace

SplitReport verify_subfield_by_splitting(const KummerClass& chi, const ModuleF& phi,
                                         const Poly& a, unsigned max_deg,
                                         unsigned min_split) {
  return run_split_check(
      [&](const Poly& P) { return quad_character_value(chi, P); }, phi, a, max_deg,
      min_split);
}

SplitReport verify_subfield_by_splitting(const ASClass& chi, const ModuleF& phi,
                                         const Poly& a, unsigned max_deg,
                                         unsigned min_split) {
  return run_split_check(
      [&](const Poly& P) { return quad_character_value(chi, P); }, phi, a, max_deg,
      min_split);
}

SplitReport verify_subfield_by_splitting(const QuadExtDescriptor& chi,
                                         const ModuleF& phi, const Poly& a,
                                         unsigned max_deg, unsigned min_split) {
  return run_split_check(
      [&](const Poly& P) { return quad_character_value(chi, P); }, phi, a, max_deg,
      min_split);
}

Claim51Report claim_check_5_1(const ModuleF& phi) {
  check(phi.rank() == 2, Err::RankMismatch, "claim check needs rank 2");
  const FqCtx& kq = phi.t0.ctx();
  check(kq.q() == 3, Err::Precondition, "claim check is specific to F_3(T)");
  const RatFunc& g2 = phi.g[1];

  Claim51Report rep;
  KummerClass neg_g2 = kummer_class(-g2);
  rep.precondition_ok = !neg_g2.is_trivial();
  rep.all_distinct = true;
  for (uint8_t c = 0; c < 3; ++c) {
    Poly ell(kq, {c, 1});
    Claim51Row row;
    row.ell = ell;
    row.division_class = kummer_class(RatFunc(ell) / g2);
    row.carlitz_class = carlitz_quad_subfield(ell);
    // (ell/g2) * (-ell) = -ell^2/g2, a square times -g2.
    check(kummer_mul(row.division_class, row.carlitz_class) == neg_g2, Err::Internal,
          "class ratio drifted from the class of -g2");
    row.distinct = !(row.division_class == row.carlitz_class);
    rep.all_distinct = rep.all_distinct && row.distinct;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

const char* witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::TwoConstant: return "TwoConstant";
    case WitnessKind::SharedQuadraticClass: return "SharedQuadraticClass";
    case WitnessKind::DetDeficient: return "DetDeficient";
    case WitnessKind::CarlitzLinkage: return "CarlitzLinkage";
    case WitnessKind::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

namespace {

std::optional<Poly> poly_sqrt(const Poly& f) {
  if (f.is_zero()) return Poly::zero(*f.k);
  auto [unit, factors] = factor_poly(f);
  if (!f.k->is_square(unit)) return std::nullopt;
  Poly out = Poly::constant(*f.k, f.k->sqrt(unit));
  for (const auto& pf : factors) {
    if (pf.mult % 2 != 0) return std::nullopt;
    for (unsigned i = 0; i < pf.mult / 2; ++i) out = out * pf.f;
  }
  return out;
}

// Compare the class-predicted character against the division-field side at
// every good prime: mod-ell determinant squareness for q = 3, the torsion
// permutation sign for q = 2.
void sample_characters(WitnessValidation& val, const ModuleF& phi,
                       const std::vector<ModulusClassData>& targets,
                       unsigned max_deg) {
  if (targets.empty()) return;
  const FqCtx& kq = phi.t0.ctx();
  for (const Poly& P : enumerate_primes(kq, 1, max_deg)) {
    bool is_target = false;
    for (const auto& t : targets) is_target = is_target || P == t.ell;
    if (is_target) continue;
    std::optional<ModuleRes> Mres;
    try {
      Mres.emplace(reduce_mod(phi, P));
    } catch (const Error& e) {
      if (e.code() != Err::BadReduction) throw;
      continue;
    }
    std::optional<FrobCharPoly> fc;
    if (kq.q() == 3) fc.emplace(frob_charpoly(*Mres));
    for (const auto& t : targets) {
      int predicted = quad_character_value(t.descriptor, P);
      if (predicted == 0) continue;
      int observed;
      if (kq.q() == 3) {
        uint8_t v = kq.mul(fc->mu, P.eval(kq.neg(t.ell.c[0])));
        observed = kq.is_square(v) ? 1 : -1;
      } else {
        std::vector<unsigned> pat = division_pattern(*Mres, t.ell);
        observed = pat == std::vector<unsigned>{1, 2} ? -1 : 1;
      }
      ++val.character_samples;
      if (observed != predicted) ++val.character_mismatches;
    }
  }
}

}  // namespace

EntanglementWitness nonsurjectivity_witness(const ModuleF& phi,
                                            unsigned sample_max_deg) {
  check(phi.rank() == 2, Err::RankMismatch, "witness generation needs rank 2");
  const FqCtx& kq = phi.t0.ctx();
  check(kq.q() == 2 || kq.q() == 3, Err::UnsupportedField,
        "witness generation is implemented for q in {2,3}");

  EntanglementWitness w;
  for (uint8_t c = 0; c < kq.q(); ++c) {
    Poly ell(kq, {c, 1});
    try {
      w.all_classes.push_back({ell, quad_subext(phi, ell)});
    } catch (const Error& e) {
      if (e.code() != Err::ImageTooSmall) throw;
      w.kind = WitnessKind::DetDeficient;
      w.moduli = {ell};
      w.validation.notes.push_back(std::string("mod-l image too small: ") + e.what());
      w.proves_nonsurjective = true;
      return w;
    }
  }

  for (const auto& mcd : w.all_classes) {
    if (!mcd.descriptor.trivial()) continue;
    w.kind = WitnessKind::DetDeficient;
    w.moduli = {mcd.ell};
    w.descriptor = mcd.descriptor;
    if (kq.q() == 3) {
      RatFunc x = RatFunc(mcd.ell) / phi.g[1];
      std::optional<Poly> h = poly_sqrt(x.num * x.den);
      check(h.has_value(), Err::Internal, "trivial class without an explicit root");
      RatFunc root(*h, x.den);
      check(root * root == x, Err::Internal, "explicit square root failed to verify");
      w.validation.notes.push_back("ell/g2 = h^2 with h = " + root.str());
    }
    sample_characters(w.validation, phi, {{mcd.ell, mcd.descriptor}}, sample_max_deg);
    w.proves_nonsurjective = true;
    return w;
  }

  for (size_t i = 0; i < w.all_classes.size(); ++i)
    for (size_t j = i + 1; j < w.all_classes.size(); ++j) {
      if (!(w.all_classes[i].descriptor == w.all_classes[j].descriptor)) continue;
      const QuadExtDescriptor& shared = w.all_classes[i].descriptor;
      w.kind = shared.constant() ? WitnessKind::TwoConstant
                                 : WitnessKind::SharedQuadraticClass;
      w.moduli = {w.all_classes[i].ell, w.all_classes[j].ell};
      w.descriptor = shared;
      sample_characters(w.validation, phi, {w.all_classes[i], w.all_classes[j]},
                        sample_max_deg);
      w.proves_nonsurjective = true;
      return w;
    }

  for (const auto& mcd : w.all_classes) {
    const QuadExtDescriptor& d = mcd.descriptor;
    if (d.trivial() || d.wild() || d.hayes.constant_needed) continue;
    if (d.hayes.conductor.deg_or(0) < 1) continue;
    if (poly_gcd(d.hayes.conductor, mcd.ell).deg_or(0) != 0) continue;
    w.kind = WitnessKind::CarlitzLinkage;
    w.moduli = {mcd.ell};
    w.descriptor = d;
    ModuleF C = carlitz_module(RatField(kq), RatFunc::T(kq));
    try {
      SplitReport sr =
          verify_subfield_by_splitting(d, C, d.hayes.conductor, sample_max_deg);
      w.validation.split_primes_checked = sr.total_split;
      w.validation.counterexamples = static_cast<unsigned>(sr.counterexamples.size());
    } catch (const Error& e) {
      if (e.code() != Err::InsufficientSplitPrimes) throw;
      w.validation.notes.push_back(std::string("split validation: ") + e.what());
    }
    sample_characters(w.validation, phi, {mcd}, sample_max_deg);
    w.proves_nonsurjective = true;
    return w;
  }

  w.kind = WitnessKind::Inconclusive;
  for (const auto& mcd : w.all_classes) {
    w.moduli.push_back(mcd.ell);
    if (mcd.descriptor.wild())
      w.validation.notes.push_back("wild descriptor at " + mcd.ell.str() + ": " +
                                   mcd.descriptor.class_str());
  }
  for (size_t i = 0; i < w.all_classes.size(); ++i)
    for (size_t j = i + 1; j < w.all_classes.size(); ++j) {
      PairProductData pp;
      pp.ell1 = w.all_classes[i].ell;
      pp.ell2 = w.all_classes[j].ell;
      if (kq.q() == 3) {
        KummerClass prod = kummer_mul(*w.all_classes[i].descriptor.kummer,
                                      *w.all_classes[j].descriptor.kummer);
        pp.product_class = prod.str();
        pp.trivial_product = prod.is_trivial();
      } else {
        ASClass sum = as_add(*w.all_classes[i].descriptor.artin_schreier,
                             *w.all_classes[j].descriptor.artin_schreier);
        pp.product_class = sum.rep().str();
        pp.trivial_product = sum.is_trivial();
      }
      w.pair_products.push_back(std::move(pp));
    }
  sample_characters(w.validation, phi, w.all_classes, sample_max_deg);
  w.proves_nonsurjective = false;
  return w;
}

}  // namespace drinfeld
