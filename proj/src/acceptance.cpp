#include "drinfeld/acceptance.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "drinfeld/factor.hpp"
#include "drinfeld/frobenius.hpp"
#include "drinfeld/group_checks.hpp"
#include "drinfeld/json_io.hpp"
#include "drinfeld/parse.hpp"
#include "drinfeld/quadext.hpp"
#include "drinfeld/tower.hpp"

namespace drinfeld {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt1(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << x;
  return s.str();
}

Poly deg1(const FqCtx& k, uint8_t c) { return Poly(k, {c, 1}); }

Poly rnd_poly(const FqCtx& k, std::mt19937_64& rng, unsigned max_deg, bool nonzero) {
  for (;;) {
    unsigned d = static_cast<unsigned>(rng() % (max_deg + 1));
    std::vector<uint8_t> c(d + 1);
    for (auto& x : c) x = static_cast<uint8_t>(rng() % k.q());
    Poly p(k, std::move(c));
    if (!nonzero || !p.is_zero()) return p;
  }
}

struct Harness {
  std::ostream& out;
  std::vector<CriterionResult> results;

  void run(int id, const std::string& name,
           const std::function<std::pair<bool, std::string>()>& body) {
    Clock::time_point t0 = Clock::now();
    CriterionResult r;
    r.id = id;
    r.name = name;
    try {
      auto [p, d] = body();
      r.pass = p;
      r.detail = d;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = since(t0);
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " ("
        << fmt1(r.seconds) << "s)";
    if (!r.detail.empty()) out << " -- " << r.detail;
    out << std::endl;
    results.push_back(std::move(r));
  }
};

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(std::ostream& out,
                                                  const CliRunner& cli) {
  Harness h{out, {}};
  const std::string flagship = "T+t+2*T^2*t^2";

  h.run(1, "flagship splitting degree 48 at the three degree-one moduli", [&] {
    std::string detail;
    for (int i = 0; i < 3; ++i) {
      std::string mod = (i == 0) ? "T" : "T+" + std::to_string(i);
      Clock::time_point t0 = Clock::now();
      std::string raw =
          cli({"galois-order", "--q", "3", "--phi", flagship, "--modulus", mod});
      double secs = since(t0);
      ojson j = ojson::parse(raw);
      uint64_t deg = j.at("payload").at("totalDegree").get<uint64_t>();
      detail += mod + "->" + std::to_string(deg) + " in " + fmt1(secs) + "s; ";
      if (deg != 48) return std::pair{false, detail + "expected 48"};
      if (secs >= 300.0) return std::pair{false, detail + "over the 300s budget"};
    }
    return std::pair{true, detail};
  });

  h.run(2, "GL2(F2) is S3 with a unique index-2 normal subgroup", [&] {
    Gl2F2Report r = verify_gl2_f2();
    bool ok = r.order == 6 && r.action_faithful && r.image_is_s3 &&
              r.index2_subgroups == 1 && r.index2_normal;
    std::string d = "order=" + std::to_string(r.order) +
                    ", subgroups=" + std::to_string(r.subgroup_count) +
                    ", index-2 normal=" + std::to_string(r.index2_subgroups);
    return std::pair{ok, d};
  });

  h.run(3, "verify_lemma_5_5: invariant subspaces of M2(F3)", [&] {
    Lemma55Report r = verify_lemma_5_5();
    bool ok = r.subspace_count == 212 && r.invariant_exactly_expected &&
              !r.w1_invariant && r.w1_closure_is_sl2;
    std::string d = std::to_string(r.subspace_count) + " subspaces, invariant = {";
    for (size_t i = 0; i < r.invariant.size(); ++i)
      d += (i ? ", " : "") + r.invariant[i];
    d += "}";
    return std::pair{ok, d};
  });

  h.run(4, "verify_prop_5_6: trace step and 1000 level-2 trials", [&] {
    TraceStepReport tr = verify_prop_5_6_trace_step();
    Level2Report l2 = verify_prop_5_6_level2(1000, 20260815ULL);
    bool ok = tr.only_full_space && tr.sl2_excluded && tr.scalars_excluded &&
              l2.trials == 1000 && l2.counterexamples.empty() &&
              l2.group_order == 3888 && l2.group_order_scan == 3888 &&
              l2.full_group_ok && l2.sl2_preimage_excluded;
    std::string d = "trace-step qualifying=" + std::to_string(tr.qualifying) +
                    "; level-2 order " + std::to_string(l2.group_order) + "/" +
                    std::to_string(l2.group_order_scan) + ", " +
                    std::to_string(l2.counterexamples.size()) +
                    " counterexamples in " + std::to_string(l2.trials) + " trials";
    return std::pair{ok, d};
  });

  h.run(5, "verify_lemma_6_1: SL2(F4) facts, dual-number lift, displays", [&] {
    Lemma61Report r4 = verify_lemma_6_1(4);
    Lemma61Report r8 = verify_lemma_6_1(8);
    Lemma61Report r16 = verify_lemma_6_1(16);
    bool ok4 = r4.sl2_order == 60 && r4.sl2_perfect && r4.sl2_simple &&
               r4.level2_order == 3840 && r4.level2_perfect;
    auto disp = [](const Lemma61Report& r) {
      return r.displays_nonscalar && r.displays_match_formula;
    };
    bool ok = ok4 && disp(r4) && disp(r8) && disp(r16);
    std::string d = "SL2(F4): order " + std::to_string(r4.sl2_order) +
                    (r4.sl2_simple ? ", simple" : ", NOT simple") +
                    "; lift order " + std::to_string(r4.level2_order) +
                    (r4.level2_perfect ? ", perfect" : ", NOT perfect") +
                    "; displays non-scalar over F4/F8/F16: " +
                    (disp(r4) && disp(r8) && disp(r16) ? "yes" : "no");
    return std::pair{ok, d};
  });

  h.run(6, "Frobenius charpoly identity, hand value, trace agreement", [&] {
    const FqCtx& k3 = FqCtx::get(3);
    ModuleF phi = parse_module(k3, flagship);
    std::vector<Poly> ells = {Poly::T(k3), deg1(k3, 1), deg1(k3, 2)};
    FqRing R(k3);
    unsigned solved = 0, traces = 0;
    bool hand_ok = false;
    for (const Poly& P : enumerate_primes(k3, 1, 4)) {
      std::optional<ModuleRes> M;
      try {
        M.emplace(reduce_mod(phi, P));
      } catch (const Error& e) {
        if (e.code() == Err::BadReduction) continue;
        throw;
      }
      FrobCharPoly fc = frob_charpoly(*M);
      ++solved;
      if (P == deg1(k3, 1)) hand_ok = fc.a == Poly::one(k3) && fc.mu == 1;
      for (const Poly& ell : ells) {
        if (ell == P) continue;
        Mat2 m = frob_matrix_mod_l(*M, ell);
        uint8_t lam = k3.neg(ell.c[0]);
        if (uint8_t(m2_trace(R, m)) != fc.a.eval(lam))
          return std::pair{false, "trace mismatch at P=" + P.str() +
                                      ", ell=" + ell.str()};
        ++traces;
      }
    }
    bool ok = solved == 31 && hand_ok;
    std::string d = std::to_string(solved) + " primes solved exactly, (a,mu)=(1,1) at T+1: " +
                    (hand_ok ? "yes" : "no") + ", " + std::to_string(traces) +
                    " trace agreements";
    return std::pair{ok, d};
  });

  h.run(7, "mod-l surjectivity certificates over F3 and F4", [&] {
    std::string detail;
    auto one = [&](const FqCtx& k, const std::string& ms,
                   const Poly& ell) -> std::optional<std::string> {
      ModuleF phi = parse_module(k, ms);
      Clock::time_point t0 = Clock::now();
      ImageCertificate c = certify_mod_l_surjective(phi, ell, 6);
      double secs = since(t0);
      detail += "q" + std::to_string(k.q()) + " " + ell.str() + "->" + c.verdict +
                " in " + fmt1(secs) + "s; ";
      if (!c.surjective || c.verdict != "Surjective")
        return "verdict " + c.verdict + " at " + ell.str();
      if (secs >= 120.0) return "over the 120s budget at " + ell.str();
      return std::nullopt;
    };
    const FqCtx& k3 = FqCtx::get(3);
    for (uint8_t c = 0; c < 3; ++c)
      if (auto bad = one(k3, flagship, deg1(k3, c))) return std::pair{false, detail + *bad};
    const FqCtx& k4 = FqCtx::get(4);
    for (uint8_t c = 0; c < 4; ++c)
      if (auto bad = one(k4, "T+t+T^3*t^2", deg1(k4, c)))
        return std::pair{false, detail + *bad};
    return std::pair{true, detail};
  });

  h.run(8, "q=2 constant entanglement witness and sign characters", [&] {
    const FqCtx& k2 = FqCtx::get(2);
    Poly ellT = Poly::T(k2), ellT1 = deg1(k2, 1);
    unsigned checked = 0;
    for (const char* gs : {"T", "T+1", "T^2+T+1"}) {
      ModuleF phi =
          make_rank2(k2, RatFunc::zero(k2), RatFunc(parse_poly(k2, gs)));
      EntanglementWitness w = nonsurjectivity_witness(phi);
      if (w.kind != WitnessKind::TwoConstant)
        return std::pair{false, std::string("g2=") + gs + ": kind " +
                                    witness_kind_name(w.kind)};
      if (w.moduli.size() != 2 || !(w.moduli[0] == ellT) || !(w.moduli[1] == ellT1))
        return std::pair{false,
                         std::string("g2=") + gs + ": moduli are not ((T),(T+1))"};
      for (const Poly& ell : {ellT, ellT1}) {
        for (const Poly& P : enumerate_primes(k2, 1, 8)) {
          int s;
          try {
            s = sign_character(phi, ell, P);
          } catch (const Error& e) {
            if (e.code() == Err::RamifiedPrime || e.code() == Err::BadReduction)
              continue;
            throw;
          }
          int expect = (*P.degree() % 2 == 0) ? 1 : -1;
          if (s != expect)
            return std::pair{false, "sign mismatch at P=" + P.str() +
                                        ", ell=" + ell.str() + ", g2=" + gs};
          ++checked;
        }
      }
    }
    return std::pair{true,
                     std::to_string(checked) + " sign characters equal (-1)^deg P"};
  });

  h.run(9, "q=2 family: descriptors tame, constant only for g1=0", [&] {
    const FqCtx& k2 = FqCtx::get(2);
    std::mt19937_64 rng(0xC91E57EDULL);
    Poly mods[2] = {Poly::T(k2), deg1(k2, 1)};
    unsigned computed = 0, skipped = 0;
    std::vector<std::string> bad;
    for (int trial = 0; trial < 100; ++trial) {
      Poly g1 = rnd_poly(k2, rng, 3, true);
      Poly g2 = rnd_poly(k2, rng, 3, true);
      ModuleF phi = make_rank2(k2, RatFunc(g1), RatFunc(g2));
      for (const Poly& ell : mods) {
        QuadExtDescriptor d;
        try {
          d = quad_subext(phi, ell);
        } catch (const Error& e) {
          if (e.code() == Err::ImageTooSmall) {
            ++skipped;
            continue;
          }
          throw;
        }
        ++computed;
        std::string where = "g1=" + g1.str() + ", g2=" + g2.str() +
                            ", ell=" + ell.str();
        if (d.hayes.wild)
          bad.push_back(where + ": wildPart=true");
        else if (d.constant())
          bad.push_back(where + ": constant class with g1 != 0");
      }
    }
    std::string detail = std::to_string(computed) + " descriptors, " +
                         std::to_string(skipped) + " skipped (small image), " +
                         std::to_string(bad.size()) + " violations";
    for (size_t i = 0; i < bad.size() && i < 3; ++i) detail += "; " + bad[i];
    if (bad.size() > 3) detail += "; +" + std::to_string(bad.size() - 3) + " more";
    return std::pair{bad.empty(), detail};
  });

  h.run(10, "q=3 claim_check_5_1 and determinant-deficient witness", [&] {
    const FqCtx& k3 = FqCtx::get(3);
    ModuleF phiA = make_rank2(k3, RatFunc::one(k3), RatFunc::one(k3));
    Claim51Report rep = claim_check_5_1(phiA);
    bool okA = rep.precondition_ok && rep.all_distinct && rep.rows.size() == 3;
    for (const Claim51Row& row : rep.rows) okA = okA && row.distinct;
    ModuleF phiB = make_rank2(k3, RatFunc::one(k3), RatFunc::T(k3));
    EntanglementWitness w = nonsurjectivity_witness(phiB);
    bool okB = w.kind == WitnessKind::DetDeficient && w.moduli.size() == 1 &&
               w.moduli[0] == Poly::T(k3) && w.proves_nonsurjective;
    std::string d = std::string("g2=1: all three moduli distinct from Carlitz: ") +
                    (okA ? "yes" : "no") + "; g2=T: " + witness_kind_name(w.kind) +
                    " at " + (w.moduli.empty() ? "-" : w.moduli[0].str());
    return std::pair{okA && okB, d};
  });

  h.run(11, "cross-oracle: determinants, torsion counts, twists", [&] {
    std::mt19937_64 rng(0x0DE7E12AULL);
    std::vector<Poly> primes2 = enumerate_primes(FqCtx::get(2), 1, 4);
    std::vector<Poly> primes3 = enumerate_primes(FqCtx::get(3), 1, 4);
    unsigned det_ok = 0;
    for (unsigned attempts = 0; det_ok < 50; ++attempts) {
      check(attempts < 10000, Err::Internal, "determinant sampling stalled");
      bool use3 = rng() & 1;
      const FqCtx& k = FqCtx::get(use3 ? 3 : 2);
      const std::vector<Poly>& primes = use3 ? primes3 : primes2;
      Poly g1 = rnd_poly(k, rng, 2, false);
      Poly g2 = rnd_poly(k, rng, 2, true);
      ModuleF phi = make_rank2(k, RatFunc(g1), RatFunc(g2));
      Poly P = primes[rng() % primes.size()];
      Poly ell = deg1(k, static_cast<uint8_t>(rng() % k.q()));
      if (ell == P) continue;
      std::optional<ModuleRes> M;
      try {
        M.emplace(reduce_mod(phi, P));
      } catch (const Error& e) {
        if (e.code() == Err::BadReduction) continue;
        throw;
      }
      Mat2 m = frob_matrix_mod_l(*M, ell);
      FqRing R(k);
      auto [c, mu] = frob_scalar_rank1(reduce_mod(det_module(phi), P));
      (void)mu;
      uint8_t lam = k.neg(ell.c[0]);
      if (uint8_t(m2_det(R, m)) != c.eval(lam))
        return std::pair{false, "det mismatch at P=" + P.str() + ", ell=" +
                                    ell.str() + " over q=" + std::to_string(k.q())};
      ++det_ok;
    }

    unsigned tcount = 0;
    for (unsigned attempts = 0; tcount < 50; ++attempts) {
      check(attempts < 10000, Err::Internal, "torsion sampling stalled");
      unsigned qs[3] = {2, 3, 4};
      const FqCtx& k = FqCtx::get(qs[rng() % 3]);
      RatField F(k);
      unsigned r = 1 + static_cast<unsigned>(rng() % 2);
      std::vector<RatFunc> g;
      for (unsigned i = 0; i + 1 < r; ++i) g.push_back(RatFunc(rnd_poly(k, rng, 2, false)));
      g.push_back(RatFunc(rnd_poly(k, rng, 2, true)));
      DrinfeldModule<RatField> M(F, RatFunc::T(k), g);
      unsigned da = 1 + static_cast<unsigned>(rng() % 2);
      std::vector<uint8_t> a(da + 1);
      for (auto& x : a) x = static_cast<uint8_t>(rng() % k.q());
      while (a.back() == 0) a.back() = static_cast<uint8_t>(rng() % k.q());
      UP<RatField> Phi = torsion_polynomial(M, a);
      uint64_t expect = 1;
      for (unsigned i = 0; i < r * da; ++i) expect *= k.q();
      if (up_deg(Phi) != static_cast<int>(expect))
        return std::pair{false, "torsion degree " + std::to_string(up_deg(Phi)) +
                                    " != q^(r deg a) = " + std::to_string(expect)};
      if (F.is_zero(Phi[1]))
        return std::pair{
            false, std::string("inseparable torsion polynomial in generic characteristic")};
      ++tcount;
    }

    unsigned tw = 0;
    for (unsigned attempts = 0; tw < 100; ++attempts) {
      check(attempts < 10000, Err::Internal, "twist sampling stalled");
      unsigned qs[3] = {2, 3, 4};
      const FqCtx& k = FqCtx::get(qs[rng() % 3]);
      ModuleF phi = make_rank2(k, RatFunc(rnd_poly(k, rng, 2, false)),
                               RatFunc(rnd_poly(k, rng, 2, true)));
      RatFunc c(rnd_poly(k, rng, 2, true), rnd_poly(k, rng, 2, true));
      ModuleF psi = twist_module(phi, c);
      SkewPoly<RatField> cc = sk_const(phi.k, c);
      if (!sk_eq(phi.k, sk_mul(phi.k, cc, phi.phi_T()),
                 sk_mul(phi.k, psi.phi_T(), cc)))
        return std::pair{false, std::string("twist identity failed for c=") + c.str()};
      ++tw;
    }
    return std::pair{true,
                     std::string("50 determinant agreements, 50 torsion counts, 100 twists")};
  });

  h.run(12, "factorization soundness and AS reduction invariance", [&] {
    std::mt19937_64 rng(0xFAC70123ULL);
    for (int i = 0; i < 500; ++i) {
      unsigned qs[4] = {2, 3, 4, 9};
      const FqCtx& k = FqCtx::get(qs[rng() % 4]);
      Poly f = rnd_poly(k, rng, 8, true);
      auto [unit, facs] = factor_poly(f);
      Poly re = Poly::constant(k, unit);
      for (const PolyFactor& fac : facs)
        for (unsigned m = 0; m < fac.mult; ++m) re = re * fac.f;
      if (!(re == f))
        return std::pair{false, "re-multiplication mismatch for " + f.str()};
    }
    const FqCtx& k2 = FqCtx::get(2);
    for (int i = 0; i < 500; ++i) {
      RatFunc f(rnd_poly(k2, rng, 4, false), rnd_poly(k2, rng, 3, true));
      RatFunc hv(rnd_poly(k2, rng, 2, false), rnd_poly(k2, rng, 2, true));
      ASClass c1 = as_reduce(f);
      if (!(as_reduce(c1.rep()) == c1))
        return std::pair{false, "as_reduce not idempotent on " + f.str()};
      if (!(as_reduce(f + hv * hv + hv) == c1))
        return std::pair{false, "as_reduce not invariant under h^2+h, f=" + f.str()};
    }
    return std::pair{true,
                     std::string("500 factor re-multiplications, 500 AS invariance cases")};
  });

  return h.results;
}

}  // namespace drinfeld
