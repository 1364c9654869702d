#include "drinfeld/frobenius.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>

#include "drinfeld/ext.hpp"
#include "drinfeld/factor.hpp"
#include "drinfeld/linalg.hpp"

namespace drinfeld {

namespace {

Poly modulus_poly(const TabField& kp) { return Poly(kp.k->base(), kp.k->modulus()); }

// Write the flattened coefficients of f into column `col`: the row block at
// tau-slot i holds the F_q coordinates of the coefficient of tau^i.
void fill_column(const TabField& kp, Mat<FqField>& A, unsigned col,
                 const SkewPoly<TabField>& f, unsigned slots) {
  unsigned dim = kp.fq_dim();
  std::vector<uint8_t> digs(dim);
  for (unsigned i = 0; i < slots; ++i) {
    TabField::Elem c = i < f.c.size() ? f.c[i] : kp.zero();
    kp.flatten(c, digs.data());
    for (unsigned j = 0; j < dim; ++j) A.at(i * dim + j, col) = digs[j];
  }
}

}  // namespace

FrobCharPoly frob_charpoly(const ModuleRes& M) {
  check(M.rank() == 2, Err::RankMismatch, "characteristic polynomial needs rank 2");
  const TabField& kp = M.k;
  const FqCtx& kq = kp.k->base();
  FqField F(kq);
  unsigned d = kp.fq_dim();
  unsigned m = d / 2;
  Poly P = modulus_poly(kp);

  // tau^{2d} = sum_j alpha_j phi_{T^j} tau^d - mu phi_P, solved for
  // (alpha_0..alpha_m, mu) coefficientwise over F_q.
  unsigned slots = 2 * d + 1;
  Mat<FqField> A(F, slots * d, m + 2);
  SkewPoly<TabField> taud = sk_tau(kp, d);
  SkewPoly<TabField> pw = sk_const(kp, kp.one());
  SkewPoly<TabField> phiT = M.phi_T();
  for (unsigned j = 0; j <= m; ++j) {
    fill_column(kp, A, j, sk_mul(kp, pw, taud), slots);
    if (j < m) pw = sk_mul(kp, pw, phiT);
  }
  fill_column(kp, A, m + 1, sk_neg(kp, phi_of(M, P.c)), slots);

  std::vector<uint8_t> b(static_cast<size_t>(slots) * d, 0);
  {
    std::vector<uint8_t> digs(d);
    kp.flatten(kp.one(), digs.data());
    for (unsigned j = 0; j < d; ++j) b[static_cast<size_t>(2 * d) * d + j] = digs[j];
  }

  SolveInfo info;
  auto sol = mat_solve(F, A, b, &info);
  check(info.has_solution, Err::NoSolution,
        "Frobenius satisfies no quadratic of the expected shape");
  check(info.kernel_dim == 0, Err::AmbiguousSolution,
        "Frobenius quadratic is underdetermined");

  Poly a(kq, std::vector<uint8_t>(sol->begin(), sol->begin() + m + 1));
  uint8_t mu = (*sol)[m + 1];
  check(mu != 0, Err::Internal, "Frobenius norm lost its leading unit");

  SkewPoly<TabField> lhs = sk_tau(kp, 2 * d);
  lhs = sk_sub(kp, lhs, sk_mul(kp, phi_of(M, a.c), taud));
  Poly muP = Poly::constant(kq, mu) * P;
  lhs = sk_add(kp, lhs, phi_of(M, muP.c));
  check(sk_is_zero(lhs), Err::Internal, "Frobenius quadratic failed exact re-verification");

  return {P, a, mu};
}

std::pair<Poly, uint8_t> frob_scalar_rank1(const ModuleRes& M) {
  check(M.rank() == 1, Err::RankMismatch, "scalar Frobenius needs rank 1");
  const TabField& kp = M.k;
  const FqCtx& kq = kp.k->base();
  FqField F(kq);
  unsigned d = kp.fq_dim();
  Poly P = modulus_poly(kp);

  // tau^d = psi_c with deg c <= d, coefficientwise.
  unsigned slots = d + 1;
  Mat<FqField> A(F, slots * d, d + 1);
  SkewPoly<TabField> pw = sk_const(kp, kp.one());
  SkewPoly<TabField> phiT = M.phi_T();
  for (unsigned j = 0; j <= d; ++j) {
    fill_column(kp, A, j, pw, slots);
    if (j < d) pw = sk_mul(kp, pw, phiT);
  }
  std::vector<uint8_t> b(static_cast<size_t>(slots) * d, 0);
  {
    std::vector<uint8_t> digs(d);
    kp.flatten(kp.one(), digs.data());
    for (unsigned j = 0; j < d; ++j) b[static_cast<size_t>(d) * d + j] = digs[j];
  }

  SolveInfo info;
  auto sol = mat_solve(F, A, b, &info);
  check(info.has_solution, Err::NoSolution, "rank-1 Frobenius is not in the image of A");
  check(info.kernel_dim == 0, Err::AmbiguousSolution, "rank-1 Frobenius value is ambiguous");

  Poly c(kq, *sol);
  check(sk_eq(kp, phi_of(M, c.c), sk_tau(kp, d)), Err::Internal,
        "rank-1 Frobenius identity failed exact re-verification");

  Poly quo = c / P, rem = c % P;
  check(rem.is_zero(), Err::Internal, "rank-1 Frobenius value is not a multiple of P");
  check(quo.deg_or(-1) == 0, Err::Internal, "rank-1 Frobenius quotient is not a unit");
  return {c, quo.c[0]};
}

std::vector<unsigned> division_pattern(const ModuleRes& M, const Poly& ell) {
  check(ell.is_monic() && ell.deg_or(-1) >= 1, Err::Precondition,
        "pattern modulus must be monic nonconstant");
  const TabField& kp = M.k;
  UP<TabField> Phi = torsion_polynomial(M, ell.c);
  check(!kp.is_zero(up_coeff(kp, Phi, 1)), Err::CharacteristicClash,
        "torsion modulus vanishes at the reduction prime");
  // Phi = x * (Phi/x) with Phi' = Phi[1] != 0, so Phi/x is squarefree.
  UP<TabField> phix(Phi.begin() + 1, Phi.end());
  auto [unit, factors] = up_factor(kp, phix);
  (void)unit;
  std::vector<unsigned> out;
  out.reserve(factors.size());
  for (const auto& f : factors) {
    check(f.mult == 1, Err::Internal, "separable torsion polynomial has a repeated factor");
    out.push_back(static_cast<unsigned>(up_deg(f.f)));
  }
  return out;
}

Mat2 frob_matrix_mod_l(const ModuleRes& M, const Poly& ell, std::string* basis_note) {
  check(M.rank() == 2, Err::RankMismatch, "torsion matrix needs rank 2");
  const TabField& kp = M.k;
  check(ell.k == &kp.k->base(), Err::ConfigMismatch,
        "modulus belongs to a different coefficient field");
  check(ell.is_monic() && ell.deg_or(-1) == 1, Err::Precondition,
        "matrix construction needs a monic degree-one modulus");
  unsigned q = kp.base_q();
  uint64_t card = kp.card();

  UP<TabField> Phi = torsion_polynomial(M, ell.c);
  check(!kp.is_zero(up_coeff(kp, Phi, 1)), Err::CharacteristicClash,
        "torsion modulus vanishes at the reduction prime");
  UP<TabField> phix = up_monic(kp, UP<TabField>(Phi.begin() + 1, Phi.end()));

  // Scalar case: x^{|k_P|} = c x mod the (squarefree) torsion cofactor.
  UP<TabField> R = up_pow_mod(kp, up_x(kp), card, phix);
  if (up_deg(R) == 1 && kp.is_zero(up_coeff(kp, R, 0)) && R[1] < q) {
    if (basis_note) *basis_note = "scalar action on all torsion points";
    uint16_t c = R[1];
    return m2_make<FqRing>(c, 0, 0, c);
  }

  // Otherwise some torsion point e has (e, Frob e) linearly independent over
  // A/ell = F_q, and in the basis (e, Frob e) the matrix is a companion
  // block.  Roots of degree-one factors are rational, hence fixed; a
  // generator of any bigger factor field is tested directly.
  auto [unit, factors] = up_factor(kp, phix);
  (void)unit;
  for (const auto& fac : factors) {
    unsigned fd = static_cast<unsigned>(up_deg(fac.f));
    if (fd == 1) continue;
    Ext<TabField> L(kp, fac.f);
    auto e1 = L.gen();
    auto e2 = L.pow(e1, card);
    bool eigen = false;
    for (unsigned c = 1; c < q && !eigen; ++c)
      eigen = L.eq(e2, L.mul(L.scalar(static_cast<uint8_t>(c)), e1));
    if (eigen) continue;
    auto e3 = L.pow(e2, card);
    for (unsigned alpha = 0; alpha < q; ++alpha)
      for (unsigned beta = 0; beta < q; ++beta) {
        auto cand = L.add(L.mul(L.scalar(static_cast<uint8_t>(alpha)), e1),
                          L.mul(L.scalar(static_cast<uint8_t>(beta)), e2));
        if (!L.eq(e3, cand)) continue;
        check(alpha != 0, Err::Internal, "Frobenius matrix came out singular");
        if (basis_note)
          *basis_note = "companion basis (e, Frob e), e a root of a degree-" +
                        std::to_string(fd) + " torsion factor";
        return m2_make<FqRing>(0, static_cast<uint16_t>(alpha), 1,
                               static_cast<uint16_t>(beta));
      }
    raise(Err::Internal, "Frobenius left the span of the torsion plane");
  }
  raise(Err::Internal, "non-scalar Frobenius with every torsion point an eigenvector");
}

int sign_character(const ModuleF& phi, const Poly& ell, const Poly& P) {
  check(phi.rank() == 2, Err::RankMismatch, "sign character needs rank 2");
  check(phi.k.base_q() == 2, Err::Precondition, "sign character is defined over F_2(T)");
  check(ell.is_monic() && ell.deg_or(-1) == 1, Err::Precondition,
        "sign character needs a monic degree-one modulus");
  check(P.is_monic() && is_irreducible(P), Err::Precondition,
        "evaluation point must be a monic prime");
  check(!(P == ell), Err::RamifiedPrime, "sign character is ramified at its own modulus");

  ModuleRes Mres = reduce_mod(phi, P);
  std::vector<unsigned> pat = division_pattern(Mres, ell);
  if (pat == std::vector<unsigned>{3} || pat == std::vector<unsigned>{1, 1, 1}) return 1;
  if (pat == std::vector<unsigned>{1, 2}) return -1;
  raise(Err::Internal, "impossible cycle type on three torsion points");
}

namespace {

struct GroupData {
  MatGroup<FqRing> G;
  std::vector<SubgroupClass> classes;
  std::map<std::vector<unsigned>, unsigned> pattern_ids;
  std::vector<uint32_t> elem_triple;
  std::set<uint32_t> full_triples;
  std::vector<std::set<uint32_t>> class_triples;

  explicit GroupData(MatGroup<FqRing> g) : G(std::move(g)) {}
};

uint32_t pack_triple(uint8_t tr, uint8_t det, unsigned pattern_id) {
  return uint32_t(tr) | (uint32_t(det) << 4) | (uint32_t(pattern_id) << 8);
}

const GroupData& group_data(unsigned q) {
  static std::map<unsigned, std::unique_ptr<GroupData>> cache;
  auto it = cache.find(q);
  if (it != cache.end()) return *it->second;

  auto gd = std::make_unique<GroupData>(gl2_small(q));
  gd->classes = subgroups_up_to_conjugacy(gd->G);
  gd->elem_triple.resize(gd->G.order());
  for (uint32_t i = 0; i < gd->G.order(); ++i) {
    Mat2 m = gd->G.mat(i);
    auto pat = cycle_pattern(gd->G.ring, m);
    auto [pit, fresh] = gd->pattern_ids.emplace(pat, unsigned(gd->pattern_ids.size()));
    (void)fresh;
    uint32_t triple = pack_triple(uint8_t(m2_trace(gd->G.ring, m)),
                                  uint8_t(m2_det(gd->G.ring, m)), pit->second);
    gd->elem_triple[i] = triple;
    gd->full_triples.insert(triple);
  }
  gd->class_triples.reserve(gd->classes.size());
  for (const auto& cls : gd->classes) {
    std::set<uint32_t> s;
    for (uint32_t h : cls.elems) s.insert(gd->elem_triple[h]);
    gd->class_triples.push_back(std::move(s));
  }
  return *(cache[q] = std::move(gd));
}

}  // namespace

ImageCertificate certify_mod_l_surjective(const ModuleF& phi, const Poly& ell,
                                          unsigned max_deg) {
  check(phi.rank() == 2, Err::RankMismatch, "image certificate needs rank 2");
  check(ell.k != nullptr, Err::Precondition, "modulus is unset");
  const FqCtx& kq = *ell.k;
  check(ell.is_monic() && ell.deg_or(-1) == 1, Err::Precondition,
        "image certificates are implemented for monic degree-one moduli");

  const GroupData& gd = group_data(kq.q());
  ImageCertificate cert;
  cert.ell = ell;
  cert.max_deg = max_deg;

  uint8_t lambda = kq.neg(ell.c[0]);
  std::set<uint32_t> realized;
  std::set<uint8_t> realized_dets;
  for (const Poly& P : enumerate_primes(kq, 1, max_deg)) {
    if (P == ell) {
      cert.skipped.push_back({P, "equal to the modulus"});
      continue;
    }
    std::optional<ModuleRes> Mres;
    try {
      Mres.emplace(reduce_mod(phi, P));
    } catch (const Error& e) {
      if (e.code() != Err::BadReduction) throw;
      cert.skipped.push_back({P, "bad reduction"});
      continue;
    }
    FrobCharPoly fc = frob_charpoly(*Mres);
    uint8_t am = fc.a.eval(lambda);
    uint8_t dm = kq.mul(fc.mu, P.eval(lambda));
    check(dm != 0, Err::Internal, "determinant datum vanished at a good prime");
    std::vector<unsigned> pat = division_pattern(*Mres, ell);

    auto pit = gd.pattern_ids.find(pat);
    check(pit != gd.pattern_ids.end(), Err::Internal,
          "sampled cycle type is not realized in the matrix group");
    uint32_t triple = pack_triple(am, dm, pit->second);
    check(gd.full_triples.count(triple) != 0, Err::Internal,
          "sampled Frobenius datum is not realized in the matrix group");
    realized.insert(triple);
    realized_dets.insert(dm);
    cert.sampled.push_back({P, fc.a, fc.mu, am, dm, std::move(pat)});
  }

  for (size_t ci = 0; ci < gd.classes.size(); ++ci) {
    const SubgroupClass& cls = gd.classes[ci];
    if (cls.order == gd.G.order()) continue;
    const std::set<uint32_t>& have = gd.class_triples[ci];
    bool compatible = true;
    for (uint32_t t : realized)
      if (have.count(t) == 0) {
        compatible = false;
        break;
      }
    if (!compatible) continue;
    CandidateSubgroup cand;
    cand.order = cls.order;
    cand.class_size = cls.class_size;
    for (uint32_t g : mg_generators(gd.G, cls.elems))
      cand.generators.push_back(m2_str(gd.G.ring, gd.G.mat(g)));
    cert.candidates.push_back(std::move(cand));
  }

  std::set<uint8_t> det_span{1};
  for (bool grew = true; grew;) {
    grew = false;
    for (uint8_t d : realized_dets)
      for (uint8_t x : std::set<uint8_t>(det_span))
        grew |= det_span.insert(kq.mul(d, x)).second;
  }
  cert.det_deficient = det_span.size() < kq.q() - 1;

  cert.surjective = !cert.sampled.empty() && cert.candidates.empty();
  cert.verdict = cert.surjective ? "Surjective" : "Undecided";
  return cert;
}

}  // namespace drinfeld
