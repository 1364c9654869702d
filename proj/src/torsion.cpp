#include "drinfeld/torsion.hpp"

#include <algorithm>
#include <map>

#include "drinfeld/factor.hpp"
#include "drinfeld/linalg.hpp"

namespace drinfeld {

namespace {

UP<TabField> reduced_torsion_poly(const ModuleRes& M, const Poly& a) {
  check(a.deg_or(-1) >= 1, Err::Precondition, "torsion modulus must be nonconstant");
  const TabCtx& kp = *M.k.k;
  check(residue_of_poly(kp, a) != 0, Err::InseparableModulus,
        "torsion modulus shares a prime with the reduction place");
  return torsion_polynomial(M, a.c);
}

}  // namespace

unsigned torsion_splitting_degree(const ModuleRes& M, const Poly& a) {
  UP<TabField> tors = reduced_torsion_poly(M, a);
  TabField kf = M.k;
  uint64_t Q = kf.card();
  UP<TabField> s = up_rem(kf, up_x(kf), tors);
  UP<TabField> x = s;
  unsigned m = 0;
  do {
    s = up_pow_mod(kf, s, Q, tors);
    ++m;
    check(m <= 4096, Err::Internal, "splitting degree runaway");
  } while (!up_eq(kf, s, x));
  return m;
}

std::vector<Poly> monic_divisors(const Poly& a) {
  auto [unit, parts] = factor_poly(a);
  (void)unit;
  std::vector<Poly> divs{Poly::one(*a.k)};
  for (auto& [P, e] : parts) {
    std::vector<Poly> next;
    Poly pw = Poly::one(*a.k);
    for (unsigned i = 0; i <= e; ++i) {
      for (auto& d : divs) next.push_back(d * pw);
      pw = pw * P;
    }
    divs = std::move(next);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

TorsionPoints torsion_points(const ModuleRes& M, const Poly& a0) {
  Poly a = a0.monic();
  UP<TabField> tors = reduced_torsion_poly(M, a);
  const TabCtx& kp = *M.k.k;
  TabField kf = M.k;
  unsigned q = kf.base_q();

  // Prop. 2.1 size guard: phi[a] has q^(r deg a) points
  uint64_t expected = 1;
  for (unsigned i = 0; i < M.rank() * static_cast<unsigned>(a.deg_or(0)); ++i) {
    expected *= q;
    check(expected <= 81, Err::SizeLimit,
          "torsion module exceeds the 81-point enumeration limit");
  }

  unsigned m = torsion_splitting_degree(M, a);

  // deterministic ambient: first monic irreducible of degree m over k_P
  UP<TabField> modulus;
  for (uint64_t v = 0;; ++v) {
    check(v < (1u << 20), Err::Internal, "no irreducible ambient modulus found");
    UP<TabField> cand(m + 1, 0);
    uint64_t t = v;
    for (unsigned i = 0; i < m; ++i) {
      cand[i] = static_cast<uint16_t>(t % kp.card());
      t /= kp.card();
    }
    if (t != 0) continue;
    cand[m] = 1;
    if (up_is_irreducible(kf, cand)) {
      modulus = cand;
      break;
    }
  }
  ResExt L(kf, modulus);

  TorsionPoints out(L);
  out.a = a;
  out.split_deg = m;

  // kernel of the F_q-linear map phi_a on L
  SkewPoly<TabField> phia = phi_of(M, a.c);
  auto embed = [&](uint16_t c) { return L.embed(c); };
  unsigned N = L.fq_dim();
  FqField kq(kp.base());
  Mat<FqField> mat(kq, N, N);
  std::vector<uint8_t> buf(N);
  for (unsigned j = 0; j < N; ++j) {
    std::fill(buf.begin(), buf.end(), 0);
    buf[j] = 1;
    ResExt::Elem img = apply_skew(L, phia, embed, L.unflatten(buf.data()));
    L.flatten(img, buf.data());
    for (unsigned r = 0; r < N; ++r) mat.at(r, j) = buf[r];
  }
  auto kerb = mat_kernel(kq, mat);
  uint64_t count = 1;
  for (size_t i = 0; i < kerb.size(); ++i) count *= q;
  check(count == expected, Err::Internal,
        "torsion point count disagrees with q^(r deg a)");

  // all F_q-combinations of the kernel basis, lex order in the coefficients
  std::vector<uint8_t> coef(kerb.size(), 0);
  for (uint64_t idx = 0; idx < count; ++idx) {
    uint64_t t = idx;
    for (size_t i = 0; i < coef.size(); ++i) {
      coef[i] = static_cast<uint8_t>(t % q);
      t /= q;
    }
    std::fill(buf.begin(), buf.end(), 0);
    for (size_t i = 0; i < coef.size(); ++i) {
      if (coef[i] == 0) continue;
      for (unsigned r = 0; r < N; ++r)
        buf[r] = kp.base().add(buf[r], kp.base().mul(coef[i], kerb[i][r]));
    }
    out.points.push_back(L.unflatten(buf.data()));
  }

  // verify each enumerated point against the torsion polynomial
  for (auto& pt : out.points)
    check(L.is_zero(up_eval_map(L, kf, tors, embed, pt)), Err::Internal,
          "kernel point fails the torsion polynomial");

  // annihilators: minimal monic divisor of a killing the point
  auto divs = monic_divisors(a);
  std::vector<SkewPoly<TabField>> phidiv;
  for (auto& d : divs) phidiv.push_back(phi_of(M, d.c));
  for (auto& pt : out.points) {
    bool found = false;
    for (size_t i = 0; i < divs.size(); ++i) {
      if (L.is_zero(apply_skew(L, phidiv[i], embed, pt))) {
        out.annihilators.push_back(divs[i]);
        found = true;
        break;
      }
    }
    check(found, Err::Internal, "point without annihilator");
  }

  // A/a-basis for rank <= 2
  auto key_of = [&](const ResExt::Elem& x) {
    std::vector<uint8_t> b(N);
    L.flatten(x, b.data());
    return std::string(b.begin(), b.end());
  };
  int e1 = -1;
  for (size_t i = 0; i < out.points.size(); ++i)
    if (out.annihilators[i] == a) {
      e1 = static_cast<int>(i);
      break;
    }
  if (M.rank() == 1) {
    check(e1 >= 0, Err::Internal, "rank-1 torsion has no generator");
    out.basis = {out.points[e1]};
    std::map<std::string, Poly> span;
    uint64_t ra = 1;
    for (int i = 0; i < a.deg_or(0); ++i) ra *= q;
    for (uint64_t idx = 0; idx < ra; ++idx) {
      std::vector<uint8_t> cd;
      uint64_t t = idx;
      for (int i = 0; i < a.deg_or(0); ++i) {
        cd.push_back(static_cast<uint8_t>(t % q));
        t /= q;
      }
      up_norm(FqField(kp.base()), cd);
      Poly c(kp.base(), cd);
      auto val = apply_skew(L, phi_of(M, cd), embed, out.points[e1]);
      span.insert({key_of(val), c});
    }
    for (auto& pt : out.points) {
      auto it = span.find(key_of(pt));
      check(it != span.end(), Err::Internal, "rank-1 torsion is not cyclic");
      out.coords.push_back({it->second, Poly::zero(kp.base())});
    }
    return out;
  }

  check(M.rank() == 2, Err::RankMismatch, "torsion basis only for rank 1 and 2");
  check(e1 >= 0, Err::Internal, "no point of full annihilator");
  // span of e1 under A/a
  std::map<std::string, Poly> span;
  uint64_t ra = 1;
  for (int i = 0; i < a.deg_or(0); ++i) ra *= q;
  std::vector<std::pair<Poly, ResExt::Elem>> mults;
  for (uint64_t idx = 0; idx < ra; ++idx) {
    std::vector<uint8_t> cd;
    uint64_t t = idx;
    for (int i = 0; i < a.deg_or(0); ++i) {
      cd.push_back(static_cast<uint8_t>(t % q));
      t /= q;
    }
    up_norm(FqField(kp.base()), cd);
    Poly c(kp.base(), cd);
    auto val = apply_skew(L, phi_of(M, cd), embed, out.points[e1]);
    span.insert({key_of(val), c});
    mults.push_back({c, val});
  }
  int e2 = -1;
  for (size_t i = 0; i < out.points.size(); ++i) {
    if (out.annihilators[i] == a && span.find(key_of(out.points[i])) == span.end()) {
      e2 = static_cast<int>(i);
      break;
    }
  }
  check(e2 >= 0, Err::Internal, "torsion module is not free of rank 2");
  out.basis = {out.points[e1], out.points[e2]};

  // full coordinate table
  std::vector<std::pair<Poly, ResExt::Elem>> mults2;
  for (auto& [c, ve1] : mults) {
    (void)ve1;
    mults2.push_back({c, apply_skew(L, phi_of(M, c.c), embed, out.points[e2])});
  }
  std::map<std::string, std::pair<Poly, Poly>> table;
  for (auto& [c, ve1] : mults)
    for (auto& [d, ve2] : mults2)
      table.insert({key_of(L.add(ve1, ve2)), {c, d}});
  check(table.size() == out.points.size(), Err::Internal,
        "coordinate table is not a bijection");
  for (auto& pt : out.points) {
    auto it = table.find(key_of(pt));
    check(it != table.end(), Err::Internal, "point missing from coordinate table");
    out.coords.push_back(it->second);
  }
  return out;
}

int torsion_point_index(const TorsionPoints& tp, const ResExt::Elem& x) {
  unsigned N = tp.L.fq_dim();
  std::vector<uint8_t> b(N), c(N);
  tp.L.flatten(x, b.data());
  for (size_t i = 0; i < tp.points.size(); ++i) {
    tp.L.flatten(tp.points[i], c.data());
    if (b == c) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace drinfeld
