#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "drinfeld/bivar.hpp"
#include "drinfeld/fq.hpp"
#include "drinfeld/module.hpp"
#include "drinfeld/tab.hpp"
#include "drinfeld/tower.hpp"

using namespace drinfeld;

namespace {

const TabCtx& line(unsigned q) { return TabCtx::canonical(FqCtx::get(q), 1); }

// build sum of c_ij T^j x^i from a row-major table
BiPoly bp(const TabCtx& k, std::vector<std::vector<uint16_t>> rows) {
  std::vector<UP<TabField>> cx;
  for (auto& r : rows) cx.push_back(r);
  return bp_make(k, std::move(cx));
}

BiPoly random_bp(const TabCtx& k, std::mt19937_64& rng, int dx, int dT) {
  std::vector<std::vector<uint16_t>> rows(dx + 1, std::vector<uint16_t>(dT + 1));
  for (auto& r : rows)
    for (auto& v : r) v = static_cast<uint16_t>(rng() % k.card());
  BiPoly f = bp(k, rows);
  return f;
}

}  // namespace

TEST_CASE("bivariate ring operations and gcd") {
  const TabCtx& k = line(3);
  // (x + T)(x^2 + T) and (x + T)(x + 1)
  BiPoly a = bp(k, {{0, 1}, {1}});          // x + T
  BiPoly b = bp(k, {{0, 1}, {0}, {1}});     // x^2 + T
  BiPoly c = bp(k, {{1}, {1}});             // x + 1
  BiPoly ab = bp_mul(a, b), ac = bp_mul(a, c);
  CHECK(ab.deg_x() == 3);
  CHECK(ab.deg_T() == 2);
  BiPoly g = bp_gcd_x(ab, ac);
  CHECK(bp_eq(g, a));
  auto q = bp_div_exact(ab, a);
  REQUIRE(q.has_value());
  CHECK(bp_eq(*q, b));
  CHECK(!bp_div_exact(ab, c).has_value());
  // content handling
  BiPoly scaled = bp_scale_T({0, 0, 1}, ab);  // T^2 * (x+T)(x^2+T)
  CHECK(up_deg(bp_content_x(scaled)) == 2);
  CHECK(bp_eq(bp_primitive_x(scaled), ab));
  // string form
  CHECK(a.str() == "x+T");
  CHECK(bp(k, {{2, 0, 1}, {0}, {2}}).str() == "2*x^2+T^2+2");
}

TEST_CASE("known bivariate factorizations over F_3(T)") {
  const TabCtx& k = line(3);
  BiPoly xmT = bp(k, {{0, 2}, {1}});  // x - T = x + 2T
  BiPoly xpT = bp(k, {{0, 1}, {1}});  // x + T
  BiPoly x2T = bp(k, {{0, 1}, {0}, {1}});  // x^2 + T

  SUBCASE("difference of squares") {
    auto r = bivar_factor(bp_mul(xmT, xpT));
    REQUIRE(r.factors.size() == 2);
    CHECK(r.unit == 1);
    CHECK(up_deg(r.content) == 0);
    CHECK(bp_eq(r.factors[0].f, xpT));
    CHECK(bp_eq(r.factors[1].f, xmT));
    CHECK(r.factors[0].mult == 1);
  }
  SUBCASE("x^2 + T is irreducible") {
    CHECK(bivar_is_irreducible(x2T));
    auto r = bivar_factor(x2T);
    REQUIRE(r.factors.size() == 1);
    CHECK(bp_eq(r.factors[0].f, x2T));
  }
  SUBCASE("multiplicities and a cube via the p-th power path") {
    BiPoly f = bp_mul(bp_mul(xmT, xmT), x2T);
    auto r = bivar_factor(f);
    REQUIRE(r.factors.size() == 2);
    CHECK(r.factors[0].mult == 2);
    CHECK(bp_eq(r.factors[0].f, xmT));
    CHECK(r.factors[1].mult == 1);
    CHECK(bp_eq(r.factors[1].f, x2T));
    BiPoly cube = bp_mul(bp_mul(x2T, x2T), x2T);
    auto rc = bivar_factor(cube);
    REQUIRE(rc.factors.size() == 1);
    CHECK(rc.factors[0].mult == 3);
    CHECK(bp_eq(rc.factors[0].f, x2T));
  }
  SUBCASE("content is factored separately") {
    BiPoly f = bp_scale_T({0, 2, 1}, xpT);  // (T^2 + 2T) * (x + T)
    auto r = bivar_factor(f);
    CHECK(r.unit == 1);
    CHECK(up_deg(r.content) == 2);
    REQUIRE(r.content_factors.size() == 2);
    REQUIRE(r.factors.size() == 1);
    CHECK(bp_eq(r.factors[0].f, xpT));
  }
  SUBCASE("inseparable inputs are rejected") {
    BiPoly f = bp(k, {{0, 2}, {0}, {0}, {1}});  // x^3 - T
    CHECK_THROWS_AS(bivar_factor(f), Error);
    CHECK_THROWS_AS(bivar_is_irreducible(f), Error);
  }
}

namespace {

// strip the root x = 0 and convert the integral RatFunc coefficients
BiPoly division_poly(const TabCtx& k, const ModuleF& M, const Poly& a) {
  auto tors = torsion_polynomial(M, a.c);
  std::vector<std::vector<uint16_t>> rows;
  for (size_t i = 1; i < tors.size(); ++i) {
    std::vector<uint16_t> row;
    if (!tors[i].is_zero()) {
      for (uint8_t v : tors[i].as_poly().c) row.push_back(v);
    }
    rows.push_back(row);
  }
  return bp(k, rows);
}

}  // namespace

TEST_CASE("Carlitz division polynomials are irreducible over F_3(T)") {
  const FqCtx& F3 = FqCtx::get(3);
  const TabCtx& k = line(3);
  RatField F(F3);
  auto C = carlitz_module(F, RatFunc::T(F3));
  for (auto a : {Poly(F3, {0, 1}), Poly(F3, {1, 0, 1})}) {  // T and T^2+1
    BiPoly f = division_poly(k, C, a);
    CHECK(f.deg_x() == (a.deg_or(0) == 2 ? 8 : 2));
    CHECK(bivar_is_irreducible(f));
  }
}

TEST_CASE("flagship division polynomial factors: degree 8, irreducible") {
  const FqCtx& F3 = FqCtx::get(3);
  const TabCtx& k = line(3);
  auto phi = make_rank2(F3, RatFunc::one(F3), -RatFunc(Poly(F3, {0, 0, 1})));
  for (uint8_t i : {0, 1, 2}) {
    BiPoly f = division_poly(k, phi, Poly(F3, {i, 1}));
    REQUIRE(f.deg_x() == 8);
    CHECK(bivar_is_irreducible(f));
  }
}

TEST_CASE("Galois descent when no specialization point exists") {
  const TabCtx& k = line(2);
  // x^2 + (T^2+T) x + T: both specializations are squarefree-defective, and
  // the polynomial has no root in F_2(T) (odd pole order at T = 0)
  BiPoly f = bp(k, {{0, 1}, {0, 1, 1}, {1}});
  CHECK(bivar_is_irreducible(f));
  // same quadratic times (x + 1): descent must split the product
  BiPoly g = bp_mul(f, bp(k, {{1}, {1}}));
  auto r = bivar_factor(g);
  REQUIRE(r.factors.size() == 2);
  CHECK(r.factors[0].f.deg_x() == 1);
  CHECK(r.factors[1].f.deg_x() == 2);
  CHECK(bp_eq(r.factors[1].f, f));
}

TEST_CASE("random products remultiply across base fields") {
  std::mt19937_64 rng(7);
  for (unsigned q : {2u, 3u, 4u, 9u}) {
    const TabCtx& k = line(q);
    for (int trial = 0; trial < 30; ++trial) {
      BiPoly f = random_bp(k, rng, 2, 2);
      BiPoly g = random_bp(k, rng, 2, 1);
      if (f.is_zero() || g.is_zero()) continue;
      BiPoly h = bp_mul(f, g);
      if (h.deg_x() < 1) continue;
      BiPoly hp = bp_derivative_x(h);
      if (hp.is_zero()) continue;  // stay separable for this test
      BiFactorization r;
      try {
        r = bivar_factor(h);  // internal remultiplication assert is the oracle
      } catch (const Error& e) {
        if (e.code() == Err::Precondition) continue;  // inseparable square part
        throw;
      }
      unsigned xdeg = 0;
      for (auto& fac : r.factors) xdeg += fac.mult * static_cast<unsigned>(fac.f.deg_x());
      CHECK(xdeg == static_cast<unsigned>(h.deg_x()));
      CHECK(std::is_sorted(r.factors.begin(), r.factors.end(),
                           [](const BiFactor& a, const BiFactor& b) {
                             return bp_less(a.f, b.f);
                           }));
    }
  }
}

TEST_CASE("factors over a genuine extension field") {
  const TabCtx& k9 = TabCtx::canonical(FqCtx::get(3), 2);  // F_9 as a table field
  TabField tf(k9);
  // (x + u T)(x + u^3 T) where u generates F_9: product stays over F_9
  uint16_t u = k9.gen();
  BiPoly a = bp(k9, {{0, u}, {1}});
  BiPoly b = bp(k9, {{0, k9.pow(u, 3)}, {1}});
  auto r = bivar_factor(bp_mul(a, b));
  REQUIRE(r.factors.size() == 2);
  std::vector<BiPoly> got{r.factors[0].f, r.factors[1].f};
  CHECK((bp_eq(got[0], a) || bp_eq(got[1], a)));
  CHECK((bp_eq(got[0], b) || bp_eq(got[1], b)));
}

TEST_CASE("rational function factoring round trip") {
  const FqCtx& k3 = FqCtx::get(3);
  RatField F(k3);
  // (x + 1/T)(x^2 + T)
  UP<RatField> a{RatFunc(Poly::one(k3), Poly::T(k3)), F.one()};
  UP<RatField> b{RatFunc(Poly::T(k3)), F.zero(), F.one()};
  auto facs = factor_over_F(k3, up_mul(F, a, b));
  REQUIRE(facs.size() == 2);
  CHECK(facs[0].second == 1);
  REQUIRE(up_deg(facs[0].first) == 1);
  CHECK(F.eq(facs[0].first[0], RatFunc(Poly::one(k3), Poly::T(k3))));
  REQUIRE(up_deg(facs[1].first) == 2);
  CHECK(F.eq(facs[1].first[0], RatFunc(Poly::T(k3))));
}

TEST_CASE("integral rescaling finds the minimal substitution") {
  const FqCtx& k3 = FqCtx::get(3);
  RatField F(k3);
  // monic form of T^2 x^8 + 2 x^2 + 2T
  UP<RatField> g(9, F.zero());
  g[8] = F.one();
  g[2] = RatFunc(Poly::constant(k3, 2), Poly(k3, {0, 0, 1}));
  g[0] = RatFunc(Poly::constant(k3, 2), Poly::T(k3));
  auto [m, v] = integral_rescale(k3, g);
  CHECK(v == Poly::T(k3));
  CHECK(up_str(F, m, "z") == "z^8+2*T^4*z^2+2*T^7");
}

TEST_CASE("Carlitz torsion splits in one explicit step") {
  const FqCtx& k3 = FqCtx::get(3);
  RatField F(k3);
  ModuleF C = carlitz_module(F, RatFunc::T(k3));
  SUBCASE("ell = T") {
    auto rep = splitting_field(C, Poly::T(k3));
    CHECK(rep.total_degree == 2);
    CHECK(rep.split);
    CHECK(rep.points == 3);
    REQUIRE(rep.levels.size() == 1);
    CHECK(rep.levels[0].min_poly == "z^2+T");
  }
  SUBCASE("ell = T^2 + 1") {
    auto rep = splitting_field(C, Poly(k3, {1, 0, 1}));
    CHECK(rep.total_degree == 8);
    CHECK(rep.split);
    CHECK(rep.points == 9);
    CHECK(rep.base_factor_degrees == std::vector<unsigned>{8});
    REQUIRE(rep.levels.size() == 1);
    CHECK(rep.levels[0].degree == 8);
    CHECK(rep.sample_points.size() == 9);
  }
}

TEST_CASE("rational torsion is recognized at the ground field") {
  const FqCtx& k3 = FqCtx::get(3);
  RatField F(k3);
  // phi_T = T - tau/T has phi[T] = {0, T, 2T} inside F
  ModuleF M(F, RatFunc::T(k3), {RatFunc(Poly::constant(k3, 2), Poly::T(k3))});
  auto rep = splitting_field(M, Poly::T(k3));
  CHECK(rep.total_degree == 1);
  CHECK(rep.split);
  CHECK(rep.points == 3);
  CHECK(rep.levels.empty());
  CHECK(rep.base_factor_degrees == std::vector<unsigned>({1, 1}));
}

TEST_CASE("flagship rank-2 module: degree-48 splitting tower at each prime") {
  const FqCtx& k3 = FqCtx::get(3);
  ModuleF M = make_rank2(k3, RatFunc::one(k3), -RatFunc(Poly(k3, {0, 0, 1})));
  for (uint8_t i = 0; i < 3; ++i) {
    CAPTURE(static_cast<int>(i));
    auto rep = splitting_field(M, Poly(k3, {i, 1}));
    CHECK(rep.total_degree == 48);
    CHECK(rep.split);
    CHECK(rep.points == 9);
    CHECK(rep.base_factor_degrees == std::vector<unsigned>{8});
    REQUIRE(rep.levels.size() == 2);
    CHECK(rep.levels[0].var == "z");
    CHECK(rep.levels[0].degree == 8);
    CHECK(rep.levels[1].var == "y");
    CHECK(rep.levels[1].degree == 6);
    CHECK(rep.sample_points.size() == 9);
    if (i == 0) CHECK(rep.levels[0].min_poly == "z^8+2*T^4*z^2+2*T^7");
    if (i == 1) CHECK(rep.levels[0].min_poly == "z^8+2*T^4*z^2+(2*T^7+2*T^6)");
  }
}

TEST_CASE("size guard on oversized torsion modules") {
  const FqCtx& k3 = FqCtx::get(3);
  ModuleF M = make_rank2(k3, RatFunc::one(k3), -RatFunc(Poly(k3, {0, 0, 1})));
  try {
    splitting_field(M, Poly(k3, {1, 2, 0, 1}));
    FAIL("expected a size-limit error");
  } catch (const Error& e) {
    CHECK(e.code() == Err::SizeLimit);
  }
}
