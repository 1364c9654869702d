#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/fq.hpp"

namespace drinfeld {

// Small 2x2 matrix groups over packed coefficient rings.  Two rings are
// supported through the same duck-typed interface: the base fields F_q and
// the dual numbers F_q[u]/(u^2), which model the second layer of the
// congruence filtration GL_2(A/p^2) -> GL_2(A/p).

struct FqRing {
  using Elem = uint16_t;
  const FqCtx* k;

  explicit FqRing(const FqCtx& ctx) : k(&ctx) {}
  unsigned size() const { return k->q(); }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return k->add(uint8_t(a), uint8_t(b)); }
  Elem sub(Elem a, Elem b) const { return k->sub(uint8_t(a), uint8_t(b)); }
  Elem neg(Elem a) const { return k->neg(uint8_t(a)); }
  Elem mul(Elem a, Elem b) const { return k->mul(uint8_t(a), uint8_t(b)); }
  bool is_unit(Elem a) const { return a != 0; }
  Elem inv(Elem a) const { return k->inv(uint8_t(a)); }
  std::string str(Elem a) const { return k->str(uint8_t(a)); }
  bool operator==(const FqRing& o) const { return k == o.k; }
};

// F_q[u]/(u^2) with a + b u packed as a + q b.
struct DualRing {
  using Elem = uint16_t;
  const FqCtx* k;

  explicit DualRing(const FqCtx& ctx) : k(&ctx) {}
  unsigned q() const { return k->q(); }
  unsigned size() const { return k->q() * k->q(); }
  Elem make(uint8_t a, uint8_t b) const { return Elem(a + k->q() * b); }
  uint8_t unit_part(Elem x) const { return uint8_t(x % k->q()); }
  uint8_t dual_part(Elem x) const { return uint8_t(x / k->q()); }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem u() const { return make(0, 1); }
  Elem embed(uint8_t a) const { return make(a, 0); }
  Elem add(Elem x, Elem y) const {
    return make(k->add(unit_part(x), unit_part(y)), k->add(dual_part(x), dual_part(y)));
  }
  Elem sub(Elem x, Elem y) const {
    return make(k->sub(unit_part(x), unit_part(y)), k->sub(dual_part(x), dual_part(y)));
  }
  Elem neg(Elem x) const { return make(k->neg(unit_part(x)), k->neg(dual_part(x))); }
  Elem mul(Elem x, Elem y) const {
    uint8_t a = unit_part(x), b = dual_part(x), c = unit_part(y), d = dual_part(y);
    return make(k->mul(a, c), k->add(k->mul(a, d), k->mul(b, c)));
  }
  bool is_unit(Elem x) const { return unit_part(x) != 0; }
  Elem inv(Elem x) const {
    uint8_t a = unit_part(x), b = dual_part(x);
    check(a != 0, Err::DivisionByZero, "dual number with nilpotent unit part");
    uint8_t ai = k->inv(a);
    return make(ai, k->neg(k->mul(k->mul(ai, ai), b)));
  }
  std::string str(Elem x) const;
  bool operator==(const DualRing& o) const { return k == o.k; }
};

// Row-major: [[e0, e1], [e2, e3]].
template <class R>
struct Mat2T {
  std::array<typename R::Elem, 4> e{0, 0, 0, 0};
};

using Mat2 = Mat2T<FqRing>;
using Mat2D = Mat2T<DualRing>;

template <class R>
Mat2T<R> m2_make(typename R::Elem a, typename R::Elem b, typename R::Elem c,
                 typename R::Elem d) {
  Mat2T<R> m;
  m.e = {a, b, c, d};
  return m;
}

template <class R>
Mat2T<R> m2_id(const R& r) {
  return m2_make<R>(r.one(), r.zero(), r.zero(), r.one());
}

template <class R>
Mat2T<R> m2_mul(const R& r, const Mat2T<R>& a, const Mat2T<R>& b) {
  Mat2T<R> c;
  c.e[0] = r.add(r.mul(a.e[0], b.e[0]), r.mul(a.e[1], b.e[2]));
  c.e[1] = r.add(r.mul(a.e[0], b.e[1]), r.mul(a.e[1], b.e[3]));
  c.e[2] = r.add(r.mul(a.e[2], b.e[0]), r.mul(a.e[3], b.e[2]));
  c.e[3] = r.add(r.mul(a.e[2], b.e[1]), r.mul(a.e[3], b.e[3]));
  return c;
}

template <class R>
typename R::Elem m2_trace(const R& r, const Mat2T<R>& a) {
  return r.add(a.e[0], a.e[3]);
}

template <class R>
typename R::Elem m2_det(const R& r, const Mat2T<R>& a) {
  return r.sub(r.mul(a.e[0], a.e[3]), r.mul(a.e[1], a.e[2]));
}

template <class R>
bool m2_invertible(const R& r, const Mat2T<R>& a) {
  return r.is_unit(m2_det(r, a));
}

template <class R>
Mat2T<R> m2_inv(const R& r, const Mat2T<R>& a) {
  auto di = r.inv(m2_det(r, a));
  return m2_make<R>(r.mul(di, a.e[3]), r.mul(di, r.neg(a.e[1])),
                    r.mul(di, r.neg(a.e[2])), r.mul(di, a.e[0]));
}

template <class R>
Mat2T<R> m2_add(const R& r, const Mat2T<R>& a, const Mat2T<R>& b) {
  Mat2T<R> c;
  for (int i = 0; i < 4; ++i) c.e[i] = r.add(a.e[i], b.e[i]);
  return c;
}

template <class R>
Mat2T<R> m2_sub(const R& r, const Mat2T<R>& a, const Mat2T<R>& b) {
  Mat2T<R> c;
  for (int i = 0; i < 4; ++i) c.e[i] = r.sub(a.e[i], b.e[i]);
  return c;
}

template <class R>
bool m2_eq(const Mat2T<R>& a, const Mat2T<R>& b) {
  return a.e == b.e;
}

template <class R>
bool m2_is_scalar(const R& r, const Mat2T<R>& a) {
  return a.e[1] == r.zero() && a.e[2] == r.zero() && a.e[0] == a.e[3];
}

template <class R>
uint64_t m2_key(const R& r, const Mat2T<R>& a) {
  uint64_t s = r.size(), key = 0;
  for (int i = 0; i < 4; ++i) key = key * s + a.e[i];
  return key;
}

template <class R>
Mat2T<R> m2_from_key(const R& r, uint64_t key) {
  uint64_t s = r.size();
  Mat2T<R> a;
  for (int i = 3; i >= 0; --i) {
    a.e[i] = static_cast<typename R::Elem>(key % s);
    key /= s;
  }
  return a;
}

template <class R>
std::string m2_str(const R& r, const Mat2T<R>& a) {
  return "[[" + r.str(a.e[0]) + "," + r.str(a.e[1]) + "],[" + r.str(a.e[2]) + "," +
         r.str(a.e[3]) + "]]";
}

template <class R>
unsigned m2_order(const R& r, const Mat2T<R>& a) {
  check(m2_invertible(r, a), Err::Precondition, "order of a singular matrix");
  Mat2T<R> p = a;
  unsigned n = 1;
  const Mat2T<R> id = m2_id(r);
  while (!m2_eq(p, id)) {
    p = m2_mul(r, p, a);
    ++n;
    check(n <= 1u << 24, Err::Internal, "runaway order computation");
  }
  return n;
}

// A finite matrix group held as its sorted key list plus an index lookup.
// Element handles are indices into that list, so subgroup work is integer
// set manipulation.
template <class R>
struct MatGroup {
  R ring;
  std::vector<uint64_t> keys;
  std::unordered_map<uint64_t, uint32_t> index;
  std::vector<uint32_t> inv_idx;
  uint32_t id = 0;

  explicit MatGroup(const R& r) : ring(r) {}
  uint32_t order() const { return static_cast<uint32_t>(keys.size()); }
  Mat2T<R> mat(uint32_t i) const { return m2_from_key(ring, keys[i]); }
  uint32_t locate(uint64_t key) const {
    auto it = index.find(key);
    check(it != index.end(), Err::Precondition, "matrix is not in the group");
    return it->second;
  }
  uint32_t locate(const Mat2T<R>& m) const { return locate(m2_key(ring, m)); }
  uint32_t mul(uint32_t i, uint32_t j) const {
    return locate(m2_key(ring, m2_mul(ring, mat(i), mat(j))));
  }
  uint32_t inv(uint32_t i) const { return inv_idx[i]; }
};

template <class R>
void mg_finalize(MatGroup<R>& G) {
  std::sort(G.keys.begin(), G.keys.end());
  G.keys.erase(std::unique(G.keys.begin(), G.keys.end()), G.keys.end());
  G.index.clear();
  G.index.reserve(G.keys.size() * 2);
  for (uint32_t i = 0; i < G.keys.size(); ++i) G.index.emplace(G.keys[i], i);
  G.id = G.locate(m2_key(G.ring, m2_id(G.ring)));
  G.inv_idx.resize(G.keys.size());
  for (uint32_t i = 0; i < G.keys.size(); ++i)
    G.inv_idx[i] = G.locate(m2_key(G.ring, m2_inv(G.ring, G.mat(i))));
}

namespace detail {
template <class R>
MatGroup<R> mg_scan(const R& r, bool special) {
  uint64_t s = r.size();
  uint64_t total = s * s * s * s;
  check(total <= (1ull << 26), Err::SizeLimit, "matrix scan space is too large");
  MatGroup<R> G(r);
  for (uint64_t key = 0; key < total; ++key) {
    Mat2T<R> m = m2_from_key(r, key);
    auto d = m2_det(r, m);
    if (!r.is_unit(d)) continue;
    if (special && d != r.one()) continue;
    G.keys.push_back(key);
  }
  mg_finalize(G);
  return G;
}
}  // namespace detail

template <class R>
MatGroup<R> make_gl2(const R& r) {
  return detail::mg_scan(r, false);
}

template <class R>
MatGroup<R> make_sl2(const R& r) {
  return detail::mg_scan(r, true);
}

// Dual-ring groups assembled as lift(base group) x (1 + u X) instead of a
// size^4 scan; X ranges over M_2(F_q) for GL_2 and over sl_2 for SL_2.
MatGroup<DualRing> make_gl2_dual(const DualRing& D);
MatGroup<DualRing> make_sl2_dual(const DualRing& D);

// Subgroup generated by the given elements, as a sorted index vector.
template <class R>
std::vector<uint32_t> mg_closure(const MatGroup<R>& G, const std::vector<uint32_t>& gens) {
  std::unordered_set<uint32_t> seen{G.id};
  std::vector<uint32_t> frontier{G.id};
  while (!frontier.empty()) {
    std::vector<uint32_t> next;
    for (uint32_t f : frontier)
      for (uint32_t g : gens) {
        uint32_t h = G.mul(f, g);
        if (seen.insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  std::vector<uint32_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

template <class R>
std::vector<uint32_t> mg_conjugate(const MatGroup<R>& G, const std::vector<uint32_t>& H,
                                   uint32_t g) {
  std::vector<uint32_t> out;
  out.reserve(H.size());
  uint32_t gi = G.inv(g);
  for (uint32_t h : H) out.push_back(G.mul(G.mul(g, h), gi));
  std::sort(out.begin(), out.end());
  return out;
}

// Greedy small generating set of a subgroup given as sorted indices.
template <class R>
std::vector<uint32_t> mg_generators(const MatGroup<R>& G, const std::vector<uint32_t>& H) {
  std::vector<uint32_t> gens;
  std::vector<uint32_t> span{G.id};
  if (H.size() == 1) return gens;
  while (span.size() < H.size()) {
    uint32_t pick = G.id;
    for (uint32_t h : H)
      if (!std::binary_search(span.begin(), span.end(), h)) {
        pick = h;
        break;
      }
    check(pick != G.id, Err::Internal, "generator search stalled");
    gens.push_back(pick);
    span = mg_closure(G, gens);
  }
  return gens;
}

struct SubgroupClass {
  std::vector<uint32_t> elems;  // representative, sorted element indices
  unsigned order = 1;
  unsigned class_size = 1;  // index of the normalizer
  bool normal = false;
};

namespace detail {
// Lexicographically least conjugate of H: the canonical form used to pool
// conjugate subgroups.
template <class R>
std::vector<uint32_t> mg_canonical_conjugate(const MatGroup<R>& G,
                                             const std::vector<uint32_t>& H) {
  std::vector<uint32_t> best = H;
  for (uint32_t g = 0; g < G.order(); ++g) {
    auto c = mg_conjugate(G, H, g);
    if (c < best) best = c;
  }
  return best;
}

struct VecHash {
  size_t operator()(const std::vector<uint32_t>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};
}  // namespace detail

// All subgroups up to conjugacy, found by closing each known class under
// one extra generator until nothing new appears.  Every subgroup is
// generated by finitely many elements, so induction on the generator count
// shows the sweep is exhaustive.
template <class R>
std::vector<SubgroupClass> subgroups_up_to_conjugacy(const MatGroup<R>& G) {
  check(G.order() <= 4000, Err::SizeLimit,
        "subgroup classification is limited to groups of order 4000");
  std::vector<SubgroupClass> classes;
  std::unordered_set<std::vector<uint32_t>, detail::VecHash> seen;
  std::vector<std::vector<uint32_t>> work;

  auto admit = [&](const std::vector<uint32_t>& H) {
    auto canon = detail::mg_canonical_conjugate(G, H);
    if (!seen.insert(canon).second) return;
    SubgroupClass cls;
    cls.elems = canon;
    cls.order = static_cast<unsigned>(canon.size());
    unsigned normalizer = 0;
    for (uint32_t g = 0; g < G.order(); ++g)
      if (mg_conjugate(G, canon, g) == canon) ++normalizer;
    cls.class_size = G.order() / normalizer;
    cls.normal = cls.class_size == 1;
    classes.push_back(cls);
    work.push_back(canon);
  };

  admit({G.id});
  for (size_t w = 0; w < work.size(); ++w) {
    const auto H = work[w];
    if (H.size() == G.order()) continue;
    auto base_gens = mg_generators(G, H);
    for (uint32_t g = 0; g < G.order(); ++g) {
      if (std::binary_search(H.begin(), H.end(), g)) continue;
      auto gens = base_gens;
      gens.push_back(g);
      admit(mg_closure(G, gens));
    }
  }
  std::sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.elems < b.elems;
  });
  return classes;
}

// Every subgroup as an explicit element set; the independent enumeration the
// conjugacy classification is cross-checked against.
template <class R>
std::vector<std::vector<uint32_t>> all_subgroups(const MatGroup<R>& G) {
  check(G.order() <= 200, Err::SizeLimit,
        "exhaustive subgroup listing is limited to groups of order 200");
  std::unordered_set<std::vector<uint32_t>, detail::VecHash> seen;
  std::vector<std::vector<uint32_t>> work;
  auto admit = [&](const std::vector<uint32_t>& H) {
    if (seen.insert(H).second) work.push_back(H);
  };
  admit({G.id});
  for (size_t w = 0; w < work.size(); ++w) {
    const auto H = work[w];
    if (H.size() == G.order()) continue;
    auto base_gens = mg_generators(G, H);
    for (uint32_t g = 0; g < G.order(); ++g) {
      if (std::binary_search(H.begin(), H.end(), g)) continue;
      std::vector<uint32_t> gens = base_gens;
      gens.push_back(g);
      admit(mg_closure(G, gens));
    }
  }
  std::vector<std::vector<uint32_t>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

// Orbit length multiset of the matrix acting on the nonzero vectors of
// F_q^2: the cycle type of the induced permutation, ascending.
std::vector<unsigned> cycle_pattern(const FqRing& r, const Mat2& m);

// GL_2 over F_q for the small supported q.
MatGroup<FqRing> gl2_small(unsigned q);

}  // namespace drinfeld
