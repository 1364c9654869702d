#include "drinfeld/fq.hpp"

#include <map>
#include <memory>

namespace drinfeld {

namespace {

std::vector<uint8_t> unpack(unsigned v, unsigned p, unsigned e) {
  std::vector<uint8_t> d(e, 0);
  for (unsigned i = 0; i < e; ++i) {
    d[i] = static_cast<uint8_t>(v % p);
    v /= p;
  }
  return d;
}

unsigned pack(const std::vector<uint8_t>& d, unsigned p) {
  unsigned v = 0;
  for (size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

// Multiply packed values as F_p[x] residues mod the given monic modulus.
unsigned mul_mod(unsigned a, unsigned b, unsigned p, unsigned e,
                 const std::vector<uint8_t>& modulus) {
  std::vector<uint8_t> da = unpack(a, p, e), db = unpack(b, p, e);
  std::vector<uint8_t> prod(2 * e - 1, 0);
  for (unsigned i = 0; i < e; ++i)
    for (unsigned j = 0; j < e; ++j)
      prod[i + j] = static_cast<uint8_t>((prod[i + j] + da[i] * db[j]) % p);
  for (size_t i = prod.size(); i-- > e;) {
    unsigned c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (unsigned j = 0; j < e; ++j)
      prod[i - e + j] =
          static_cast<uint8_t>((prod[i - e + j] + c * (p - modulus[j])) % p);
  }
  prod.resize(e);
  return pack(prod, p);
}

}  // namespace

FqCtx::FqCtx(unsigned p, unsigned e, const std::vector<uint8_t>& modulus)
    : p_(p), e_(e), modulus_(modulus) {
  q_ = 1;
  for (unsigned i = 0; i < e; ++i) q_ *= p;

  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.resize(q_, 0);
  frob_.resize(q_);
  log_.resize(q_, 0);
  exp_.resize(q_ - 1);

  for (unsigned a = 0; a < q_; ++a) {
    std::vector<uint8_t> da = unpack(a, p, e);
    std::vector<uint8_t> dn(e);
    for (unsigned i = 0; i < e; ++i) dn[i] = static_cast<uint8_t>((p - da[i]) % p);
    neg_[a] = static_cast<uint8_t>(pack(dn, p));
    for (unsigned b = 0; b < q_; ++b) {
      std::vector<uint8_t> db = unpack(b, p, e), ds(e);
      for (unsigned i = 0; i < e; ++i) ds[i] = static_cast<uint8_t>((da[i] + db[i]) % p);
      add_[idx(static_cast<uint8_t>(a), static_cast<uint8_t>(b))] =
          static_cast<uint8_t>(pack(ds, p));
      mul_[idx(static_cast<uint8_t>(a), static_cast<uint8_t>(b))] =
          static_cast<uint8_t>(mul_mod(a, b, p, e, modulus_));
    }
  }

  gen_ = (e == 1) ? neg_[modulus_[0]] : static_cast<uint8_t>(p);

  // Conway moduli have primitive roots; verify rather than trust the table.
  uint8_t t = 1;
  for (unsigned k = 0; k < q_ - 1; ++k) {
    exp_[k] = t;
    check(k == 0 || t != 1, Err::Internal, "generator is not primitive");
    log_[t] = k;
    t = mul_[idx(t, gen_)];
  }
  check(t == 1, Err::Internal, "generator order does not divide q-1");

  for (unsigned a = 1; a < q_; ++a)
    inv_[a] = exp_[(q_ - 1 - log_[a]) % (q_ - 1)];

  for (unsigned a = 0; a < q_; ++a) {
    uint8_t f = static_cast<uint8_t>(a);
    for (unsigned i = 1; i < p; ++i) f = mul_[idx(f, static_cast<uint8_t>(a))];
    frob_[a] = f;
  }
}

const FqCtx& FqCtx::get(unsigned q) {
  struct Entry {
    unsigned p, e;
    std::vector<uint8_t> modulus;
  };
  static const std::map<unsigned, Entry> table = {
      {2, {2, 1, {1, 1}}},           {3, {3, 1, {1, 1}}},
      {4, {2, 2, {1, 1, 1}}},        {8, {2, 3, {1, 1, 0, 1}}},
      {9, {3, 2, {2, 2, 1}}},        {16, {2, 4, {1, 1, 0, 0, 1}}},
  };
  static std::map<unsigned, std::unique_ptr<FqCtx>> cache;
  auto it = table.find(q);
  check(it != table.end(), Err::UnsupportedField,
        "q=" + std::to_string(q) + " is outside the supported set {2,3,4,8,9,16}");
  auto& slot = cache[q];
  if (!slot) slot.reset(new FqCtx(it->second.p, it->second.e, it->second.modulus));
  return *slot;
}

uint8_t FqCtx::pow(uint8_t a, uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  uint64_t r = (static_cast<uint64_t>(log_[a]) * (k % (q_ - 1))) % (q_ - 1);
  return exp_[r];
}

unsigned FqCtx::mult_order(uint8_t a) const {
  check(a != 0, Err::DivisionByZero, "order of 0");
  unsigned n = q_ - 1, l = log_[a];
  if (l == 0) return 1;
  unsigned g = n, b = l;
  while (b) {
    unsigned t = g % b;
    g = b;
    b = t;
  }
  return n / g;
}

uint8_t FqCtx::sqrt(uint8_t a) const {
  if (a == 0) return 0;
  if (p_ == 2) return pow(a, q_ / 2);
  check(log_[a] % 2 == 0, Err::Precondition, "element is not a square");
  return exp_[log_[a] / 2];
}

std::array<uint8_t, 4> FqCtx::digits(uint8_t a) const {
  std::array<uint8_t, 4> out{0, 0, 0, 0};
  auto d = unpack(a, p_, e_);
  for (unsigned i = 0; i < e_; ++i) out[i] = d[i];
  return out;
}

uint8_t FqCtx::from_digits(const uint8_t* d) const {
  std::vector<uint8_t> v(d, d + e_);
  return static_cast<uint8_t>(pack(v, p_));
}

std::string FqCtx::str(uint8_t a) const {
  if (a == 0) return "0";
  auto d = digits(a);
  std::string out;
  for (int i = static_cast<int>(e_) - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(static_cast<int>(d[i]));
    } else {
      if (d[i] != 1) out += std::to_string(static_cast<int>(d[i])) + "*";
      out += (i == 1) ? "w" : "w^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace drinfeld
