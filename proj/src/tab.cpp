#include "drinfeld/tab.hpp"

#include <map>
#include <memory>

#include "drinfeld/factor.hpp"

namespace drinfeld {

namespace {

std::vector<uint8_t> unpack_q(uint32_t v, unsigned q, unsigned s) {
  std::vector<uint8_t> d(s, 0);
  for (unsigned i = 0; i < s; ++i) {
    d[i] = static_cast<uint8_t>(v % q);
    v /= q;
  }
  return d;
}

uint32_t pack_q(const std::vector<uint8_t>& d, unsigned q) {
  uint32_t v = 0;
  for (size_t i = d.size(); i-- > 0;) v = v * q + d[i];
  return v;
}

uint32_t slow_mul(uint32_t a, uint32_t b, const FqCtx& base, unsigned s,
                  const std::vector<uint8_t>& modulus) {
  unsigned q = base.q();
  std::vector<uint8_t> da = unpack_q(a, q, s), db = unpack_q(b, q, s);
  std::vector<uint8_t> prod(2 * s - 1, 0);
  for (unsigned i = 0; i < s; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < s; ++j)
      prod[i + j] = base.add(prod[i + j], base.mul(da[i], db[j]));
  }
  for (size_t i = prod.size(); i-- > s;) {
    uint8_t c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (unsigned j = 0; j < s; ++j)
      prod[i - s + j] = base.sub(prod[i - s + j], base.mul(c, modulus[j]));
  }
  prod.resize(s);
  return pack_q(prod, q);
}

std::vector<uint32_t> prime_divisors(uint32_t n) {
  std::vector<uint32_t> out;
  for (uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

TabCtx::TabCtx(const FqCtx& base, const std::vector<uint8_t>& modulus)
    : base_(&base), modulus_(modulus) {
  check(modulus.size() >= 2 && modulus.back() == 1, Err::Precondition,
        "extension modulus must be monic of degree >= 1");
  s_ = static_cast<unsigned>(modulus.size()) - 1;
  uint64_t n = 1;
  for (unsigned i = 0; i < s_; ++i) n *= base.q();
  check(n <= 4096, Err::SizeLimit,
        "extension field would exceed the 4096-element table limit");
  n_ = static_cast<uint32_t>(n);
  p2_ = base.p() == 2;
  FqField bf(base);
  check(up_is_irreducible(bf, modulus_), Err::InseparableModulus,
        "extension modulus is not irreducible");

  neg_.resize(n_);
  for (uint32_t a = 0; a < n_; ++a) {
    auto d = unpack_q(a, base.q(), s_);
    for (auto& c : d) c = base.neg(c);
    neg_[a] = static_cast<uint16_t>(pack_q(d, base.q()));
  }
  if (!p2_) {
    add_.resize(static_cast<size_t>(n_) * n_);
    for (uint32_t a = 0; a < n_; ++a) {
      auto da = unpack_q(a, base.q(), s_);
      for (uint32_t b = 0; b < n_; ++b) {
        auto db = unpack_q(b, base.q(), s_);
        std::vector<uint8_t> dsum(s_);
        for (unsigned i = 0; i < s_; ++i) dsum[i] = base.add(da[i], db[i]);
        add_[static_cast<size_t>(a) * n_ + b] =
            static_cast<uint16_t>(pack_q(dsum, base.q()));
      }
    }
  }

  // Find a generator of the multiplicative group, then lay out exp/log.
  auto divisors = prime_divisors(n_ - 1);
  for (uint32_t cand = (s_ == 1) ? base.gen() : base.q(); cand < n_; ++cand) {
    bool primitive = true;
    for (uint32_t r : divisors) {
      uint32_t t = 1, b = cand;
      uint32_t e = (n_ - 1) / r;
      while (e) {
        if (e & 1) t = slow_mul(t, b, base, s_, modulus_);
        b = slow_mul(b, b, base, s_, modulus_);
        e >>= 1;
      }
      if (t == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen_ = static_cast<uint16_t>(cand);
      break;
    }
  }
  check(gen_ != 0, Err::Internal, "no multiplicative generator found");

  exp_.resize(n_ - 1);
  log_.resize(n_, 0);
  uint32_t t = 1;
  for (uint32_t k = 0; k < n_ - 1; ++k) {
    exp_[k] = static_cast<uint16_t>(t);
    log_[t] = k;
    t = slow_mul(t, gen_, base, s_, modulus_);
  }
  check(t == 1, Err::Internal, "generator order mismatch");

  frobq_.resize(n_);
  pth_root_.resize(n_);
  std::vector<uint16_t> frobp(n_);
  for (uint32_t a = 0; a < n_; ++a) {
    frobq_[a] = pow(static_cast<uint16_t>(a), base.q());
    frobp[a] = pow(static_cast<uint16_t>(a), base.p());
  }
  for (uint32_t a = 0; a < n_; ++a) pth_root_[frobp[a]] = static_cast<uint16_t>(a);
}

uint16_t TabCtx::pow(uint16_t a, uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  uint64_t r = (static_cast<uint64_t>(log_[a]) * (k % (n_ - 1))) % (n_ - 1);
  return exp_[r];
}

std::vector<uint8_t> TabCtx::digits(uint16_t a) const {
  return unpack_q(a, base_->q(), s_);
}

uint16_t TabCtx::from_digits(const std::vector<uint8_t>& d) const {
  check(d.size() <= s_, Err::Precondition, "digit vector too long");
  std::vector<uint8_t> full = d;
  full.resize(s_, 0);
  return static_cast<uint16_t>(pack_q(full, base_->q()));
}

std::string TabCtx::str(uint16_t a, const std::string& var) const {
  return poly_to_string(*base_, digits(a), var);
}

namespace {
struct TabKey {
  unsigned q;
  std::vector<uint8_t> modulus;
  bool operator<(const TabKey& o) const {
    if (q != o.q) return q < o.q;
    return modulus < o.modulus;
  }
};
std::map<TabKey, std::unique_ptr<TabCtx>>& tab_cache() {
  static std::map<TabKey, std::unique_ptr<TabCtx>> cache;
  return cache;
}
}  // namespace

const TabCtx& TabCtx::get(const FqCtx& base, const std::vector<uint8_t>& modulus) {
  TabKey key{base.q(), modulus};
  auto& slot = tab_cache()[key];
  if (!slot) slot.reset(new TabCtx(base, modulus));
  return *slot;
}

const TabCtx& TabCtx::canonical(const FqCtx& base, unsigned s) {
  check(s >= 1, Err::Precondition, "extension degree must be >= 1");
  uint64_t n = 1;
  for (unsigned i = 0; i < s; ++i) n *= base.q();
  check(n <= 4096, Err::SizeLimit,
        "extension field would exceed the 4096-element table limit");
  FqField bf(base);
  for (uint64_t v = 0;; ++v) {
    check(v < n, Err::Internal, "no irreducible modulus found");
    std::vector<uint8_t> c = unpack_q(static_cast<uint32_t>(v), base.q(), s);
    c.push_back(1);
    if (up_is_irreducible(bf, c)) return get(base, c);
  }
}

}  // namespace drinfeld
