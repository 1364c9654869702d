#include "drinfeld/parse.hpp"

#include <cctype>
#include <cstdint>
#include <string>
#include <utility>

#include "drinfeld/errors.hpp"
#include "drinfeld/tower.hpp"

namespace drinfeld {
namespace {

using SkewF = SkewPoly<RatField>;

// expr  := [+|-] term (('+'|'-') term)*
// term  := power (('*'|'/'| juxtaposition) power)*
// power := atom ['^' uint]
// atom  := uint | 'w' | 'T' | 't' | '(' expr ')'
struct Parser {
  const FqCtx& kq;
  RatField F;
  const std::string& s;
  size_t pos = 0;

  Parser(const FqCtx& k, const std::string& text) : kq(k), F(k), s(text) {}

  [[noreturn]] void fail(const std::string& what) const {
    raise(Err::SyntaxError, what + " at position " + std::to_string(pos + 1));
  }

  char peek() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return pos < s.size() ? s[pos] : '\0';
  }

  static bool starts_operand(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'w' || c == 'T' ||
           c == 't' || c == '(';
  }

  uint64_t parse_uint() {
    if (peek() == '\0' || !std::isdigit(static_cast<unsigned char>(s[pos])))
      fail("expected a number");
    uint64_t n = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      n = n * 10 + static_cast<uint64_t>(s[pos] - '0');
      check(n <= 1'000'000'000'000ULL, Err::SizeLimit, "integer literal too large");
      ++pos;
    }
    return n;
  }

  bool scalar(const SkewF& f) const { return sk_deg(f) <= 0; }
  RatFunc as_scalar(const SkewF& f) const {
    return f.c.empty() ? RatFunc::zero(kq) : f.c[0];
  }

  SkewF atom() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      uint64_t n = parse_uint();
      uint8_t r = kq.scalar_from_int(static_cast<long long>(n));
      return sk_const(F, RatFunc::constant(kq, r));
    }
    switch (c) {
      case 'w':
        ++pos;
        return sk_const(F, RatFunc::constant(kq, kq.gen()));
      case 'T':
        ++pos;
        return sk_const(F, RatFunc::T(kq));
      case 't':
        ++pos;
        return sk_tau(F);
      case '(': {
        ++pos;
        SkewF v = expr();
        if (peek() != ')') fail("missing closing parenthesis");
        ++pos;
        return v;
      }
      case '\0':
        fail("unexpected end of input");
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  SkewF power() {
    SkewF a = atom();
    if (peek() != '^') return a;
    ++pos;
    if (peek() == '-') fail("negative exponents are not supported");
    uint64_t n = parse_uint();
    check(n <= 10000, Err::SizeLimit, "exponent too large");
    if (scalar(a)) return sk_const(F, rf_pow(as_scalar(a), n));
    return sk_pow(F, a, n);
  }

  SkewF term() {
    SkewF a = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos;
        a = sk_mul(F, a, power());
      } else if (c == '/') {
        size_t at = pos;
        ++pos;
        SkewF b = power();
        if (!scalar(a) || !scalar(b)) {
          pos = at;
          fail("division requires t-free operands");
        }
        a = sk_const(F, as_scalar(a) / as_scalar(b));
      } else if (starts_operand(c)) {
        a = sk_mul(F, a, power());
      } else {
        break;
      }
    }
    return a;
  }

  SkewF expr() {
    char c = peek();
    bool neg = false;
    if (c == '+') {
      ++pos;
    } else if (c == '-') {
      ++pos;
      neg = true;
    }
    SkewF a = term();
    if (neg) a = sk_neg(F, a);
    for (;;) {
      c = peek();
      if (c == '+') {
        ++pos;
        a = sk_add(F, a, term());
      } else if (c == '-') {
        ++pos;
        a = sk_sub(F, a, term());
      } else {
        break;
      }
    }
    return a;
  }

  SkewF run() {
    SkewF v = expr();
    if (peek() != '\0') fail("unexpected trailing input");
    return v;
  }
};

}  // namespace

SkewPoly<RatField> parse_skew(const FqCtx& k, const std::string& text) {
  Parser p(k, text);
  return p.run();
}

RatFunc parse_ratfunc(const FqCtx& k, const std::string& text) {
  SkewF f = parse_skew(k, text);
  if (sk_deg(f) > 0) {
    size_t tp = text.find('t');
    raise(Err::SyntaxError,
          "expression must be t-free at position " + std::to_string(tp + 1));
  }
  return f.c.empty() ? RatFunc::zero(k) : f.c[0];
}

Poly parse_poly(const FqCtx& k, const std::string& text) {
  RatFunc r = parse_ratfunc(k, text);
  check(r.is_poly(), Err::SyntaxError, "expression is not a polynomial in T");
  return r.as_poly();
}

ModuleF parse_module(const FqCtx& k, const std::string& text) {
  SkewF f = parse_skew(k, text);
  check(sk_deg(f) >= 1, Err::Precondition, "phi_T must have positive degree in t");
  check(f.c[0] == RatFunc::T(k), Err::Precondition,
        "the t-free term of phi_T must be T");
  std::vector<RatFunc> g(f.c.begin() + 1, f.c.end());
  return ModuleF(RatField(k), f.c[0], std::move(g));
}

std::string skew_str(const RatField& F, const SkewPoly<RatField>& f) {
  return up_str(F, f.c, "t");
}

std::string module_str(const ModuleF& phi) {
  return skew_str(phi.k, phi.phi_T());
}

}  // namespace drinfeld
