#pragma once
// F_{N^d} arithmetic (N odd prime, d small), plus generic polynomial algebra
// over these fields: gcd, powmod, Cantor-Zassenhaus factorization, square
// roots.  Extension fields are F_N[x]/(f) with f found by deterministic
// search; for d = 2 the modulus is x^2 - r with r the smallest non-residue,
// so F_{N^2} = F_N(sqrt(r)).

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "intutil.hpp"

namespace eistark {

struct FqCtx;
using FqCtxPtr = std::shared_ptr<const FqCtx>;

struct Fq {
  std::vector<u64> c;  // size = ctx->d, coefficients mod N
  FqCtxPtr ctx;

  Fq() = default;
  bool attached() const { return (bool)ctx; }
  bool is_zero() const {
    for (u64 x : c)
      if (x) return false;
    return true;
  }
  friend bool operator==(const Fq& a, const Fq& b) {
    if (!a.ctx) return b.is_zero();
    if (!b.ctx) return a.is_zero();
    return a.c == b.c;
  }
  friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }
  friend Fq operator+(const Fq& a, const Fq& b);
  friend Fq operator-(const Fq& a, const Fq& b);
  friend Fq operator*(const Fq& a, const Fq& b);
  Fq operator-() const;
  Fq& operator+=(const Fq& o) { *this = *this + o; return *this; }
  Fq& operator-=(const Fq& o) { *this = *this - o; return *this; }
  Fq& operator*=(const Fq& o) { *this = *this * o; return *this; }
  Fq inv() const;
  Fq pow(u64 e) const;
  Fq pow(const mpz_class& e) const;
  Fq frob() const;  // x -> x^N
  std::string str() const;
};

struct FqCtx : std::enable_shared_from_this<FqCtx> {
  u64 N = 0;
  u64 d = 1;
  std::vector<u64> modpoly;  // monic, degree d, coefficients mod N (size d+1)

  static FqCtxPtr prime_field(u64 N);
  static FqCtxPtr make(u64 N, u64 d);  // searches an irreducible modulus

  mpz_class order() const {  // N^d
    mpz_class q(std::to_string(N));
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), (unsigned long)d);
    return r;
  }

  Fq make_elt(std::vector<u64> coeffs) const {
    Fq e;
    e.ctx = shared_from_this();
    coeffs.resize(d, 0);
    for (auto& x : coeffs) x %= N;
    e.c = std::move(coeffs);
    return e;
  }
  Fq zero() const { return make_elt({}); }
  Fq one() const { return make_elt({1}); }
  Fq from_int(i64 x) const { return make_elt({(u64)smod(x, (i64)N)}); }
  Fq gen() const { return d == 1 ? from_int(1) : make_elt({0, 1}); }
};

inline FqCtxPtr join_ctx(const Fq& a, const Fq& b) {
  if (a.ctx && b.ctx) {
    assert(a.ctx->N == b.ctx->N && a.ctx->d == b.ctx->d && a.ctx->modpoly == b.ctx->modpoly);
    return a.ctx;
  }
  return a.ctx ? a.ctx : b.ctx;
}

inline Fq operator+(const Fq& a, const Fq& b) {
  auto ctx = join_ctx(a, b);
  if (!ctx) return Fq();
  Fq r = ctx->zero();
  for (size_t i = 0; i < ctx->d; ++i)
    r.c[i] = addmod(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0, ctx->N);
  return r;
}

inline Fq Fq::operator-() const {
  if (!ctx) return Fq();
  Fq r = *this;
  for (auto& x : r.c) x = x ? ctx->N - x : 0;
  return r;
}

inline Fq operator-(const Fq& a, const Fq& b) { return a + (-b); }

inline Fq operator*(const Fq& a, const Fq& b) {
  auto ctx = join_ctx(a, b);
  if (!ctx) return Fq();
  if (!a.ctx || !b.ctx) return ctx->zero();
  const u64 N = ctx->N, d = ctx->d;
  std::vector<u64> prod(2 * d - 1, 0);
  for (size_t i = 0; i < d; ++i) {
    if (!a.c[i]) continue;
    for (size_t j = 0; j < d; ++j) {
      if (!b.c[j]) continue;
      prod[i + j] = addmod(prod[i + j], mulmod(a.c[i], b.c[j], N), N);
    }
  }
  // reduce mod monic modpoly
  for (i64 i = (i64)prod.size() - 1; i >= (i64)d; --i) {
    u64 lead = prod[i];
    if (!lead) continue;
    prod[i] = 0;
    for (size_t j = 0; j < d; ++j)
      prod[i - d + j] = submod(prod[i - d + j], mulmod(lead, ctx->modpoly[j], N), N);
  }
  prod.resize(d);
  return ctx->make_elt(std::move(prod));
}

inline Fq Fq::pow(u64 e) const {
  assert(ctx);
  Fq r = ctx->one(), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Fq Fq::pow(const mpz_class& e) const {
  assert(ctx && e >= 0);
  Fq r = ctx->one(), b = *this;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) r *= b;
    b *= b;
  }
  return r;
}

inline Fq Fq::frob() const { return pow(ctx->N); }

inline std::string Fq::str() const {
  if (!ctx) return "0";
  std::string s = "(";
  for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

// ---------------------------------------------------------------------------
// polynomials over Fq (dense, low degree first, normalized: no zero lead)

using FqPoly = std::vector<Fq>;

inline void poly_trim(FqPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}
inline i64 poly_deg(const FqPoly& p) { return (i64)p.size() - 1; }

inline FqPoly poly_from(const FqCtxPtr& ctx, std::vector<i64> ints) {
  FqPoly p;
  for (i64 x : ints) p.push_back(ctx->from_int(x));
  poly_trim(p);
  return p;
}

inline FqPoly poly_add(const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  poly_trim(r);
  return r;
}
inline FqPoly poly_neg(const FqPoly& a) {
  FqPoly r = a;
  for (auto& x : r) x = -x;
  return r;
}
inline FqPoly poly_sub(const FqPoly& a, const FqPoly& b) { return poly_add(a, poly_neg(b)); }

inline FqPoly poly_mul(const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1);
  for (auto& x : r) x = a[0].ctx->zero();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

inline FqPoly poly_scale(const FqPoly& a, const Fq& s) {
  FqPoly r = a;
  for (auto& x : r) x *= s;
  poly_trim(r);
  return r;
}

// division with remainder; b nonzero
inline std::pair<FqPoly, FqPoly> poly_divmod(const FqPoly& a, const FqPoly& b) {
  assert(!b.empty());
  FqPoly r = a, q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, b[0].ctx->zero());
  Fq binv = b.back().inv();
  for (i64 i = (i64)r.size() - (i64)b.size(); i >= 0; --i) {
    Fq f = r[i + b.size() - 1] * binv;
    if (f.is_zero()) continue;
    q[i] = f;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] -= f * b[j];
  }
  poly_trim(q);
  poly_trim(r);
  return {q, r};
}
inline FqPoly poly_mod(const FqPoly& a, const FqPoly& b) { return poly_divmod(a, b).second; }

inline FqPoly poly_monic(const FqPoly& a) {
  if (a.empty()) return a;
  return poly_scale(a, a.back().inv());
}

inline FqPoly poly_gcd(FqPoly a, FqPoly b) {
  while (!b.empty()) {
    FqPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

inline FqPoly poly_deriv(const FqPoly& a) {
  if (a.size() <= 1) return {};
  FqPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i].ctx->from_int((i64)(i % a[i].ctx->N)) * a[i];
  poly_trim(r);
  return r;
}

inline FqPoly poly_mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& f) {
  return poly_mod(poly_mul(a, b), f);
}

inline FqPoly poly_powmod(FqPoly base, const mpz_class& e, const FqPoly& f) {
  FqPoly r = {f[0].ctx->one()};
  base = poly_mod(base, f);
  size_t bits = e > 0 ? mpz_sizeinbase(e.get_mpz_t(), 2) : 0;
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) r = poly_mulmod(r, base, f);
    base = poly_mulmod(base, base, f);
  }
  return r;
}

inline Fq poly_eval(const FqPoly& p, const Fq& x) {
  Fq r = x.ctx->zero();
  for (i64 i = (i64)p.size() - 1; i >= 0; --i) r = r * x + p[i];
  return r;
}

// deterministic pseudo-random field element stream (for CZ splitting)
struct FqRand {
  FqCtxPtr ctx;
  std::mt19937_64 rng;
  explicit FqRand(const FqCtxPtr& c, u64 seed = 0x9e3779b97f4a7c15ull) : ctx(c), rng(seed ^ c->N ^ (c->d << 32)) {}
  Fq next() {
    std::vector<u64> v(ctx->d);
    for (auto& x : v) x = rng() % ctx->N;
    return ctx->make_elt(std::move(v));
  }
  FqPoly next_poly(u64 deg) {
    FqPoly p;
    for (u64 i = 0; i <= deg; ++i) p.push_back(next());
    poly_trim(p);
    return p;
  }
};

// all roots of squarefree-ish f lying in the coefficient field, via
// x^q - x splitting then equal-degree splitting on the linear part
inline std::vector<Fq> poly_roots(FqPoly f) {
  std::vector<Fq> roots;
  if (f.empty()) return roots;
  auto ctx = f[0].ctx;
  f = poly_monic(f);
  // strip content of repeated roots: work with gcd(f, x^q - x)
  FqPoly x = poly_from(ctx, {0, 1});
  FqPoly xq = poly_powmod(x, ctx->order(), f);
  FqPoly lin = poly_gcd(f, poly_sub(xq, x));
  // lin = product of (x - root) over distinct roots in the field
  FqRand rnd(ctx, 0xabcdef12345ull);
  std::vector<FqPoly> stack = {lin};
  mpz_class half = (ctx->order() - 1) / 2;
  while (!stack.empty()) {
    FqPoly g = stack.back();
    stack.pop_back();
    poly_trim(g);
    if (poly_deg(g) <= 0) continue;
    if (poly_deg(g) == 1) {
      roots.push_back(-(g[0] * g[1].inv()));
      continue;
    }
    // random splitting: gcd(g, (x+a)^((q-1)/2) - 1)
    for (int tries = 0; tries < 200; ++tries) {
      FqPoly shift = {rnd.next(), ctx->one()};
      FqPoly h = poly_powmod(shift, half, g);
      if (h.empty()) continue;
      h[0] -= ctx->one();
      poly_trim(h);
      FqPoly d1 = poly_gcd(g, h);
      if (poly_deg(d1) > 0 && poly_deg(d1) < poly_deg(g)) {
        stack.push_back(d1);
        stack.push_back(poly_divmod(g, d1).first);
        break;
      }
    }
  }
  return roots;
}

// irreducible factors (monic) of squarefree monic f over the coefficient field
inline std::vector<FqPoly> poly_factor_squarefree(FqPoly f) {
  std::vector<FqPoly> out;
  if (poly_deg(f) <= 0) return out;
  auto ctx = f[0].ctx;
  f = poly_monic(f);
  FqPoly x = poly_from(ctx, {0, 1});
  // distinct-degree
  FqPoly h = x, rest = f;
  std::vector<std::pair<FqPoly, u64>> dd;  // (product of irreducibles of degree k, k)
  for (u64 k = 1; poly_deg(rest) >= (i64)(2 * k); ++k) {
    h = poly_powmod(h, ctx->order(), rest);
    FqPoly g = poly_gcd(rest, poly_sub(h, x));
    if (poly_deg(g) > 0) {
      dd.push_back({g, k});
      rest = poly_divmod(rest, g).first;
      h = poly_mod(h, rest);
    }
  }
  if (poly_deg(rest) > 0) dd.push_back({rest, (u64)poly_deg(rest)});
  // equal-degree (Cantor-Zassenhaus)
  FqRand rnd(ctx, 0x5ca1ab1eull);
  mpz_class q = ctx->order();
  for (auto& [prod, k] : dd) {
    std::vector<FqPoly> stack = {prod};
    mpz_class qk;
    mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), (unsigned long)k);
    mpz_class half = (qk - 1) / 2;
    while (!stack.empty()) {
      FqPoly g = stack.back();
      stack.pop_back();
      if (poly_deg(g) == (i64)k) {
        out.push_back(poly_monic(g));
        continue;
      }
      for (int tries = 0; tries < 400; ++tries) {
        FqPoly a = rnd.next_poly((u64)poly_deg(g) - 1);
        if (a.empty()) continue;
        FqPoly h2 = poly_powmod(a, half, g);
        if (h2.empty()) continue;
        h2[0] -= ctx->one();
        poly_trim(h2);
        FqPoly d1 = poly_gcd(g, h2);
        if (poly_deg(d1) > 0 && poly_deg(d1) < poly_deg(g)) {
          stack.push_back(d1);
          stack.push_back(poly_divmod(g, d1).first);
          break;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// context construction

inline bool poly_is_irreducible(const FqPoly& f) {
  auto ctx = f[0].ctx;
  u64 d = (u64)poly_deg(f);
  if (d == 0) return false;
  FqPoly x = poly_from(ctx, {0, 1});
  mpz_class q = ctx->order();
  mpz_class qd;
  mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), (unsigned long)d);
  if (poly_deg(poly_sub(poly_powmod(x, qd, f), x)) >= 0) return false;
  for (auto [r, e] : factor_u64(d)) {
    mpz_class qk;
    mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), (unsigned long)(d / r));
    FqPoly g = poly_gcd(f, poly_sub(poly_powmod(x, qk, f), x));
    if (poly_deg(g) != 0) return false;
  }
  return true;
}

inline FqCtxPtr FqCtx::prime_field(u64 N) {
  auto ctx = std::make_shared<FqCtx>();
  ctx->N = N;
  ctx->d = 1;
  ctx->modpoly = {0, 1};
  return ctx;
}

inline FqCtxPtr FqCtx::make(u64 N, u64 d) {
  if (d == 1) return prime_field(N);
  auto ctx = std::make_shared<FqCtx>();
  ctx->N = N;
  ctx->d = d;
  if (d == 2) {
    // x^2 - r, r the smallest quadratic non-residue
    for (u64 r = 2; r < N; ++r) {
      if (powmod(r, (N - 1) / 2, N) == N - 1) {
        ctx->modpoly = {N - r, 0, 1};
        return ctx;
      }
    }
    throw std::runtime_error("no non-residue found");
  }
  // search x^d + c_{d-1} x^{d-1} + ... + c_0, counting upward in base N
  auto base = prime_field(N);
  for (u64 counter = 1;; ++counter) {
    std::vector<u64> cs(d + 1, 0);
    cs[d] = 1;
    u64 t = counter;
    for (u64 i = 0; i < d && t; ++i) {
      cs[i] = t % N;
      t /= N;
    }
    FqPoly f;
    for (u64 i = 0; i <= d; ++i) f.push_back(base->from_int((i64)cs[i]));
    if (poly_is_irreducible(f)) {
      ctx->modpoly = cs;
      return ctx;
    }
    if (counter > 2000000) throw std::runtime_error("irreducible search exhausted");
  }
}

inline Fq Fq::inv() const {
  assert(ctx && !is_zero());
  if (ctx->d == 1) return ctx->make_elt({invmod(c[0], ctx->N)});
  // extended Euclid in F_N[x] against the modulus, done in the prime field
  auto base = FqCtx::prime_field(ctx->N);
  FqPoly a, m;
  for (u64 x : c) a.push_back(base->from_int((i64)x));
  poly_trim(a);
  for (u64 x : ctx->modpoly) m.push_back(base->from_int((i64)x));
  // invariants: a = s * orig_a mod m
  FqPoly r0 = m, r1 = a, s0 = {}, s1 = {base->one()};
  while (poly_deg(r1) > 0) {
    auto [q, r2] = poly_divmod(r0, r1);
    FqPoly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  assert(!r1.empty());
  FqPoly res = poly_scale(s1, r1[0].inv());
  std::vector<u64> out(ctx->d, 0);
  for (size_t i = 0; i < res.size(); ++i) out[i] = res[i].c[0];
  return ctx->make_elt(std::move(out));
}

// square root in F_{N^d} by Tonelli-Shanks; nullopt if a is a non-square
inline std::optional<Fq> fq_sqrt(const Fq& a) {
  auto ctx = a.ctx;
  assert(ctx);
  if (a.is_zero()) return a;
  mpz_class q = ctx->order();
  mpz_class half = (q - 1) / 2;
  if (a.pow(half) != ctx->one()) return std::nullopt;
  mpz_class s = q - 1;
  unsigned long r = 0;
  while (mpz_even_p(s.get_mpz_t())) {
    s /= 2;
    ++r;
  }
  // find a non-square
  FqRand rnd(ctx, 0x7007badull);
  Fq z;
  for (int i = 0; i < 10000; ++i) {
    z = rnd.next();
    if (!z.is_zero() && z.pow(half) != ctx->one()) break;
  }
  Fq c = z.pow(s);
  Fq x = a.pow((s + 1) / 2);
  Fq t = a.pow(s);
  unsigned long m = r;
  while (t != ctx->one()) {
    Fq tt = t;
    unsigned long i = 0;
    while (tt != ctx->one()) {
      tt *= tt;
      ++i;
      if (i == m) return std::nullopt;
    }
    Fq b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b *= b;
    x *= b;
    c = b * b;
    t *= c;
    m = i;
  }
  return x;
}

// ---------------------------------------------------------------------------
// embedding of a quadratic field F_{N^2} = F_N(sqrt(r)) into F_{N^{2k}}

struct FqEmbed {
  FqCtxPtr small, big;
  Fq root;  // image of sqrt(r) in the big field

  static FqEmbed make(const FqCtxPtr& small, const FqCtxPtr& big) {
    assert(small->d == 2 && big->d % 2 == 0 && small->N == big->N);
    // small modulus is x^2 + m1 x + m0; solve in big field
    u64 N = small->N;
    Fq m0 = big->from_int((i64)small->modpoly[0]);
    Fq m1 = big->from_int((i64)small->modpoly[1]);
    Fq disc = m1 * m1 - big->from_int(4) * m0;
    auto sq = fq_sqrt(disc);
    if (!sq) throw std::runtime_error("embedding root not found");
    Fq inv2 = big->from_int(2).inv();
    Fq root = (*sq - m1) * inv2;
    // root is image of the small field generator x (a root of the modulus)
    (void)N;
    return FqEmbed{small, big, root};
  }

  Fq up(const Fq& x) const {
    if (x.ctx && x.ctx->d == big->d) return x;  // already up
    assert(!x.ctx || x.ctx->d == 2);
    Fq r = big->from_int((i64)(x.c.size() > 0 ? (i64)x.c[0] : 0));
    if (x.c.size() > 1 && x.c[1]) r += big->from_int((i64)x.c[1]) * root;
    return r;
  }

  // write z = c0 + c1 * root with c0, c1 in F_N; nullopt if z is not in the
  // image (i.e. not fixed by the N^2-Frobenius or outside the plane)
  std::optional<Fq> down(const Fq& z) const {
    u64 N = big->N, D = big->d;
    // solve the D x 2 linear system over F_N given by coordinates of 1, root
    std::vector<u64> col0(D, 0), col1 = root.c;
    col0[0] = 1;
    // Gaussian elimination on [col0 col1 | z]
    std::vector<std::array<u64, 3>> rows(D);
    for (u64 i = 0; i < D; ++i) rows[i] = {col0[i], i < col1.size() ? col1[i] : 0, i < z.c.size() ? z.c[i] : 0};
    u64 c0 = 0, c1 = 0;
    // find two independent rows
    int r0 = -1, r1 = -1;
    for (u64 i = 0; i < D; ++i) {
      if (rows[i][0] || rows[i][1]) {
        if (r0 < 0) r0 = (int)i;
        else {
          // check independence
          u64 det = submod(mulmod(rows[r0][0], rows[i][1], N), mulmod(rows[r0][1], rows[i][0], N), N);
          if (det) { r1 = (int)i; break; }
        }
      }
    }
    if (r0 < 0 || r1 < 0) return std::nullopt;
    u64 a = rows[r0][0], b = rows[r0][1], e = rows[r0][2];
    u64 cc = rows[r1][0], dd = rows[r1][1], f = rows[r1][2];
    u64 det = submod(mulmod(a, dd, N), mulmod(b, cc, N), N);
    u64 dinv = invmod(det, N);
    c0 = mulmod(dinv, submod(mulmod(e, dd, N), mulmod(b, f, N), N), N);
    c1 = mulmod(dinv, submod(mulmod(a, f, N), mulmod(e, cc, N), N), N);
    // verify all coordinates
    for (u64 i = 0; i < D; ++i) {
      u64 lhs = addmod(mulmod(rows[i][0], c0, N), mulmod(rows[i][1], c1, N), N);
      if (lhs != rows[i][2]) return std::nullopt;
    }
    return small->make_elt({c0, c1});
  }
};

}  // namespace eistark
