#pragma once
// The surjective discrete logarithm log: (Z/N)^x -> Z/p^t (p > 3, p^t || N-1)
// and its unique extension to F_{N^2}^x via log(x) = (N+1)^{-1} log(Norm(x)).
// Computed by baby-step/giant-step on the p^t-part: the index of
// x^((N^2-1)/p^t) among powers of g0^((N^2-1)/p^t) for a generator g0.

#include <map>

#include "fq.hpp"
#include "zp.hpp"

namespace eistark {

struct DlogTable {
  u64 N = 0, p = 0, t = 1, pt = 1;
  FqCtxPtr f2;      // F_{N^2}
  Fq g0;            // generator of F_{N^2}^x
  Fq h;             // g0^((N^2-1)/p^t), order p^t
  u64 scale = 1;    // anchor normalization: log = scale * raw index
  u64 giant_n = 0;  // BSGS block size
  std::map<std::vector<u64>, u64> baby;  // h^j -> j for j < giant_n
  Fq giant_step;                          // h^{-giant_n}

  u64 raw_index(const Fq& x) const {
    // index of y = x^((N^2-1)/p^t) in <h>
    u64 e = (N * N - 1) / pt;
    Fq y = x.pow(e);
    Fq cur = y;
    for (u64 block = 0; block * giant_n < pt; ++block) {
      auto it = baby.find(cur.c);
      if (it != baby.end()) return (block * giant_n + it->second) % pt;
      cur *= giant_step;
    }
    throw std::runtime_error("dlog: BSGS failed (element outside the p-part?)");
  }

  Zp log_fq(const Fq& x) const {
    if (x.is_zero()) throw std::domain_error("domain-error: dlog of zero");
    Fq xe = x;
    if (x.ctx->d == 1) xe = f2->make_elt({x.c[0]});
    assert(xe.ctx->d == 2 && xe.ctx->N == N);
    return Zp(mulmod(raw_index(xe), scale, pt), pt);
  }

  Zp log_int(i64 x) const {
    u64 r = (u64)smod(x, (i64)N);
    if (r == 0) throw std::domain_error("domain-error: dlog of zero");
    return log_fq(f2->make_elt({r}));
  }

  Zp zero() const { return Zp(0, pt); }
};

inline u64 smallest_primitive_root(u64 N) {
  auto fs = factor_u64(N - 1);
  for (u64 g = 2; g < N; ++g) {
    bool ok = true;
    for (auto [q, e] : fs)
      if (powmod(g, (N - 1) / q, N) == 1) { ok = false; break; }
    if (ok) return g;
  }
  throw std::runtime_error("no primitive root");
}

// anchor: optional (residue mod N, assigned log value); default: smallest
// primitive root of F_N maps to 1
inline DlogTable build_dlog(u64 N, u64 p, u64 t,
                            std::optional<std::pair<u64, u64>> anchor = std::nullopt) {
  if (p <= 3 || !is_prime_u64(p) || !is_prime_u64(N))
    throw std::runtime_error("invalid-instance: need primes N and p > 3");
  u64 pt = 1;
  for (u64 i = 0; i < t; ++i) pt *= p;
  if ((N - 1) % pt != 0 || ((N - 1) / pt) % p == 0)
    throw std::runtime_error("invalid-instance: need p^t || N-1");

  DlogTable T;
  T.N = N;
  T.p = p;
  T.t = t;
  T.pt = pt;
  T.f2 = FqCtx::make(N, 2);

  // find a generator of F_{N^2}^x
  u64 order = N * N - 1;
  auto fs = factor_u64(order);
  FqRand rnd(T.f2, 0x1234abcdull);
  for (int tries = 0;; ++tries) {
    if (tries > 100000) throw std::runtime_error("generator search failed");
    Fq g = rnd.next();
    if (g.is_zero()) continue;
    bool ok = true;
    for (auto [q, e] : fs)
      if (g.pow(order / q) == T.f2->one()) { ok = false; break; }
    if (ok) { T.g0 = g; break; }
  }
  T.h = T.g0.pow(order / pt);

  // BSGS tables over the cyclic group <h> of order p^t
  u64 gn = 1;
  while (gn * gn < pt) ++gn;
  T.giant_n = gn;
  Fq cur = T.f2->one();
  for (u64 j = 0; j < gn; ++j) {
    T.baby.emplace(cur.c, j);
    cur *= T.h;
  }
  T.giant_step = T.h.pow(pt - gn % pt);  // h^{-gn}

  // normalization
  u64 anchor_res = anchor ? anchor->first % N : smallest_primitive_root(N);
  u64 anchor_val = anchor ? anchor->second % pt : 1;
  if (anchor_res == 0) throw std::runtime_error("invalid-anchor: zero residue");
  u64 ra = T.raw_index(T.f2->make_elt({anchor_res}));
  auto inv = try_invmod(ra, pt);
  if (!inv || anchor_val % p == 0)
    throw std::runtime_error("invalid-anchor: anchor does not generate the p-part");
  T.scale = mulmod(*inv, anchor_val, pt);
  return T;
}

}  // namespace eistark
