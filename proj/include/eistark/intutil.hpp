#pragma once
// Small integer utilities shared by every module: modular arithmetic on
// machine words, factorization at desk scale, and exact square roots of
// rationals (floor), built on GMP for anything that can overflow.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace eistark {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
  a %= m; b %= m;
  u64 s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return addmod(a, m - b % m, m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) { u64 t = a % b; a = b; b = t; }
  return a;
}

// extended gcd on signed values: g = ax + by
inline i64 egcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) { x = 1; y = 0; return a; }
  i64 x1, y1;
  i64 g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline std::optional<u64> try_invmod(u64 a, u64 m) {
  i64 x, y;
  i64 g = egcd((i64)(a % m), (i64)m, x, y);
  if (g != 1 && g != -1) return std::nullopt;
  i64 r = x % (i64)m;
  if (g == -1) r = -r;
  if (r < 0) r += (i64)m;
  return (u64)r;
}

inline u64 invmod(u64 a, u64 m) {
  auto r = try_invmod(a, m);
  if (!r) throw std::domain_error("invmod: not a unit");
  return *r;
}

inline i64 smod(i64 a, i64 m) {  // representative in [0, m)
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

// trial-division factorization; fine for the desk-scale inputs here (< 2^50)
inline std::vector<std::pair<u64, int>> factor_u64(u64 n) {
  std::vector<std::pair<u64, int>> f;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      f.push_back({p, e});
    }
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

// p-adic valuation of a (a != 0)
inline int val_p(u64 a, u64 p) {
  int v = 0;
  while (a % p == 0) { a /= p; ++v; }
  return v;
}

// floor(sqrt(x)) for a nonnegative rational x
inline mpz_class floor_sqrt(const mpq_class& x) {
  if (x < 0) throw std::domain_error("floor_sqrt: negative");
  mpz_class num = x.get_num(), den = x.get_den();
  mpz_class t = sqrt(num * den) / den;  // close; fix up below
  while ((t + 1) * (t + 1) * den <= num) ++t;
  while (t * t * den > num) --t;
  return t;
}

// ceil(sqrt(x)) for a nonnegative rational x
inline mpz_class ceil_sqrt(const mpq_class& x) {
  mpz_class t = floor_sqrt(x);
  if (mpq_class(t * t) < x) ++t;
  return t;
}

inline mpz_class floor_q(const mpq_class& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

inline mpz_class ceil_q(const mpq_class& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

inline u64 mpz_to_u64_mod(const mpz_class& z, u64 m) {
  mpz_class mm(std::to_string(m));
  mpz_class v = z % mm;
  if (v < 0) v += mm;
  return (u64)mpz_get_ui(v.get_mpz_t());
}

inline mpq_class mpq_from(i64 num, i64 den = 1) {
  mpq_class q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  return q;
}

}  // namespace eistark
