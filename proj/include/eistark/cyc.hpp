#pragma once
// (Z/p^t)[X]/Phi_n(X): the value ring for character-weighted identities.
// Elements are kept reduced mod Phi_n with exactly phi(n) stored coefficients.
// Phi_n may factor mod p; no splitting is attempted, equality is equality of
// canonical residues.  A default-constructed value is an unattached zero.

#include <map>
#include <mutex>
#include <vector>

#include "zp.hpp"

namespace eistark {

// integer coefficients of the n-th cyclotomic polynomial, low degree first
inline const std::vector<i64>& cyclotomic_poly(u64 n) {
  static std::map<u64, std::vector<i64>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by prod_{d|n, d<n} Phi_d, by recursive exact division
  std::vector<i64> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (u64 d = 1; d < n; ++d) {
    if (n % d) continue;
    const std::vector<i64>& phid = [&]() -> const std::vector<i64>& {
      // recursion via the cache (mutex is recursive-unsafe; compute inline)
      auto jt = cache.find(d);
      if (jt != cache.end()) return jt->second;
      // compute Phi_d the same way, iteratively from small divisors (all cached
      // by the time we need them because we loop d ascending)
      std::vector<i64> nd(d + 1, 0);
      nd[0] = -1;
      nd[d] = 1;
      for (u64 e = 1; e < d; ++e) {
        if (d % e) continue;
        const auto& pe = cache.at(e);
        // exact polynomial division nd /= pe
        std::vector<i64> q(nd.size() - pe.size() + 1, 0);
        std::vector<i64> r = nd;
        for (i64 i = (i64)q.size() - 1; i >= 0; --i) {
          q[i] = r[i + pe.size() - 1];  // pe is monic
          for (size_t j = 0; j < pe.size(); ++j) r[i + j] -= q[i] * pe[j];
        }
        nd = q;
      }
      return cache.emplace(d, std::move(nd)).first->second;
    }();
    std::vector<i64> q(num.size() - phid.size() + 1, 0);
    std::vector<i64> r = num;
    for (i64 i = (i64)q.size() - 1; i >= 0; --i) {
      q[i] = r[i + phid.size() - 1];
      for (size_t j = 0; j < phid.size(); ++j) r[i + j] -= q[i] * phid[j];
    }
    num = q;
  }
  return cache.emplace(n, std::move(num)).first->second;
}

inline u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto [p, e] : factor_u64(n)) r = r / p * (p - 1);
  return r;
}

struct Cyc {
  u64 n = 0;               // cyclotomic order; 0 = unattached zero
  u64 m = 0;               // modulus p^t
  std::vector<u64> c;      // phi(n) coefficients mod m, c[i] coeff of zeta^i

  Cyc() = default;
  Cyc(u64 order, u64 mod) : n(order), m(mod), c(euler_phi(order), 0) {}

  static Cyc from_zp(const Zp& x, u64 order) {
    if (!x.m) return Cyc();
    Cyc r(order, x.m);
    r.c[0] = x.v;
    return r;
  }
  static Cyc of(i64 x, u64 order, u64 mod) { return from_zp(Zp::of(x, mod), order); }

  // zeta^k, reduced
  static Cyc zeta_pow(u64 order, u64 mod, u64 k) {
    k %= order;
    std::vector<u64> poly(k + 1, 0);
    poly[k] = 1;
    Cyc r(order, mod);
    r.assign_reduced(poly);
    return r;
  }

  bool is_zero() const {
    for (u64 x : c)
      if (x) return false;
    return true;
  }

  void assign_reduced(std::vector<u64> poly) {
    const auto& phi = cyclotomic_poly(n);
    size_t deg = phi.size() - 1;  // = phi(n)
    // reduce poly mod Phi_n (monic), coefficients mod m
    for (i64 i = (i64)poly.size() - 1; i >= (i64)deg; --i) {
      u64 lead = poly[i] % m;
      if (!lead) continue;
      poly[i] = 0;
      for (size_t j = 0; j < deg; ++j) {
        u64 t = mulmod(lead, (u64)smod(phi[j], (i64)m), m);
        poly[i - deg + j] = submod(poly[i - deg + j] % m, t, m);
      }
    }
    c.assign(deg, 0);
    for (size_t i = 0; i < deg && i < poly.size(); ++i) c[i] = poly[i] % m;
  }

  friend void join2(const Cyc& a, const Cyc& b, u64& n, u64& m) {
    n = a.n ? a.n : b.n;
    m = a.m ? a.m : b.m;
    if (a.n && b.n) assert(a.n == b.n);
    if (a.m && b.m) assert(a.m == b.m);
  }

  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    u64 n, m;
    join2(a, b, n, m);
    if (!n) return Cyc();
    Cyc r(n, m);
    for (size_t i = 0; i < r.c.size(); ++i)
      r.c[i] = addmod(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0, m);
    return r;
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }
  Cyc operator-() const {
    Cyc r = *this;
    for (auto& x : r.c) x = x ? m - x : 0;
    return r;
  }
  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    u64 n, m;
    join2(a, b, n, m);
    if (!n) return Cyc();
    if (a.n == 0 || b.n == 0) return Cyc();  // unattached zero times anything
    std::vector<u64> prod(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (!a.c[i]) continue;
      for (size_t j = 0; j < b.c.size(); ++j)
        prod[i + j] = addmod(prod[i + j], mulmod(a.c[i], b.c[j], m), m);
    }
    Cyc r(n, m);
    r.assign_reduced(prod);
    return r;
  }
  Cyc& operator+=(const Cyc& o) { *this = *this + o; return *this; }
  Cyc& operator-=(const Cyc& o) { *this = *this - o; return *this; }
  Cyc& operator*=(const Cyc& o) { *this = *this * o; return *this; }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    if (a.n == 0) return b.is_zero();
    if (b.n == 0) return a.is_zero();
    assert(a.n == b.n && a.m == b.m);
    return a.c == b.c;
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  Cyc mul_int(i64 k) const {
    if (!n) return Cyc();
    u64 kk = (u64)smod(k, (i64)m);
    Cyc r = *this;
    for (auto& x : r.c) x = mulmod(x, kk, m);
    return r;
  }
  Cyc mul_zp(const Zp& z) const { return mul_int((i64)z.v); }

  Cyc pow(u64 e) const {
    assert(n);
    Cyc r = Cyc::of(1, n, m), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  // substitute zeta -> 1 (specialization to Z/p^t)
  Zp at_one() const {
    if (!n) return Zp();
    u64 s = 0;
    for (u64 x : c) s = addmod(s, x, m);
    return Zp(s, m);
  }

  std::string str() const {
    if (!n) return "0";
    std::string s = "[";
    for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]z" + std::to_string(n);
  }
};

}  // namespace eistark
