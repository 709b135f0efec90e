#pragma once
// Z/m arithmetic for m = p^t (p > 3).  Values carry their modulus; a
// default-constructed value is an "unattached zero" (m == 0) that adopts the
// modulus of whatever it is combined with, so generic series code can use
// default construction for zero.

#include <cassert>
#include <string>

#include "intutil.hpp"

namespace eistark {

struct Zp {
  u64 v = 0;
  u64 m = 0;  // 0 = unattached zero

  Zp() = default;
  Zp(u64 value, u64 mod) : v(mod ? value % mod : 0), m(mod) { assert(mod || value == 0); }

  static Zp of(i64 x, u64 mod) { return Zp((u64)smod(x, (i64)mod), mod); }

  bool is_zero() const { return v == 0; }

  friend u64 join(const Zp& a, const Zp& b) {
    if (a.m && b.m) { assert(a.m == b.m); return a.m; }
    return a.m ? a.m : b.m;
  }

  friend Zp operator+(const Zp& a, const Zp& b) {
    u64 m = join(a, b);
    if (!m) return Zp();
    return Zp(addmod(a.v, b.v, m), m);
  }
  friend Zp operator-(const Zp& a, const Zp& b) {
    u64 m = join(a, b);
    if (!m) return Zp();
    return Zp(submod(a.v, b.v, m), m);
  }
  friend Zp operator*(const Zp& a, const Zp& b) {
    u64 m = join(a, b);
    if (!m) return Zp();
    return Zp(mulmod(a.v, b.v, m), m);
  }
  Zp operator-() const { return m ? Zp(m - v, m) : Zp(); }
  Zp& operator+=(const Zp& o) { *this = *this + o; return *this; }
  Zp& operator-=(const Zp& o) { *this = *this - o; return *this; }
  Zp& operator*=(const Zp& o) { *this = *this * o; return *this; }

  friend bool operator==(const Zp& a, const Zp& b) {
    if (a.m && b.m) assert(a.m == b.m);
    return a.v == b.v;
  }
  friend bool operator!=(const Zp& a, const Zp& b) { return !(a == b); }

  Zp mul_int(i64 k) const { return m ? Zp(mulmod(v, (u64)smod(k, (i64)m), m), m) : Zp(); }

  Zp inv() const {
    assert(m);
    return Zp(invmod(v, m), m);
  }
  std::optional<Zp> try_inv() const {
    if (!m) return std::nullopt;
    auto r = try_invmod(v, m);
    if (!r) return std::nullopt;
    return Zp(*r, m);
  }
  Zp pow(u64 e) const { assert(m); return Zp(powmod(v, e, m), m); }

  // signed representative in (-m/2, m/2]
  i64 lift_signed() const {
    if (!m) return 0;
    return v * 2 > m ? (i64)v - (i64)m : (i64)v;
  }

  std::string str() const { return std::to_string(v); }
};

// x = num/den reduced mod m (den must be a unit)
inline Zp zp_of_mpq(const mpq_class& x, u64 m) {
  u64 n = mpz_to_u64_mod(x.get_num(), m);
  u64 d = mpz_to_u64_mod(x.get_den(), m);
  return Zp(mulmod(n, invmod(d, m), m), m);
}

}  // namespace eistark
