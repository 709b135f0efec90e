#pragma once
// Truncated q-expansions over a commutative coefficient ring, with optional
// exponent denominator (terms q^{n/den}).  A series knows the lowest stored
// exponent (which may be negative, e.g. for j) and the largest exponent it is
// valid to, so identity checks can never silently pass at lower precision.

#include <functional>
#include <numeric>
#include <vector>

#include "cyc.hpp"
#include "intutil.hpp"
#include "zp.hpp"

namespace eistark {

inline mpq_class mul_i(const mpq_class& a, i64 k) { return a * mpq_from(k); }
inline Zp mul_i(const Zp& a, i64 k) { return a.mul_int(k); }
inline Cyc mul_i(const Cyc& a, i64 k) { return a.mul_int(k); }

inline mpq_class inv_r(const mpq_class& a) { return 1 / a; }
inline Zp inv_r(const Zp& a) { return a.inv(); }
inline Cyc inv_r(const Cyc& a);  // defined in linalg.hpp

template <class R>
struct QExp {
  i64 v = 0;      // lowest stored exponent index
  i64 bound = -1; // largest valid exponent index (inclusive)
  i64 den = 1;    // term n means q^{n/den}
  std::vector<R> a;

  QExp() = default;
  QExp(i64 v_, i64 bound_, i64 den_ = 1) : v(v_), bound(bound_), den(den_) {
    if (bound >= v) a.assign((size_t)(bound - v + 1), R());
  }

  R at(i64 n) const {
    assert(n <= bound && "truncation-error: coefficient beyond bound");
    if (n < v) return R();
    return a[(size_t)(n - v)];
  }
  void set(i64 n, const R& x) {
    assert(n >= v && n <= bound);
    a[(size_t)(n - v)] = x;
  }

  i64 valuation() const {  // first nonzero index; bound+1 if zero series
    for (i64 n = v; n <= bound; ++n)
      if (!(at(n) == R())) return n;
    return bound + 1;
  }

  QExp truncated(i64 newbound) const {
    assert(newbound <= bound);
    QExp r(v, newbound, den);
    for (i64 n = v; n <= newbound; ++n) r.set(n, at(n));
    return r;
  }

  // reinterpret with a larger exponent denominator (den -> den*k)
  QExp with_den(i64 newden) const {
    assert(newden % den == 0);
    i64 k = newden / den;
    QExp r(v * k, bound * k, newden);
    for (i64 n = v; n <= bound; ++n) r.set(n * k, at(n));
    return r;
  }

  // substitute q -> q^k (same den)
  QExp subst_pow(i64 k) const {
    QExp r(v * k, bound * k, den);
    for (i64 n = v; n <= bound; ++n) r.set(n * k, at(n));
    return r;
  }

  friend QExp operator+(const QExp& f, const QExp& g) {
    i64 dn = std::lcm(f.den, g.den);
    if (dn != f.den) return f.with_den(dn) + g.with_den(dn);
    if (dn != g.den) return f + g.with_den(dn);
    QExp r(std::min(f.v, g.v), std::min(f.bound, g.bound), dn);
    for (i64 n = r.v; n <= r.bound; ++n) r.set(n, f.atc(n) + g.atc(n));
    return r;
  }
  R atc(i64 n) const { return n < v ? R() : (n > bound ? R() : at(n)); }

  QExp operator-() const {
    QExp r = *this;
    for (auto& x : r.a) x = -x;
    return r;
  }
  friend QExp operator-(const QExp& f, const QExp& g) { return f + (-g); }

  friend QExp operator*(const QExp& f, const QExp& g) {
    i64 dn = std::lcm(f.den, g.den);
    if (dn != f.den) return f.with_den(dn) * g.with_den(dn);
    if (dn != g.den) return f * g.with_den(dn);
    QExp r(f.v + g.v, std::min(f.bound + g.v, g.bound + f.v), dn);
    for (i64 i = f.v; i <= f.bound; ++i) {
      if (f.at(i) == R()) continue;
      for (i64 j = g.v; j <= g.bound && i + j <= r.bound; ++j) {
        if (g.at(j) == R()) continue;
        r.set(i + j, r.at(i + j) + f.at(i) * g.at(j));
      }
    }
    return r;
  }

  QExp scaled(const R& s) const {
    QExp r = *this;
    for (auto& x : r.a) x = x * s;
    return r;
  }
  QExp scaled_int(i64 k) const {
    QExp r = *this;
    for (auto& x : r.a) x = mul_i(x, k);
    return r;
  }

  bool is_zero_to_bound() const {
    for (i64 n = v; n <= bound; ++n)
      if (!(at(n) == R())) return false;
    return true;
  }

  // equality of coefficients for all exponent indices <= B (same den units)
  friend bool eq_to(const QExp& f, const QExp& g, i64 B) {
    assert(f.den == g.den);
    assert(f.bound >= B && g.bound >= B);
    for (i64 n = std::min(f.v, g.v); n <= B; ++n)
      if (!(f.atc(n) == g.atc(n))) return false;
    return true;
  }
};

// multiplicative inverse of f (leading coefficient a unit), to the natural
// bound b - 2*valuation
template <class R>
QExp<R> qexp_inv(const QExp<R>& f) {
  i64 v0 = f.valuation();
  assert(v0 <= f.bound && "cannot invert zero series");
  R lead = f.at(v0);
  R li = inv_r(lead);
  i64 outb = f.bound - 2 * v0;
  QExp<R> g(-v0, outb, f.den);
  g.set(-v0, li);
  for (i64 n = -v0 + 1; n <= outb; ++n) {
    // coefficient of q^{n+v0... }: sum_{k} f_{v0+k} g_{n-k} = 0
    R s;
    for (i64 k = 1; k <= n + v0; ++k) {
      i64 fi = v0 + k, gi = n - k;
      if (fi > f.bound || gi < -v0) break;
      s = s + f.at(fi) * g.at(gi);
    }
    g.set(n, -(s * li));
  }
  return g;
}

template <class R>
QExp<R> qexp_one(i64 bound, i64 den = 1) {
  QExp<R> r(0, bound, den);
  return r;  // caller sets constant term; see qexp_const
}

template <class R>
QExp<R> qexp_const(const R& c, i64 bound, i64 den = 1) {
  QExp<R> r(0, bound, den);
  r.set(0, c);
  return r;
}

template <class R>
QExp<R> qexp_pow(QExp<R> base, u64 e, const R& one) {
  // square-and-multiply; operator* keeps the tightest valid bound itself
  QExp<R> r = qexp_const(one, base.bound - base.v, base.den);
  bool started = false;
  QExp<R> acc;
  while (e) {
    if (e & 1) {
      acc = started ? acc * base : base;
      started = true;
    }
    e >>= 1;
    if (e) base = base * base;
  }
  if (!started) return r;
  return acc;
}

template <class R, class Conv>
QExp<R> qexp_convert(const QExp<mpq_class>& f, Conv conv) {
  QExp<R> r(f.v, f.bound, f.den);
  for (i64 n = f.v; n <= f.bound; ++n) r.set(n, conv(f.at(n)));
  return r;
}

}  // namespace eistark
