#pragma once
// Standard modular series (Delta, E_k, j, level-N weight-2 Eisenstein, the
// weight N+1 Eisenstein mod N), Hecke operators on q-expansions, the higher
// Eisenstein series E' with its Mazur-Tate constant term, theta series from
// Gram matrices, and polynomial-in-j reconstruction.

#include <map>
#include <mutex>

#include "dlog.hpp"
#include "linalg.hpp"
#include "qexp.hpp"

namespace eistark {

inline const mpq_class& bernoulli(u64 k) {
  static std::vector<mpq_class> cache = {1};
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  while (cache.size() <= k) {
    u64 m = cache.size();
    // B_m from sum_{j=0}^{m} C(m+1, j) B_j = 0
    mpq_class acc = 0;
    mpz_class c = 1;  // C(m+1, j)
    for (u64 j = 0; j < m; ++j) {
      acc += mpq_class(c) * cache[j];
      c = c * (m + 1 - j) / (j + 1);
    }
    cache.push_back(-acc / mpq_class(m + 1));
  }
  return cache[k];
}

inline mpq_class sigma_k(u64 n, u64 k) {  // sum of d^k over d|n
  mpz_class s = 0;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    mpz_class dk, ek;
    mpz_ui_pow_ui(dk.get_mpz_t(), d, (unsigned long)k);
    s += dk;
    u64 e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(ek.get_mpz_t(), e, (unsigned long)k);
      s += ek;
    }
  }
  return mpq_class(s);
}

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, exact over Q
inline QExp<mpq_class> eisenstein_series(u64 k, i64 B) {
  QExp<mpq_class> f(0, B);
  f.set(0, 1);
  mpq_class c = mpq_class(-2) * mpq_class(k) / bernoulli(k);
  for (i64 n = 1; n <= B; ++n) f.set(n, c * sigma_k((u64)n, k - 1));
  return f;
}

inline QExp<mpq_class> delta_series(i64 B) {
  auto e4 = eisenstein_series(4, B);
  auto e6 = eisenstein_series(6, B);
  auto d = (qexp_pow(e4, 3, mpq_class(1)) - qexp_pow(e6, 2, mpq_class(1))).scaled(mpq_class(1, 1728));
  return d;
}

inline QExp<mpq_class> j_series(i64 B) {
  auto e4 = eisenstein_series(4, B + 2);
  auto d = delta_series(B + 2);
  auto j = qexp_pow(e4, 3, mpq_class(1)) * qexp_inv(d);
  return j.truncated(std::min(j.bound, B));
}

// sigma_1^{(N)}(n): sum of divisors prime to N
inline u64 sigma1_primeto(u64 n, u64 N) {
  u64 s = 0;
  for (u64 d = 1; d <= n; ++d)
    if (n % d == 0 && d % N != 0) s += d;
  return s;
}

// E_2^{(N)}: a_0 = (N-1)/24, a_n = sigma_1^{(N)}(n); over Z/p^t
inline QExp<Zp> e2N_series(u64 N, u64 pt, i64 B) {
  QExp<Zp> f(0, B);
  f.set(0, zp_of_mpq(mpq_class((long)(N - 1), 24), pt));
  for (i64 n = 1; n <= B; ++n) f.set(n, Zp(sigma1_primeto((u64)n, N) % pt, pt));
  return f;
}

// weight N+1 level 1 Eisenstein series reduced mod N, a_0 = 1
inline QExp<Zp> eN1_series_modN(u64 N, i64 B) {
  QExp<Zp> f(0, B);
  f.set(0, Zp(1, N));
  mpq_class c = mpq_class(-2) * mpq_class(N + 1) / bernoulli(N + 1);
  Zp cz = zp_of_mpq(c, N);
  for (i64 n = 1; n <= B; ++n) {
    // sigma_N(n) mod N: d^N = d for d prime to N, 0 otherwise... d^N mod N:
    // if N|d then 0, else d by Fermat
    u64 s = 0;
    for (u64 d = 1; d <= (u64)n; ++d)
      if ((u64)n % d == 0 && d % N != 0) s = (s + d) % N;
    f.set(n, cz.mul_int((i64)s));
  }
  return f;
}

// Hecke T_ell on a level-N weight-k expansion (ell != N), integer exponents
template <class R>
QExp<R> hecke_Tl(const QExp<R>& f, u64 N, u64 ell, u64 k = 2) {
  assert(f.den == 1 && ell != N);
  assert(f.v >= 0);
  i64 outB = f.bound / (i64)ell;
  QExp<R> r(0, outB);
  i64 lk = 1;
  for (u64 i = 0; i + 1 < k; ++i) lk *= (i64)ell;
  for (i64 n = 0; n <= outB; ++n) {
    R x = f.atc(n * (i64)ell);
    if (n % (i64)ell == 0) x = x + mul_i(f.atc(n / (i64)ell), lk);
    r.set(n, x);
  }
  return r;
}

template <class R>
QExp<R> hecke_UN(const QExp<R>& f, u64 N) {
  assert(f.den == 1 && f.v >= 0);
  i64 outB = f.bound / (i64)N;
  QExp<R> r(0, outB);
  for (i64 n = 0; n <= outB; ++n) r.set(n, f.atc(n * (i64)N));
  return r;
}

inline i64 sturm_bound(u64 N) { return (i64)((N + 1 + 5) / 6) + 2; }

// Mazur-Tate / Merel constant M = sum_{j=1}^{N-1} (theta_j / 2) log(j),
// theta_j = (N/2) B_2(j/N)
inline Zp merel_constant(u64 N, const DlogTable& dlog) {
  Zp s = dlog.zero();
  for (u64 j = 1; j < N; ++j) {
    mpq_class half_theta = mpq_class((long)N, 4) *
        (mpq_class((long)(j * j), (long)(N * N)) - mpq_class((long)j, (long)N) + mpq_class(1, 6));
    s += zp_of_mpq(half_theta, dlog.pt) * dlog.log_int((i64)j);
  }
  return s;
}

// E' with a_0 = M and a_n = sum_{d | n'} log(d^2/n') d, n' the prime-to-N
// part of n.  The tail sign is pinned by (T_ell - (ell+1)) E' =
// (ell-1) log(ell) E_2^{(N)}: comparing first coefficients forces
// a_ell = (ell-1) log(ell).
inline QExp<Zp> eprime_series(u64 N, const DlogTable& dlog, i64 B) {
  QExp<Zp> f(0, B);
  f.set(0, merel_constant(N, dlog));
  for (i64 n = 1; n <= B; ++n) {
    u64 np = (u64)n;
    while (np % N == 0) np /= N;
    Zp s = dlog.zero();
    Zp logn = dlog.log_int((i64)(np % N));
    for (u64 d = 1; d <= np; ++d) {
      if (np % d) continue;
      Zp logd = dlog.log_int((i64)(d % N));
      s += (logd.mul_int(2) - logn).mul_int((i64)d);
    }
    f.set(n, s);
  }
  return f;
}

// exact theta series of a positive definite rational Gram matrix: coefficient
// of q^{m/den_out} counts v with Q(v) = vT A v satisfying Q(v)/scale = m/den_out
inline QExp<mpq_class> theta_from_gram(const std::vector<std::vector<mpq_class>>& A,
                                       const mpq_class& scale, i64 B, i64 den_out = 1) {
  size_t r = A.size();
  QExp<mpq_class> th(0, B, den_out);
  if (r == 0) {
    th.set(0, 1);
    return th;
  }
  // LDL^T decomposition (A positive definite)
  std::vector<std::vector<mpq_class>> L(r, std::vector<mpq_class>(r, 0));
  std::vector<mpq_class> Dg(r);
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      mpq_class s = A[i][j];
      for (size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k] * Dg[k];
      if (i == j) {
        Dg[i] = s;
        if (s <= 0) throw std::domain_error("theta_from_gram: not positive definite");
        L[i][i] = 1;
      } else {
        L[i][j] = s / Dg[j];
      }
    }
  }
  // Q(v) = sum_i Dg[i] (v_i + sum_{j>i} L[j][i] v_j)^2
  mpq_class bound = scale * mpq_class((long)B) / mpq_class((long)den_out);
  std::vector<i64> counts((size_t)(B + 1), 0);
  std::vector<mpq_class> vv(r, 0);
  std::function<void(size_t, mpq_class)> rec = [&](size_t lvl, mpq_class rem) {
    // enumerate v_{lvl-1}; rem = remaining budget
    size_t i = lvl - 1;
    mpq_class center = 0;
    for (size_t j = i + 1; j < r; ++j) center += L[j][i] * vv[j];
    mpq_class rad2 = rem / Dg[i];
    mpz_class lo = ceil_q(mpq_class(-center) - mpq_class(floor_sqrt(rad2)) - 1);
    mpz_class hi = floor_q(mpq_class(-center) + mpq_class(floor_sqrt(rad2)) + 1);
    for (mpz_class x = lo; x <= hi; ++x) {
      mpq_class xi(x);
      mpq_class term = Dg[i] * (xi + center) * (xi + center);
      if (term > rem) continue;
      vv[i] = xi;
      if (i == 0) {
        // total Q(v) = bound budget consumed = (bound - remaining-at-top) ...
        // recompute exactly
        mpq_class Q = 0;
        for (size_t a2 = 0; a2 < r; ++a2) {
          mpq_class c2 = vv[a2];
          for (size_t b2 = a2 + 1; b2 < r; ++b2) c2 += L[b2][a2] * vv[b2];
          Q += Dg[a2] * c2 * c2;
        }
        mpq_class idx = Q / scale * mpq_class((long)den_out);
        if (idx.get_den() != 1) throw std::domain_error("theta_from_gram: non-integral exponent");
        i64 n = (i64)mpz_get_si(idx.get_num().get_mpz_t());
        if (n <= B) counts[(size_t)n]++;
      } else {
        rec(lvl - 1, rem - term);
      }
    }
  };
  rec(r, bound);
  for (i64 n = 0; n <= B; ++n) th.set(n, mpq_class(counts[(size_t)n]));
  return th;
}

// write f (weight 0, level 1, pole order <= d) as P(j); returns coefficients
// of P, degree low to high.  Works over any ring because powers of j have
// unit leading coefficients.  Throws if f is not polynomial in j to its bound.
template <class R>
std::vector<R> poly_in_j(QExp<R> f, i64 d, const std::vector<QExp<R>>& jpowers) {
  // jpowers[k] = j^k with v = -k, bound >= f.bound
  assert((i64)jpowers.size() >= d + 1);
  assert(f.v >= -d);
  i64 fb = f.bound;
  for (i64 k = 1; k <= d; ++k) fb = std::min(fb, jpowers[(size_t)k].bound);
  if (fb < f.bound) f = f.truncated(fb);
  assert(fb >= d + 2 && "insufficient precision to certify polynomial in j");
  std::vector<R> coeffs((size_t)d + 1);
  for (i64 k = d; k >= 1; --k) {
    R c = f.atc(-k);
    coeffs[(size_t)k] = c;
    if (!(c == R())) f = f - jpowers[(size_t)k].truncated(f.bound).scaled(c);
  }
  coeffs[0] = f.atc(0);
  f = f - qexp_const(coeffs[0], f.bound);
  if (!f.is_zero_to_bound()) throw std::domain_error("not-polynomial-in-j");
  return coeffs;
}

template <class R>
std::vector<QExp<R>> j_powers(const QExp<R>& j, i64 d, const R& one) {
  std::vector<QExp<R>> out;
  out.push_back(qexp_const(one, j.bound));
  for (i64 k = 1; k <= d; ++k) out.push_back(out.back() * j);
  return out;
}

}  // namespace eistark
