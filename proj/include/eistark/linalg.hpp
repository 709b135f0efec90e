#pragma once
// Linear algebra over Z/p^t via Smith reduction: every element is p^e * unit,
// so choosing a minimal-valuation pivot lets each elimination step complete
// exactly.  Provides affine solving with an explicit kernel description, which
// is what the higher-Eisenstein functional computation needs (solution sets
// are cosets, and pairings must be checked for solution-independence).

#include <vector>

#include "cyc.hpp"
#include "zp.hpp"

namespace eistark {

struct ZpSolve {
  bool consistent = false;
  std::vector<u64> x;                   // one particular solution (size cols)
  std::vector<std::vector<u64>> kernel; // generators of the homogeneous solutions
};

// solve A x = b over Z/p^t; A row-major (rows x cols)
inline ZpSolve zp_solve(std::vector<std::vector<u64>> A, std::vector<u64> b,
                        u64 p, u64 t) {
  u64 m = 1;
  for (u64 i = 0; i < t; ++i) m *= p;
  size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  if (!rows) {
    ZpSolve s;
    s.consistent = true;
    s.x.assign(cols, 0);
    return s;
  }
  auto valp = [&](u64 a) -> u64 {
    if (a % m == 0) return t;
    u64 v = 0;
    a %= m;
    while (a % p == 0) { a /= p; ++v; }
    return v;
  };
  // V: cols x cols column transform, x = V y
  std::vector<std::vector<u64>> V(cols, std::vector<u64>(cols, 0));
  for (size_t i = 0; i < cols; ++i) V[i][i] = 1;

  size_t rank = 0;
  std::vector<u64> diag;  // diagonal entries d_k
  for (size_t k = 0; k < rows && k < cols; ++k) {
    // minimal-valuation pivot in A[k..][k..]
    u64 best = t + 1;
    size_t bi = k, bj = k;
    for (size_t i = k; i < rows; ++i)
      for (size_t j = k; j < cols; ++j) {
        u64 v = valp(A[i][j]);
        if (v < best) { best = v; bi = i; bj = j; }
      }
    if (best >= t) break;  // all remaining entries are 0 mod p^t
    std::swap(A[k], A[bi]);
    std::swap(b[k], b[bi]);
    if (bj != k)
      for (size_t i = 0; i < rows; ++i) std::swap(A[i][k], A[i][bj]);
    if (bj != k)
      for (size_t i = 0; i < cols; ++i) std::swap(V[i][k], V[i][bj]);
    u64 piv = A[k][k] % m;
    u64 e = valp(piv);
    u64 unit = piv;
    for (u64 i = 0; i < e; ++i) unit /= p;
    u64 uinv = invmod(unit, m);
    u64 pive = 1;
    for (u64 z = 0; z < e; ++z) pive *= p;
    // clear column below
    for (size_t i = k + 1; i < rows; ++i) {
      u64 a = A[i][k] % m;
      if (!a) continue;
      u64 q = mulmod(a / pive, uinv, m);
      for (size_t j = k; j < cols; ++j) A[i][j] = submod(A[i][j], mulmod(q, A[k][j], m), m);
      b[i] = submod(b[i], mulmod(q, b[k], m), m);
    }
    // clear row to the right (column ops, mirrored into V)
    for (size_t j = k + 1; j < cols; ++j) {
      u64 a = A[k][j] % m;
      if (!a) continue;
      u64 pe = 1;
      for (u64 z = 0; z < e; ++z) pe *= p;
      u64 q = mulmod(a / pe, uinv, m);
      for (size_t i = 0; i < rows; ++i) A[i][j] = submod(A[i][j], mulmod(q, A[i][k], m), m);
      for (size_t i = 0; i < cols; ++i) V[i][j] = submod(V[i][j], mulmod(q, V[i][k], m), m);
    }
    diag.push_back(piv);
    rank = k + 1;
  }

  ZpSolve s;
  std::vector<u64> y(cols, 0);
  std::vector<std::vector<u64>> kergens;  // in y-coordinates
  for (size_t k = 0; k < cols; ++k) {
    if (k < rank) {
      u64 d = diag[k] % m;
      u64 e = valp(d);
      u64 pe = 1;
      for (u64 z = 0; z < e; ++z) pe *= p;
      if (b[k] % pe != 0) return s;  // inconsistent
      u64 unit = d / pe;
      y[k] = mulmod(b[k] / pe, invmod(unit, m), m);
      if (e > 0) {
        std::vector<u64> g(cols, 0);
        g[k] = m / pe;  // p^{t-e}
        kergens.push_back(g);
      }
    } else {
      std::vector<u64> g(cols, 0);
      g[k] = 1;
      kergens.push_back(g);
    }
  }
  for (size_t k = rank; k < rows; ++k)
    if (b[k] % m != 0) return s;
  s.consistent = true;
  s.x.assign(cols, 0);
  for (size_t i = 0; i < cols; ++i)
    for (size_t j = 0; j < cols; ++j)
      s.x[i] = addmod(s.x[i], mulmod(V[i][j], y[j], m), m);
  for (auto& g : kergens) {
    std::vector<u64> xg(cols, 0);
    bool nz = false;
    for (size_t i = 0; i < cols; ++i) {
      for (size_t j = 0; j < cols; ++j)
        xg[i] = addmod(xg[i], mulmod(V[i][j], g[j], m), m);
      nz = nz || xg[i];
    }
    if (nz) s.kernel.push_back(xg);
  }
  return s;
}

// multiplicative inverse in (Z/p^t)[X]/Phi_n via the multiplication matrix
inline std::optional<Cyc> cyc_try_inv(const Cyc& a, u64 p, u64 t) {
  if (!a.n || a.is_zero()) return std::nullopt;
  size_t deg = a.c.size();
  std::vector<std::vector<u64>> M(deg, std::vector<u64>(deg, 0));
  for (size_t j = 0; j < deg; ++j) {
    Cyc col = a * Cyc::zeta_pow(a.n, a.m, j);
    for (size_t i = 0; i < deg; ++i) M[i][j] = col.c[i];
  }
  std::vector<u64> e1(deg, 0);
  e1[0] = 1;
  auto sol = zp_solve(M, e1, p, t);
  if (!sol.consistent) return std::nullopt;
  Cyc r(a.n, a.m);
  r.c = sol.x;
  // verify (the system can be solvable without a true inverse only if the
  // solve is buggy, but the product check is cheap)
  if (a * r != Cyc::of(1, a.n, a.m)) return std::nullopt;
  return r;
}

inline Cyc inv_r(const Cyc& a) {
  assert(a.m);
  u64 p = factor_u64(a.m)[0].first;
  u64 t = (u64)val_p(a.m, p);
  auto r = cyc_try_inv(a, p, t);
  if (!r) throw std::domain_error("ring-error: non-invertible cyclotomic scalar");
  return *r;
}

}  // namespace eistark
