#pragma once
// Elliptic curves y^2 = x^3 + ax + b over F_{N^{2k}}: short Weierstrass
// models, division polynomials, x-only multiplication, enumeration of the
// ell+1 order-ell subgroups by factoring the division polynomial over the
// minimal extension, and Velu isogenies with the normalized differential
// (pullback of dx/y on the codomain equals dx/y on the domain), so that
// discriminant ratios across an isogeny are well-defined scalars.

#include <cassert>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fq.hpp"

namespace eistark {

struct ECurve {
  Fq a, b;

  ECurve() = default;
  ECurve(Fq a_, Fq b_) : a(std::move(a_)), b(std::move(b_)) {
    assert(!disc().is_zero());
  }
  FqCtxPtr ctx() const { return a.ctx ? a.ctx : b.ctx; }

  Fq disc() const {  // 4a^3 + 27b^2
    auto c = ctx();
    return c->from_int(4) * a * a * a + c->from_int(27) * b * b;
  }
  // Delta(E, dx/y) = -16 (4a^3 + 27b^2)
  Fq delta() const { return ctx()->from_int(-16) * disc(); }
  Fq j() const {
    auto c = ctx();
    Fq num = c->from_int(1728 * 4 % (i64)c->N) * a * a * a;
    return num * disc().inv();
  }
  // right-hand side x^3 + ax + b as a polynomial
  FqPoly rhs() const {
    auto c = ctx();
    return FqPoly{b, a, c->zero(), c->one()};
  }
  Fq rhs_at(const Fq& x) const { return x * x * x + a * x + b; }

  friend bool operator==(const ECurve& E, const ECurve& F) { return E.a == F.a && E.b == F.b; }
};

inline ECurve curve_from_j(const Fq& j) {
  auto c = j.ctx;
  assert(c);
  Fq j1728 = c->from_int(1728);
  if (j.is_zero()) return ECurve(c->zero(), c->one());
  if (j == j1728) return ECurve(c->one(), c->zero());
  Fq t = j1728 - j;
  return ECurve(c->from_int(3) * j * t, c->from_int(2) * j * t * t);
}

inline Fq delta_of(const ECurve& E) { return E.delta(); }

// division polynomials written as psi_m = P[m] * y^(m+1 mod 2): P[m] is a
// polynomial in x alone, with the extra factor y for even m
inline std::vector<FqPoly> division_polys(const ECurve& E, u64 maxm) {
  auto c = E.ctx();
  std::vector<FqPoly> P(std::max<u64>(maxm, 4) + 1);
  FqPoly f = E.rhs();
  Fq a = E.a, b = E.b;
  P[0] = {};
  P[1] = {c->one()};
  P[2] = {c->from_int(2)};
  // psi_3 = 3x^4 + 6a x^2 + 12b x - a^2
  P[3] = FqPoly{-(a * a), c->from_int(12) * b, c->from_int(6) * a, c->zero(), c->from_int(3)};
  // psi_4 = 4y (x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - 8b^2 - a^3)
  P[4] = poly_scale(FqPoly{-(c->from_int(8) * b * b) - a * a * a, -(c->from_int(4) * a * b),
                           -(c->from_int(5) * a * a), c->from_int(20) * b, c->from_int(5) * a,
                           c->zero(), c->one()},
                    c->from_int(4));
  poly_trim(P[3]);
  poly_trim(P[4]);
  FqPoly f2 = poly_mul(f, f);
  Fq inv2 = c->from_int(2).inv();
  for (u64 m = 5; m <= maxm; ++m) {
    u64 k = m / 2;
    if (m & 1) {
      // psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
      FqPoly t1 = poly_mul(P[k + 2], poly_mul(P[k], poly_mul(P[k], P[k])));
      FqPoly t2 = poly_mul(P[k - 1], poly_mul(P[k + 1], poly_mul(P[k + 1], P[k + 1])));
      if (k & 1) t2 = poly_mul(f2, t2);   // the even-index cube carries y^3, and psi_{k-1} one more y
      else t1 = poly_mul(f2, t1);
      P[m] = poly_sub(t1, t2);
    } else {
      // psi_{2k} = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / (2y)
      FqPoly t1 = poly_mul(P[k + 2], poly_mul(P[k - 1], P[k - 1]));
      FqPoly t2 = poly_mul(P[k - 2], poly_mul(P[k + 1], P[k + 1]));
      P[m] = poly_scale(poly_mul(P[k], poly_sub(t1, t2)), inv2);
    }
  }
  return P;
}

// x-coordinate of m*P given x = x(P), via x(mP) = x - psi_{m-1} psi_{m+1} / psi_m^2;
// requires mP != O.  P table from division_polys with maxm >= m+1.
inline Fq x_multiple(const ECurve& E, const std::vector<FqPoly>& P, const Fq& x, u64 m) {
  assert(m >= 1 && P.size() > m + 1);
  if (m == 1) return x;
  Fq fx = E.rhs_at(x);
  Fq num = poly_eval(P[m - 1], x) * poly_eval(P[m + 1], x);
  Fq den = poly_eval(P[m], x) * poly_eval(P[m], x);
  if (m & 1) num = num * fx;  // psi_{m-1}, psi_{m+1} each carry a factor y
  else den = den * fx;        // psi_m carries the factor y
  if (den.is_zero()) throw std::domain_error("x_multiple: point order divides m");
  return x - num * den.inv();
}

// the ell+1 order-ell subgroups of E (defined over a degree-2 field), with
// everything lifted to the minimal extension where the torsion x-coordinates
// live.  Kernel polynomials are monic products of (x - x(jP)), j = 1..(ell-1)/2
// for odd ell, or linear for ell = 2.
struct TorsionData {
  FqCtxPtr big;                  // F_{N^{2k}}
  FqEmbed emb;                   // base field into big
  ECurve E;                      // the curve with coefficients lifted to big
  std::vector<FqPoly> kernels;   // ell+1 kernel polynomials over big
};

inline TorsionData order_ell_subgroups(const ECurve& E0, u64 ell) {
  auto small = E0.ctx();
  assert(small->d == 2 && ell != small->N && is_prime_u64(ell) && ell <= 31);
  FqPoly psi = ell == 2 ? E0.rhs() : division_polys(E0, ell)[ell];
  // minimal extension: lcm of the irreducible factor degrees over F_{N^2}
  u64 k = 1;
  for (const auto& g : poly_factor_squarefree(psi)) k = std::lcm(k, (u64)poly_deg(g));
  if (2 * k > 48) throw std::domain_error("unsupported-instance: torsion extension too large");
  FqCtxPtr big = k == 1 ? small : FqCtx::make(small->N, 2 * k);
  FqEmbed emb = FqEmbed::make(small, big);
  ECurve E(emb.up(E0.a), emb.up(E0.b));
  FqPoly psi_big;
  for (const auto& cf : psi) psi_big.push_back(emb.up(cf));
  std::vector<Fq> roots = poly_roots(psi_big);
  u64 half = ell == 2 ? 1 : (ell - 1) / 2;
  assert(roots.size() == (ell + 1) * half && "division polynomial must split");
  auto Pbig = division_polys(E, half + 2);
  TorsionData T{big, emb, E, {}};
  std::vector<bool> used(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    FqPoly ker = {big->one()};
    for (u64 m = 1; m <= half; ++m) {
      Fq xm = x_multiple(E, Pbig, roots[i], m);
      bool found = false;
      for (size_t j = 0; j < roots.size(); ++j)
        if (!used[j] && roots[j] == xm) {
          used[j] = true;
          found = true;
          break;
        }
      assert(found && "subgroup x-coordinates must be distinct torsion roots");
      ker = poly_mul(ker, FqPoly{-xm, big->one()});
    }
    T.kernels.push_back(ker);
  }
  assert(T.kernels.size() == ell + 1);
  return T;
}

struct IsogenyStep {
  ECurve domain, codomain;
  u64 degree = 1;
  FqPoly kernel;

  // Delta(domain, omega) / Delta(codomain, omega'), omega' normalized
  Fq delta_ratio() const { return domain.delta() * codomain.delta().inv(); }
};

// Velu isogeny with kernel given by its (squarefree, fully split) x-polynomial.
// Codomain y^2 = x^3 + A'x + B' with A' = a - 5t, B' = b - 7w; this is the
// normalization with trivial leading differential scaling.
inline IsogenyStep velu(const ECurve& E, const FqPoly& kernel) {
  auto c = E.ctx();
  FqPoly ker = kernel.empty() ? FqPoly{c->one()} : poly_monic(kernel);
  i64 d = poly_deg(ker);
  if (d == 0) return IsogenyStep{E, E, 1, ker};
  std::vector<Fq> xs = poly_roots(ker);
  if ((i64)xs.size() != d) throw std::domain_error("invalid-kernel");
  Fq t = c->zero(), w = c->zero();
  u64 degree = 1;
  for (const Fq& xq : xs) {
    Fq fx = E.rhs_at(xq);
    Fq tq, uq;
    if (fx.is_zero()) {
      tq = c->from_int(3) * xq * xq + E.a;  // order-2 point
      uq = c->zero();
      degree += 1;
    } else {
      tq = c->from_int(6) * xq * xq + c->from_int(2) * E.a;  // counts Q and -Q
      uq = c->from_int(4) * fx;
      degree += 2;
      // closure: x(2Q) must again be a kernel x-coordinate
      Fq x2 = (xq * xq - E.a) * (xq * xq - E.a) - c->from_int(8) * E.b * xq;
      x2 = x2 * (c->from_int(4) * fx).inv();
      if (!poly_eval(ker, x2).is_zero()) throw std::domain_error("invalid-kernel");
    }
    t += tq;
    w += uq + xq * tq;
  }
  ECurve out(E.a - c->from_int(5) * t, E.b - c->from_int(7) * w);
  return IsogenyStep{E, out, degree, ker};
}

}  // namespace eistark
