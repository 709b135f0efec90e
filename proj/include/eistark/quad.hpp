#pragma once
// Quadratic fields K = Q(sqrt(D)), D odd fundamental: elements, fractional
// ideals (oriented basis (a, (-b+sqrt(D))/2) times a rational scale), wide and
// narrow class groups via binary quadratic forms, fundamental units by
// continued fractions, principality / equivalence by bounded generator search,
// the ray class group C_D of conductor delta = (sqrt(D)) for D > 0, and its
// character group.

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cyc.hpp"
#include "intutil.hpp"

namespace eistark {

inline bool is_squarefree_i64(i64 n) {
  if (n < 0) n = -n;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

inline bool is_fundamental_odd_disc(i64 D) {
  if (D == 0 || D == 1) return false;
  i64 r = ((D % 4) + 4) % 4;
  return r == 1 && (D & 1) && is_squarefree_i64(D);
}

inline mpz_class isqrt_z(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------
// elements x = (u + v sqrt(D))/2 with u = v mod 2 (D odd)

struct QuadElem {
  i64 D = 0;
  mpz_class u = 0, v = 0;

  QuadElem() = default;
  QuadElem(i64 D_, mpz_class u_, mpz_class v_) : D(D_), u(std::move(u_)), v(std::move(v_)) {
    assert(((u - v) % 2) == 0);
  }
  static QuadElem from_int(i64 D, const mpz_class& n) { return QuadElem(D, 2 * n, 0); }
  static QuadElem omega(i64 D) { return QuadElem(D, 1, 1); }  // (1+sqrt D)/2
  static QuadElem sqrtD(i64 D) { return QuadElem(D, 0, 2); }

  bool is_zero() const { return u == 0 && v == 0; }
  QuadElem conj() const { return QuadElem(D, u, -v); }
  QuadElem operator-() const { return QuadElem(D, -u, -v); }
  friend QuadElem operator+(const QuadElem& a, const QuadElem& b) {
    assert(a.D == b.D);
    return QuadElem(a.D, a.u + b.u, a.v + b.v);
  }
  friend QuadElem operator-(const QuadElem& a, const QuadElem& b) { return a + (-b); }
  friend QuadElem operator*(const QuadElem& a, const QuadElem& b) {
    assert(a.D == b.D);
    mpz_class u = a.u * b.u + a.v * b.v * a.D;
    mpz_class v = a.u * b.v + a.v * b.u;
    assert(u % 2 == 0 && v % 2 == 0);
    return QuadElem(a.D, u / 2, v / 2);
  }
  friend bool operator==(const QuadElem& a, const QuadElem& b) {
    return a.D == b.D && a.u == b.u && a.v == b.v;
  }
  friend bool operator!=(const QuadElem& a, const QuadElem& b) { return !(a == b); }

  mpz_class norm() const {  // x x'
    mpz_class n = u * u - mpz_class(D) * v * v;
    assert(n % 4 == 0);
    return n / 4;
  }
  mpz_class trace() const { return u; }

  // sign under the embedding sqrt(D) > 0 (D > 0 only)
  int sign1() const {
    assert(D > 0);
    if (v == 0) return sgn(u);
    if (u == 0) return sgn(v);
    if (sgn(u) == sgn(v)) return sgn(u);
    // |u| vs |v| sqrt(D)
    int c = cmp(u * u, mpz_class(D) * v * v);
    if (c == 0) c = 1;  // impossible for nonsquare D, but keep total
    return c > 0 ? sgn(u) : sgn(v);
  }
  bool totally_positive() const { return norm() > 0 && sign1() > 0; }

  // compare with 1 under the first embedding
  bool greater_than_one() const { return QuadElem(D, u - 2, v).sign1() > 0; }

  std::string str() const {
    return "(" + u.get_str() + (v >= 0 ? "+" : "") + v.get_str() + "*sqrt(" +
           std::to_string(D) + "))/2";
  }
};

// ---------------------------------------------------------------------------
// binary quadratic forms (a, b, c), b^2 - 4ac = D

struct QForm {
  i64 D = 0;
  mpz_class a, b, c;
  QForm() = default;
  QForm(i64 D_, mpz_class a_, mpz_class b_) : D(D_), a(std::move(a_)), b(std::move(b_)) {
    mpz_class num = b * b - D;
    assert(num % (4 * a) == 0);
    c = num / (4 * a);
  }
  QForm(i64 D_, mpz_class a_, mpz_class b_, mpz_class c_)
      : D(D_), a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    assert(b * b - 4 * a * c == D);
  }
  friend bool operator==(const QForm& f, const QForm& g) {
    return f.D == g.D && f.a == g.a && f.b == g.b && f.c == g.c;
  }
  friend bool operator<(const QForm& f, const QForm& g) {
    if (f.a != g.a) return f.a < g.a;
    if (f.b != g.b) return f.b < g.b;
    return f.c < g.c;
  }
};

// reduce a positive definite form (D < 0, a > 0)
inline QForm reduce_definite(QForm f) {
  assert(f.D < 0 && f.a > 0);
  for (;;) {
    // normalize b into (-a, a]
    mpz_class r = f.b % (2 * f.a);
    if (r > f.a) r -= 2 * f.a;
    if (r <= -f.a) r += 2 * f.a;
    if (r != f.b) f = QForm(f.D, f.a, r);
    if (f.a > f.c) {
      f = QForm(f.D, f.c, -f.b);
      continue;
    }
    if ((f.a == f.c || f.a == -f.b) && f.b < 0) f = QForm(f.D, f.a, -f.b);
    return f;
  }
}

inline bool is_reduced_indefinite(const QForm& f) {
  // |sqrt(D) - 2|a|| < b < sqrt(D)
  if (f.b <= 0) return false;
  if (f.b * f.b >= f.D) return false;
  mpz_class t = 2 * abs(f.a);
  // |sqrt(D) - 2|a|| < b means (2|a| - b)^2 < D < (2|a| + b)^2
  mpz_class d = t - f.b, s = t + f.b;
  return d * d < f.D && s * s > f.D;
}

// one step of the indefinite reduction operator rho
inline QForm rho_indefinite(const QForm& f) {
  assert(f.D > 0);
  mpz_class s = isqrt_z(f.D);
  mpz_class ac = abs(f.c);
  mpz_class bn;
  if (ac > s) {
    bn = (-f.b) % (2 * ac);
    if (bn > ac) bn -= 2 * ac;
    if (bn <= -ac) bn += 2 * ac;
  } else {
    // largest b' = -b mod 2|c| with b' <= s
    bn = s - ((s + f.b) % (2 * ac) + 2 * ac) % (2 * ac);
  }
  return QForm(f.D, f.c, bn);
}

inline QForm reduce_indefinite(QForm f) {
  for (int i = 0; i < 20000; ++i) {
    if (is_reduced_indefinite(f)) return f;
    f = rho_indefinite(f);
  }
  throw std::runtime_error("indefinite reduction did not terminate");
}

// ---------------------------------------------------------------------------
// fractional ideals

struct QuadIdeal {
  i64 D = 0;
  mpz_class a = 1, b = 1;  // primitive integral part a Z + (-b+sqrt D)/2 Z
  mpq_class scale = 1;     // norm = a * scale^2

  QuadIdeal() = default;
  QuadIdeal(i64 D_, mpz_class a_, mpz_class b_, mpq_class scale_ = 1)
      : D(D_), a(std::move(a_)), b(std::move(b_)), scale(std::move(scale_)) {
    assert(a > 0 && scale > 0);
    normalize_b();
    assert((b * b - D) % (4 * a) == 0);
  }
  void normalize_b() {
    b %= 2 * a;
    if (b > a) b -= 2 * a;
    if (b <= -a) b += 2 * a;
  }
  static QuadIdeal whole_ring(i64 D) { return QuadIdeal(D, 1, 1); }

  mpq_class norm() const { return mpq_class(a) * scale * scale; }
  QuadIdeal conj() const { return QuadIdeal(D, a, -b, scale); }
  QForm form() const { return QForm(D, a, b); }

  friend bool operator==(const QuadIdeal& I, const QuadIdeal& J) {
    return I.D == J.D && I.a == J.a && I.b == J.b && I.scale == J.scale;
  }

  // membership: x in scale * (a Z + (-b+sqrt D)/2 Z)
  bool contains(const QuadElem& x) const {
    assert(x.D == D);
    // y = x / scale must have integer coordinates n = y.v, m = (y.u + b n)/(2a)
    mpq_class yu = mpq_class(x.u) / scale, yv = mpq_class(x.v) / scale;
    if (yu.get_den() != 1 || yv.get_den() != 1) return false;
    mpz_class n = yv.get_num();
    mpz_class num = yu.get_num() + b * n;
    return num % (2 * a) == 0;
  }

  friend QuadIdeal operator*(const QuadIdeal& I, const QuadIdeal& J) {
    assert(I.D == J.D);
    i64 D = I.D;
    // products of the integral-part generators, as integer (u, v) pairs
    QuadElem g1(D, 2 * I.a, 0), w1(D, -I.b, 1);
    QuadElem g2(D, 2 * J.a, 0), w2(D, -J.b, 1);
    std::vector<QuadElem> gens = {g1 * g2, g1 * w2, w1 * g2, w1 * w2};
    // the first generator is 4 a1 a2; all coordinates are even (2*(elt of L))
    // HNF on (u, v) rows
    std::vector<std::pair<mpz_class, mpz_class>> rows;
    for (auto& g : gens) rows.push_back({g.u, g.v});
    // reduce v-column to a single nonzero entry d = gcd, by pairwise gcd steps
    for (;;) {
      int iv = -1;
      for (int i = 0; i < (int)rows.size(); ++i)
        if (rows[i].second != 0) {
          if (iv < 0) iv = i;
          else {
            // combine rows iv, i to put gcd of v's in iv
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                       rows[iv].second.get_mpz_t(), rows[i].second.get_mpz_t());
            mpz_class u_new = s * rows[iv].first + t * rows[i].first;
            mpz_class q1 = rows[iv].second / g, q2 = rows[i].second / g;
            mpz_class u2 = q2 * rows[iv].first - q1 * rows[i].first;
            rows[iv] = {u_new, g};
            rows[i] = {u2, 0};
          }
        }
      break;
    }
    int iv = -1;
    for (int i = 0; i < (int)rows.size(); ++i)
      if (rows[i].second != 0) { iv = i; break; }
    assert(iv >= 0);
    mpz_class d = rows[iv].second, ustar = rows[iv].first;
    if (d < 0) { d = -d; ustar = -ustar; }
    mpz_class g0 = 0;
    for (int i = 0; i < (int)rows.size(); ++i)
      if (i != iv) {
        assert(rows[i].second == 0);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), g0.get_mpz_t(), rows[i].first.get_mpz_t());
        g0 = g;
      }
    assert(g0 > 0);
    // generators were 2 * (lattice elements), so halve
    assert(g0 % 2 == 0 /* rational part */);
    // L = (g0/2) Z + (ustar + d sqrt D)/2 Z; for an O-ideal d | ustar, d | g0/2
    assert(ustar % d == 0 && (g0 / 2) % d == 0);
    mpz_class anew = g0 / (2 * d);
    mpz_class bnew = -(ustar / d);
    return QuadIdeal(D, anew, bnew, I.scale * J.scale * mpq_class(d));
  }

  QuadIdeal scaled(const mpq_class& s) const {
    assert(s > 0);
    return QuadIdeal(D, a, b, scale * s);
  }

  std::string str() const {
    return "[" + a.get_str() + "," + b.get_str() + ";" + scale.get_str() + "]";
  }
};

// principal ideal (x)
inline QuadIdeal principal_ideal(const QuadElem& x) {
  assert(!x.is_zero());
  // (x) = x Z + x omega Z; HNF the two coordinate rows
  i64 D = x.D;
  QuadElem e1 = x, e2 = x * QuadElem::omega(D);
  std::vector<std::pair<mpz_class, mpz_class>> rows = {{e1.u, e1.v}, {e2.u, e2.v}};
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows[0].second.get_mpz_t(),
             rows[1].second.get_mpz_t());
  if (g == 0) throw std::runtime_error("degenerate principal ideal");
  mpz_class ustar = s * rows[0].first + t * rows[1].first;
  mpz_class d = g;
  mpz_class u0 = (rows[1].second / g) * rows[0].first - (rows[0].second / g) * rows[1].first;
  if (d < 0) { d = -d; ustar = -ustar; }
  if (u0 < 0) u0 = -u0;
  assert(u0 > 0 && u0 % 2 == 0);
  assert(ustar % d == 0 && (u0 / 2) % d == 0);
  return QuadIdeal(D, u0 / (2 * d), -(ustar / d), mpq_class(d));
}

// prime ideal above p (p odd prime, kronecker(D,p) != -1)
inline QuadIdeal ideal_above(i64 D, i64 p) {
  assert(p > 2 && is_prime_u64((u64)p));
  i64 k = mpz_kronecker_si(mpz_class(D).get_mpz_t(), (long)p);
  if (k == -1) throw std::domain_error("invalid-instance: prime is inert");
  if (k == 0) return QuadIdeal(D, p, p);
  // sqrt of D mod p
  u64 r = 0;
  u64 Dm = (u64)smod(D, p);
  for (u64 x = 1; x < (u64)p; ++x)
    if (mulmod(x, x, (u64)p) == Dm) { r = x; break; }
  assert(r);
  mpz_class b = (r % 2) ? mpz_class(r) : mpz_class(r + (u64)p);
  return QuadIdeal(D, p, b);
}

// ---------------------------------------------------------------------------
// class groups

struct ClassGroupTable {
  i64 D = 0;
  bool narrow = false;  // true for D > 0
  i64 h = 0;
  std::vector<QuadIdeal> reps;            // one ideal per class, a > 0
  std::vector<std::vector<QForm>> cycles; // D > 0: rho-cycles; D < 0: singletons
  std::map<QForm, i64> form_class;        // reduced form -> class index
  std::vector<std::vector<i64>> mul;      // composition table
  i64 id = 0;                             // identity class index
  std::vector<i64> inv;                   // inverse per class

  i64 class_of_form(QForm f) const {
    f = D < 0 ? reduce_definite(f) : reduce_indefinite(f);
    auto it = form_class.find(f);
    if (it == form_class.end()) throw std::runtime_error("form not in class table");
    return it->second;
  }
  i64 class_of(const QuadIdeal& I) const { return class_of_form(I.form()); }
  i64 compose(i64 i, i64 j) const { return mul[(size_t)i][(size_t)j]; }
  i64 power(i64 i, u64 e) const {
    i64 r = id;
    while (e) {
      if (e & 1) r = compose(r, i);
      i = compose(i, i);
      e >>= 1;
    }
    return r;
  }
};

inline ClassGroupTable class_group(i64 D) {
  if (!is_fundamental_odd_disc(D) || std::abs(D) > 4000)
    throw std::domain_error("unsupported-discriminant");
  ClassGroupTable T;
  T.D = D;
  T.narrow = D > 0;
  if (D < 0) {
    // reduced forms: |b| <= a <= c, b odd, b > 0 if |b| = a or a = c
    for (mpz_class a = 1; 4 * a * a <= mpz_class(-D) + a * a * 3; ++a) {
      if (3 * a * a > -D) break;
      for (mpz_class b = -a + 1; b <= a; ++b) {
        if ((b * b - D) % (4 * a) != 0) continue;
        mpz_class c = (b * b - D) / (4 * a);
        if (c < a) continue;
        if ((b == a || a == c) && b < 0) continue;
        if (b < 0 && -b == a) continue;
        QForm f(D, a, b, c);
        T.form_class.emplace(f, (i64)T.cycles.size());
        T.cycles.push_back({f});
        T.reps.push_back(QuadIdeal(D, a, b));
      }
    }
  } else {
    // all reduced indefinite forms, grouped into rho-cycles
    mpz_class s = isqrt_z(mpz_class(D));
    std::set<QForm> all;
    for (mpz_class b = 1; b <= s; b += 2) {
      mpz_class m4 = mpz_class(D) - b * b;  // = -4ac > 0
      if (m4 % 4 != 0) continue;
      mpz_class m = m4 / 4;
      for (mpz_class x = 1; x * x <= m; ++x) {
        if (m % x != 0) continue;
        for (const mpz_class& aa : std::vector<mpz_class>{x, mpz_class(m / x)}) {
          for (int sa : {1, -1}) {
            QForm f(D, sa * aa, b, -(m / aa) * sa);
            if (is_reduced_indefinite(f)) all.insert(f);
          }
          if (x * x == m) break;
        }
      }
    }
    std::set<QForm> seen;
    for (const QForm& f : all) {
      if (seen.count(f)) continue;
      std::vector<QForm> cyc;
      QForm g = f;
      do {
        cyc.push_back(g);
        seen.insert(g);
        g = reduce_indefinite(rho_indefinite(g));
      } while (!(g == f));
      i64 idx = (i64)T.cycles.size();
      QuadIdeal rep;
      bool found = false;
      for (const QForm& h2 : cyc) {
        T.form_class.emplace(h2, idx);
        if (!found && h2.a > 0) {
          rep = QuadIdeal(D, h2.a, h2.b);
          found = true;
        }
      }
      assert(found && "indefinite cycle without positive-a form");
      T.cycles.push_back(cyc);
      T.reps.push_back(rep);
    }
  }
  T.h = (i64)T.cycles.size();
  // composition table through ideal products
  T.mul.assign((size_t)T.h, std::vector<i64>((size_t)T.h, 0));
  for (i64 i = 0; i < T.h; ++i)
    for (i64 j = 0; j < T.h; ++j)
      T.mul[(size_t)i][(size_t)j] = T.class_of(T.reps[(size_t)i] * T.reps[(size_t)j]);
  // identity = class of the whole ring
  T.id = T.class_of(QuadIdeal::whole_ring(D));
  T.inv.assign((size_t)T.h, -1);
  for (i64 i = 0; i < T.h; ++i)
    for (i64 j = 0; j < T.h; ++j)
      if (T.compose(i, j) == T.id) T.inv[(size_t)i] = j;
  for (i64 i = 0; i < T.h; ++i) assert(T.inv[(size_t)i] >= 0);
  return T;
}

// ---------------------------------------------------------------------------
// fundamental unit by the continued fraction of omega = (1+sqrt D)/2

inline QuadElem fundamental_unit(i64 D) {
  if (!is_fundamental_odd_disc(D) || D < 0)
    throw std::domain_error("unsupported-discriminant");
  mpz_class s = isqrt_z(mpz_class(D));
  // state alpha_i = (P_i + sqrt D)/Q_i
  mpz_class P = 1, Q = 2;
  // convergent matrix G = prod [[a_t,1],[1,0]]
  mpz_class A = 1, B = 0, C = 0, E = 1;
  struct Snap { mpz_class A, B, C, E; int step; };
  std::map<std::pair<mpz_class, mpz_class>, Snap> visited;
  for (int step = 0; step < 1000000; ++step) {
    auto key = std::make_pair(P, Q);
    auto it = visited.find(key);
    if (it != visited.end()) {
      const Snap& sn = it->second;
      // M' = G * G_k^{-1} fixes omega; det G_i = (-1)^i
      mpz_class detk = (sn.step % 2 == 0) ? 1 : -1;
      // G_k^{-1} = detk^{-1} * [[E_k, -B_k], [-C_k, A_k]]
      mpz_class iA = detk * sn.E, iB = -detk * sn.B, iC = -detk * sn.C, iE = detk * sn.A;
      mpz_class MA = A * iA + B * iC, MB = A * iB + B * iE;
      mpz_class MC = C * iA + E * iC, ME = C * iB + E * iE;
      mpz_class det = MA * ME - MB * MC;
      assert(det == 1 || det == -1);
      if (det == -1)
        throw std::domain_error("unsupported-field: fundamental unit has norm -1");
      // unit = MC * omega + ME
      QuadElem eps(D, MC + 2 * ME, MC);
      assert(eps.norm() == 1);
      if (!eps.greater_than_one()) eps = eps.conj();  // eps^{-1} for norm 1
      if (!eps.greater_than_one()) eps = -eps;
      if (!eps.greater_than_one()) eps = eps.conj();
      assert(eps.greater_than_one());
      assert(eps.totally_positive());
      return eps;
    }
    visited.emplace(key, Snap{A, B, C, E, step});
    assert(Q > 0);
    mpz_class a = (P + s) / Q;
    if (P + s < 0) a = -((-(P + s) + Q - 1) / Q);  // floor for negative values
    // advance state and convergents
    mpz_class Pn = a * Q - P;
    mpz_class num = mpz_class(D) - Pn * Pn;
    assert(num % Q == 0);
    mpz_class Qn = num / Q;
    P = Pn;
    Q = Qn;
    mpz_class A2 = A * a + B, C2 = C * a + E;
    B = A;
    E = C;
    A = A2;
    C = C2;
  }
  throw std::runtime_error("continued fraction did not cycle");
}

// ---------------------------------------------------------------------------
// generator search

// find x in the primitive integral part of I with |N(x)| = a = N-part,
// i.e. a generator of I's integral part (up to units).  Returns generators of
// both norm signs when they exist (each normalized to sign1 > 0).
struct GenSearch {
  bool principal = false;       // exists any generator
  std::optional<QuadElem> pos;  // generator with norm +a (totally positive)
  std::optional<QuadElem> neg;  // generator with norm -a (mixed signature)
};

inline GenSearch find_generator(const QuadIdeal& I, const std::optional<QuadElem>& eps) {
  i64 D = I.D;
  GenSearch R;
  mpz_class m = I.a;
  if (D < 0) {
    // definite: finitely many elements of norm m
    // x = (u+v sqrt D)/2, u^2 + |D| v^2 = 4m
    mpz_class vmax = isqrt_z(4 * m / mpz_class(-D)) + 1;
    for (mpz_class v = 0; v <= vmax; ++v) {
      mpz_class u2 = 4 * m + mpz_class(D) * v * v;
      if (u2 < 0) continue;
      if (!mpz_perfect_square_p(u2.get_mpz_t())) continue;
      mpz_class u = isqrt_z(u2);
      for (const mpz_class& uu : std::vector<mpz_class>{u, mpz_class(-u)}) {
        if ((uu - v) % 2 != 0) continue;
        QuadElem x(D, uu, v);
        if (x.is_zero()) continue;
        QuadIdeal P0 = principal_ideal(x);
        if (P0.a == I.a && P0.b == I.b && P0.scale == 1) {
          R.principal = true;
          R.pos = x;
          return R;
        }
        if (u == 0) break;
      }
    }
    return R;
  }
  assert(eps && "indefinite generator search needs the fundamental unit");
  // bound: a generator can be scaled by eps^k into [sqrt m, sqrt m * eps),
  // giving |u| <= sqrt(m)(eps+1), |v| <= sqrt(m)(eps+1)/sqrt(D)
  mpz_class epsbound = (eps->u + eps->v * (isqrt_z(mpz_class(D)) + 1)) / 2 + 2;
  mpz_class ub = isqrt_z(m * (epsbound + 1) * (epsbound + 1)) + 2;
  mpz_class vmax = ub / isqrt_z(mpz_class(D)) + 2;
  for (mpz_class v = 0; v <= vmax && (!R.pos || !R.neg); ++v) {
    for (int sn : {1, -1}) {
      if (sn > 0 && R.pos) continue;
      if (sn < 0 && R.neg) continue;
      mpz_class u2 = mpz_class(D) * v * v + sn * 4 * m;
      if (u2 < 0) continue;
      if (!mpz_perfect_square_p(u2.get_mpz_t())) continue;
      mpz_class u = isqrt_z(u2);
      for (const mpz_class& uu : std::vector<mpz_class>{u, mpz_class(-u)}) {
        if ((uu - v) % 2 != 0) continue;
        QuadElem x(D, uu, v);
        if (x.is_zero()) continue;
        QuadIdeal P0 = principal_ideal(x);
        if (!(P0.a == I.a && P0.b == I.b && P0.scale == 1)) continue;
        R.principal = true;
        if (x.sign1() < 0) x = -x;
        if (sn > 0) R.pos = x;
        else R.neg = x;
        break;
      }
    }
  }
  return R;
}

// strip the rational scale off a fractional ideal, returning the primitive
// integral part and the scale
inline QuadIdeal primitive_part(const QuadIdeal& I, mpq_class* scale_out = nullptr) {
  if (scale_out) *scale_out = I.scale;
  return QuadIdeal(I.D, I.a, I.b);
}

// ---------------------------------------------------------------------------
// ray class group C_D of conductor delta = (sqrt D), D > 0, units norm +1.
// Elements are pairs (r, c): r in (Z/D)^x / <iota>, c a narrow class; the
// class is (x) * I_c for any totally positive x = r mod delta.  Multiplication
// twists by a 2-cocycle kappa(c1, c2) = (totally positive generator of
// I_{c1} I_{c2} I'_{c1c2} / N(I_{c1c2})) mod delta.

// residue of a totally-positive-normalized element mod delta: (u+v sqrt D)/2
// -> u * 2^{-1} mod D; x must be coprime to D
inline u64 elem_mod_delta(const QuadElem& x, i64 D) {
  u64 Du = (u64)D;
  u64 u = mpz_to_u64_mod(x.u, Du);
  u64 r = mulmod(u, invmod(2 % Du, Du), Du);
  if (std::gcd(r, Du) != 1) throw std::runtime_error("element not coprime to delta");
  return r;
}

struct RayClassD {
  i64 D = 0;
  ClassGroupTable cg;       // narrow class group
  QuadElem eps;             // fundamental unit (norm +1)
  u64 iota = 0;             // eps mod delta, a square root of 1, != +-1
  std::vector<u64> unit_reps;            // canonical reps of (Z/D)^x / <iota>
  std::map<u64, size_t> unit_index;      // residue -> index of its <iota>-orbit
  std::vector<std::vector<u64>> kappa;   // cocycle values (residues mod D)
  size_t n_units = 0;
  size_t size = 0;          // n_units * h_narrow

  size_t idx(size_t ui, i64 c) const { return ui * (size_t)cg.h + (size_t)c; }
  std::pair<size_t, i64> unidx(size_t g) const {
    return {g / (size_t)cg.h, (i64)(g % (size_t)cg.h)};
  }
  size_t unit_class(u64 r) const {
    auto it = unit_index.find(r % (u64)D);
    if (it == unit_index.end()) throw std::runtime_error("residue not coprime to D");
    return it->second;
  }

  size_t mul(size_t g1, size_t g2) const {
    auto [u1, c1] = unidx(g1);
    auto [u2, c2] = unidx(g2);
    u64 r = mulmod(unit_reps[u1], unit_reps[u2], (u64)D);
    r = mulmod(r, kappa[(size_t)c1][(size_t)c2], (u64)D);
    return idx(unit_class(r), cg.compose(c1, c2));
  }
  size_t id() const { return idx(unit_class(1), cg.id); }
  size_t pow(size_t g, u64 e) const {
    size_t r = id();
    while (e) {
      if (e & 1) r = mul(r, g);
      g = mul(g, g);
      e >>= 1;
    }
    return r;
  }
  size_t inv_elt(size_t g) const {
    // order is finite; g^{-1} = g^{ord-1}; use |C_D| as exponent
    return pow(g, (u64)size - 1);
  }
  u64 order_of(size_t g) const {
    u64 o = 1;
    size_t x = g;
    while (x != id()) {
      x = mul(x, g);
      ++o;
      assert(o <= size);
    }
    return o;
  }

  // norm map to (Z/D)^x: r^2 * N(I_c)
  u64 norm_res(size_t g) const {
    auto [ui, c] = unidx(g);
    u64 r = unit_reps[ui];
    u64 nI = mpz_to_u64_mod(cg.reps[(size_t)c].a, (u64)D);
    return mulmod(mulmod(r, r, (u64)D), nI, (u64)D);
  }
  // conjugation: conj(g) = image(norm(g)) * g^{-1}
  size_t conj_elt(size_t g) const {
    size_t nm = idx(unit_class(norm_res(g)), cg.id);
    return mul(nm, inv_elt(g));
  }

  // class of a fractional ideal coprime to delta
  size_t class_of(const QuadIdeal& I) const {
    i64 c = cg.class_of(I);
    // lambda generates I * I_c' / N(I_c) (narrow-principal); find it on the
    // primitive integral part and track the rational scale mod D
    QuadIdeal J = I * cg.reps[(size_t)c].conj();
    mpq_class s = J.scale / mpq_class(cg.reps[(size_t)c].a);
    auto gs = find_generator(QuadIdeal(J.D, J.a, J.b), eps);
    if (!gs.pos) throw std::runtime_error("undecided-error: generator search failed");
    u64 r = elem_mod_delta(*gs.pos, D);
    u64 num = mpz_to_u64_mod(s.get_num(), (u64)D);
    u64 den = mpz_to_u64_mod(s.get_den(), (u64)D);
    if (std::gcd(num, (u64)D) != 1 || std::gcd(den, (u64)D) != 1)
      throw std::runtime_error("ideal not coprime to delta");
    r = mulmod(r, mulmod(num, invmod(den, (u64)D), (u64)D), (u64)D);
    return idx(unit_class(r), c);
  }

  // the distinguished element sigma = class of (lambda), lambda totally
  // negative, lambda = 1 mod delta (i.e. image of -1 in the unit part)
  size_t sigma() const { return idx(unit_class((u64)D - 1), cg.id); }
};

inline RayClassD ray_class_group(i64 D) {
  if (!is_fundamental_odd_disc(D) || D < 0)
    throw std::domain_error("unsupported-discriminant");
  RayClassD R;
  R.D = D;
  R.eps = fundamental_unit(D);  // throws unsupported-field on norm -1
  R.cg = class_group(D);
  u64 Du = (u64)D;
  R.iota = elem_mod_delta(R.eps, D);
  if (R.iota == 1 || R.iota == Du - 1)
    throw std::runtime_error("contradiction-error: iota is +-1");
  assert(mulmod(R.iota, R.iota, Du) == 1);
  // orbits of <iota> on (Z/D)^x
  for (u64 r = 1; r < Du; ++r) {
    if (std::gcd(r, Du) != 1) continue;
    if (R.unit_index.count(r)) continue;
    size_t i = R.unit_reps.size();
    R.unit_reps.push_back(r);
    R.unit_index[r] = i;
    R.unit_index[mulmod(r, R.iota, Du)] = i;
  }
  R.n_units = R.unit_reps.size();
  R.size = R.n_units * (size_t)R.cg.h;
  // choose narrow class representatives coprime to D (replace reps if needed)
  for (size_t c = 0; c < (size_t)R.cg.h; ++c) {
    if (mpz_class(gcd(R.cg.reps[c].a, mpz_class(D))) == 1) continue;
    bool found = false;
    for (mpz_class a = 1; a < 40 * mpz_class(D) && !found; ++a) {
      if (gcd(a, mpz_class(D)) != 1) continue;
      for (mpz_class b = -a + 1; b <= a && !found; ++b) {
        if ((b * b - D) % (4 * a) != 0) continue;
        QuadIdeal I(D, a, b);
        if (R.cg.class_of(I) == (i64)c) {
          R.cg.reps[c] = I;
          found = true;
        }
      }
    }
    if (!found) throw std::runtime_error("no class representative coprime to D");
  }
  // cocycle
  R.kappa.assign((size_t)R.cg.h, std::vector<u64>((size_t)R.cg.h, 1));
  for (size_t c1 = 0; c1 < (size_t)R.cg.h; ++c1)
    for (size_t c2 = 0; c2 < (size_t)R.cg.h; ++c2) {
      i64 c3 = R.cg.compose((i64)c1, (i64)c2);
      QuadIdeal P = R.cg.reps[c1] * R.cg.reps[c2] * R.cg.reps[(size_t)c3].conj();
      mpq_class s = P.scale / mpq_class(R.cg.reps[(size_t)c3].a);
      auto gs = find_generator(QuadIdeal(D, P.a, P.b), R.eps);
      if (!gs.pos) throw std::runtime_error("undecided-error: cocycle generator search");
      u64 r = elem_mod_delta(*gs.pos, D);
      u64 num = mpz_to_u64_mod(s.get_num(), Du), den = mpz_to_u64_mod(s.get_den(), Du);
      r = mulmod(r, mulmod(num, invmod(den, Du), Du), Du);
      R.kappa[c1][c2] = r;
    }
  return R;
}

// ---------------------------------------------------------------------------
// characters of a finite abelian group given by index-mul closure

struct Character {
  u64 M = 1;                // character takes values zeta_M^exps[g]
  std::vector<u64> exps;    // exponent per group element index

  u64 order() const {
    u64 g = M;
    for (u64 e : exps) g = std::gcd(g, e);
    return M / g;
  }
  bool trivial() const {
    for (u64 e : exps)
      if (e % M) return false;
    return true;
  }
  // value as a root of unity in (Z/p^t)[zeta_n]; requires order() | n
  Cyc value(size_t g, u64 n, u64 mod) const {
    assert(n % order() == 0);
    u64 e = exps[g] % M;
    assert((e * n) % M == 0);
    return Cyc::zeta_pow(n, mod, e * n / M % n);
  }
  friend bool operator==(const Character& x, const Character& y) {
    return x.M == y.M && x.exps == y.exps;
  }
};

// all characters of the group {0..n-1} with multiplication mulf and identity e
template <class MulF>
std::vector<Character> character_group(size_t n, size_t e, MulF mulf) {
  // small generating set
  std::vector<size_t> gens;
  std::vector<i64> word_of(n, -1);  // filled below with index into words
  std::vector<std::vector<i64>> words;  // exponent vector over gens per element
  std::vector<size_t> elems = {e};
  words.push_back({});
  word_of[e] = 0;
  for (size_t cand = 0; cand < n; ++cand) {
    if (word_of[cand] >= 0) continue;
    // add generator
    size_t gi = gens.size();
    gens.push_back(cand);
    for (auto& w : words) w.push_back(0);
    // close under the new generator
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t i = 0; i < elems.size(); ++i)
        for (size_t gj = 0; gj < gens.size(); ++gj) {
          size_t y = mulf(elems[i], gens[gj]);
          if (word_of[y] < 0) {
            std::vector<i64> w = words[(size_t)word_of[elems[i]]];
            w[gj] += 1;
            word_of[y] = (i64)words.size();
            words.push_back(std::move(w));
            elems.push_back(y);
            grew = true;
          }
        }
    }
  }
  size_t k = gens.size();
  // relation columns: for every element g and generator i,
  // word(g) + e_i - word(g * gens[i]) is in the relation lattice
  std::vector<std::vector<mpz_class>> Rcols;
  for (size_t gidx = 0; gidx < n; ++gidx)
    for (size_t i = 0; i < k; ++i) {
      size_t y = mulf(gidx, gens[i]);
      std::vector<mpz_class> col(k, 0);
      for (size_t j = 0; j < k; ++j)
        col[j] = words[(size_t)word_of[gidx]][j] - words[(size_t)word_of[y]][j];
      col[i] += 1;
      Rcols.push_back(std::move(col));
    }
  // Smith reduction of the k x m matrix, tracking the left transform E
  size_t m = Rcols.size();
  std::vector<std::vector<mpz_class>> A(k, std::vector<mpz_class>(m, 0));
  for (size_t j = 0; j < m; ++j)
    for (size_t i = 0; i < k; ++i) A[i][j] = Rcols[j][i];
  std::vector<std::vector<mpz_class>> E(k, std::vector<mpz_class>(k, 0));
  for (size_t i = 0; i < k; ++i) E[i][i] = 1;
  std::vector<mpz_class> diag(k, 0);
  for (size_t p = 0; p < k; ++p) {
    for (;;) {
      // find minimal |entry| in A[p..][p..]
      size_t bi = p, bj = p;
      mpz_class best = 0;
      for (size_t i = p; i < k; ++i)
        for (size_t j = p; j < m; ++j)
          if (A[i][j] != 0 && (best == 0 || abs(A[i][j]) < best)) {
            best = abs(A[i][j]);
            bi = i;
            bj = j;
          }
      if (best == 0) break;
      std::swap(A[bi], A[p]);
      std::swap(E[bi], E[p]);
      for (size_t i = 0; i < k; ++i) std::swap(A[i][bj], A[i][p]);
      bool clean = true;
      for (size_t i = p + 1; i < k; ++i) {
        mpz_class q = A[i][p] / A[p][p];
        mpz_class r = A[i][p] - q * A[p][p];
        if (r != 0 || q != 0) {
          for (size_t j = p; j < m; ++j) A[i][j] -= q * A[p][j];
          for (size_t j = 0; j < k; ++j) E[i][j] -= q * E[p][j];
          if (r != 0) clean = false;
        }
      }
      for (size_t j = p + 1; j < m; ++j) {
        mpz_class q = A[p][j] / A[p][p];
        mpz_class r = A[p][j] - q * A[p][p];
        if (r != 0 || q != 0) {
          for (size_t i = 0; i < k; ++i) A[i][j] -= q * A[i][p];
          if (r != 0) clean = false;
        }
      }
      if (clean) break;
    }
    diag[p] = abs(A[p][p]);
  }
  // group = prod Z/diag[i] via y = E * word
  u64 M = 1;
  for (size_t i = 0; i < k; ++i) {
    assert(diag[i] != 0 && "relation lattice must have full rank (finite group)");
    u64 d = (u64)mpz_get_ui(diag[i].get_mpz_t());
    M = std::lcm(M, d == 0 ? 1 : d);
  }
  if (M == 0) M = 1;
  std::vector<u64> ds(k);
  for (size_t i = 0; i < k; ++i) ds[i] = (u64)mpz_get_ui(diag[i].get_mpz_t());
  // enumerate characters
  std::vector<Character> chars;
  std::vector<u64> t(k, 0);
  auto emit = [&]() {
    Character ch;
    ch.M = M;
    ch.exps.assign(n, 0);
    for (size_t g = 0; g < n; ++g) {
      const auto& w = words[(size_t)word_of[g]];
      mpz_class acc = 0;
      for (size_t i = 0; i < k; ++i) {
        if (ds[i] <= 1) continue;
        mpz_class y = 0;
        for (size_t j = 0; j < k; ++j) y += E[i][j] * w[j];
        mpz_class contrib = mpz_class((unsigned long)t[i]) * y * (long)(M / ds[i]);
        acc += contrib;
      }
      mpz_class r = acc % (long)M;
      if (r < 0) r += (long)M;
      ch.exps[g] = (u64)mpz_get_ui(r.get_mpz_t());
    }
    chars.push_back(std::move(ch));
  };
  for (;;) {
    emit();
    size_t i = 0;
    for (; i < k; ++i) {
      if (ds[i] <= 1) continue;
      if (++t[i] < ds[i]) break;
      t[i] = 0;
    }
    if (i == k) break;
  }
  assert(chars.size() == n && "character count must equal group order");
  return chars;
}

// characters psi_1 of C_D with psi_1(sigma) = -1 whose ratio psi_1/psi_1' is
// nontrivial (so the attached theta series is cuspidal)
inline std::vector<Character> select_psi1(const RayClassD& rc) {
  auto chars = character_group(rc.size, rc.id(), [&](size_t a, size_t b) { return rc.mul(a, b); });
  std::vector<Character> out;
  size_t sg = rc.sigma();
  for (auto& ch : chars) {
    if (ch.M % 2 != 0) continue;  // cannot take value -1
    if (ch.exps[sg] % ch.M != ch.M / 2) continue;  // psi_1(sigma) = -1
    // psi = psi_1 / psi_1' where psi_1'(g) = psi_1(conj g)
    bool psi_trivial = true;
    for (size_t g = 0; g < rc.size; ++g) {
      u64 e = submod(ch.exps[g], ch.exps[rc.conj_elt(g)], ch.M);
      if (e) { psi_trivial = false; break; }
    }
    if (psi_trivial) continue;
    out.push_back(ch);
  }
  return out;
}

}  // namespace eistark
