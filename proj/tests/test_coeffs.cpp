#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <eistark/cyc.hpp>
#include <eistark/dlog.hpp>
#include <eistark/fq.hpp>
#include <eistark/intutil.hpp>
#include <eistark/linalg.hpp>
#include <eistark/zp.hpp>

using namespace eistark;

TEST_CASE("intutil basics") {
  CHECK(mulmod(1000000007ull, 998244353ull, 1000000009ull) ==
        (u64)((u128)1000000007ull * 998244353ull % 1000000009ull));
  CHECK(powmod(5, 11, 23) == 22);  // 5^11 = -1 mod 23
  CHECK(invmod(7, 121) * 7 % 121 == 1);
  CHECK(!try_invmod(11, 121));
  CHECK(smod(-5, 11) == 6);
  auto f = factor_u64(2 * 2 * 3 * 11 * 11 * 97);
  REQUIRE(f.size() == 4);
  CHECK(f[0] == std::pair<u64, int>{2, 2});
  CHECK(f[2] == std::pair<u64, int>{11, 2});
  CHECK(is_prime_u64(1000000007ull));
  CHECK(!is_prime_u64(1000000011ull));
  CHECK(val_p(121 * 7, 11) == 2);
  CHECK(floor_sqrt(mpq_class(50)) == 7);
  CHECK(floor_sqrt(mpq_class(49)) == 7);
  CHECK(ceil_q(mpq_class(7, 2)) == 4);
  CHECK(floor_q(mpq_class(-7, 2)) == -4);
}

TEST_CASE("Zp arithmetic and unattached zero") {
  Zp a(5, 121), b(120, 121);
  CHECK((a + b).v == 4);
  CHECK((a * b).v == 5 * 120 % 121);
  CHECK((-a).v == 116);
  CHECK(a.inv() * a == Zp(1, 121));
  Zp z;  // unattached
  CHECK((z + a) == a);
  CHECK((z * a).is_zero());
  CHECK(Zp::of(-3, 11).v == 8);
  CHECK(Zp(119, 121).lift_signed() == -2);
  CHECK(zp_of_mpq(mpq_class(22, 24), 11).v == 0);
  CHECK(zp_of_mpq(mpq_class(1, 12), 11) == Zp(1, 11).mul_int(1) * Zp(12 % 11, 11).inv());
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_poly(3) == std::vector<i64>{1, 1, 1});
  CHECK(cyclotomic_poly(6) == std::vector<i64>{1, -1, 1});
  CHECK(cyclotomic_poly(12) == std::vector<i64>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_poly(105).size() == 49);  // first index with coefficient -2
  CHECK(cyclotomic_poly(105)[7] == -2);
  CHECK(euler_phi(12) == 4);
}

TEST_CASE("Cyc ring") {
  const u64 m = 121;
  Cyc z3 = Cyc::zeta_pow(3, m, 1);
  CHECK(z3.pow(3) == Cyc::of(1, 3, m));
  CHECK((Cyc::of(1, 3, m) + z3 + z3.pow(2)).is_zero());
  Cyc z12 = Cyc::zeta_pow(12, m, 1);
  CHECK(z12.pow(12) == Cyc::of(1, 12, m));
  CHECK(z12.pow(6) == Cyc::of(-1, 12, m));
  // Phi_12(zeta) = 0
  CHECK((z12.pow(4) - z12.pow(2) + Cyc::of(1, 12, m)).is_zero());
  CHECK(z12.at_one() == Zp(1, m));
  CHECK((z3 * Cyc()).is_zero());  // unattached zero absorbs
  // 1 - zeta_3 is invertible mod 11^2 (its norm is 3)
  Cyc u = Cyc::of(1, 3, m) - z3;
  Cyc ui = inv_r(u);
  CHECK(u * ui == Cyc::of(1, 3, m));
  // 11 is not invertible
  CHECK(!cyc_try_inv(Cyc::of(11, 3, m), 11, 2));
}

TEST_CASE("zp_solve over Z/p^t") {
  SUBCASE("unique solution mod 11") {
    std::vector<std::vector<u64>> A = {{2, 1}, {1, 1}};
    auto s = zp_solve(A, {3, 2}, 11, 1);
    REQUIRE(s.consistent);
    CHECK(s.x == std::vector<u64>{1, 1});
    CHECK(s.kernel.empty());
  }
  SUBCASE("rank deficiency gives kernel") {
    std::vector<std::vector<u64>> A = {{1, 1}, {2, 2}};
    auto s = zp_solve(A, {1, 2}, 11, 1);
    REQUIRE(s.consistent);
    REQUIRE(s.kernel.size() == 1);
    // particular solution and solution + kernel generator both satisfy Ax=b
    for (auto& xs : {s.x, std::vector<u64>{addmod(s.x[0], s.kernel[0][0], 11),
                                           addmod(s.x[1], s.kernel[0][1], 11)}}) {
      CHECK(addmod(xs[0], xs[1], 11) == 1);
    }
  }
  SUBCASE("p-divisible pivot mod p^2") {
    std::vector<std::vector<u64>> A = {{11}};
    auto s = zp_solve(A, {22}, 11, 2);
    REQUIRE(s.consistent);
    CHECK(11 * s.x[0] % 121 == 22);
    REQUIRE(s.kernel.size() == 1);
    CHECK(s.kernel[0][0] % 121 == 11);  // p^{t-1} generates the kernel
    CHECK(!zp_solve(A, {5}, 11, 2).consistent);
  }
  SUBCASE("random square systems round-trip mod 11^2") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      size_t n = 4;
      std::vector<std::vector<u64>> A(n, std::vector<u64>(n));
      std::vector<u64> x(n), b(n, 0);
      for (auto& r : A)
        for (auto& v : r) v = rng() % 121;
      for (auto& v : x) v = rng() % 121;
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) b[i] = addmod(b[i], mulmod(A[i][j], x[j], 121), 121);
      auto s = zp_solve(A, b, 11, 2);
      REQUIRE(s.consistent);
      for (size_t i = 0; i < n; ++i) {
        u64 lhs = 0;
        for (size_t j = 0; j < n; ++j) lhs = addmod(lhs, mulmod(A[i][j], s.x[j], 121), 121);
        CHECK(lhs == b[i]);
      }
    }
  }
}

TEST_CASE("Fq fields") {
  auto F = FqCtx::make(23, 2);
  CHECK(F->modpoly == std::vector<u64>{23 - 5, 0, 1});  // x^2 - 5, 5 the least non-residue
  Fq g = F->gen();
  CHECK(g * g == F->from_int(5));
  Fq a = F->make_elt({7, 9});
  CHECK(a * a.inv() == F->one());
  CHECK(a.pow(23 * 23 - 1) == F->one());
  CHECK(a.frob().frob() == a);
  CHECK(F->from_int(12).frob() == F->from_int(12));
  // norm lands in the prime field
  Fq nm = a * a.frob();
  CHECK(nm.c[1] == 0);

  auto r = fq_sqrt(F->from_int(2));
  REQUIRE(r);
  CHECK((*r) * (*r) == F->from_int(2));
  // find a non-square (an element whose (q-1)/2 power is not 1) and check
  // fq_sqrt rejects it
  u64 half = (23 * 23 - 1) / 2;
  for (u64 c0 = 0; c0 < 23; ++c0) {
    Fq x = F->make_elt({c0, 1});
    if (x.pow(half) != F->one()) {
      CHECK(!fq_sqrt(x));
      break;
    }
  }

  auto F4 = FqCtx::make(23, 4);
  CHECK(poly_is_irreducible(poly_from(FqCtx::prime_field(23),
                                      {(i64)F4->modpoly[0], (i64)F4->modpoly[1],
                                       (i64)F4->modpoly[2], (i64)F4->modpoly[3],
                                       (i64)F4->modpoly[4]})));
  auto emb = FqEmbed::make(F, F4);
  Fq up = emb.up(a);
  CHECK(up * up == emb.up(a * a));
  auto down = emb.down(up);
  REQUIRE(down);
  CHECK(*down == a);
  CHECK(!emb.down(F4->gen()));  // generator of F_{23^4} is not in F_{23^2}
}

TEST_CASE("poly factorization over Fq") {
  auto F = FqCtx::prime_field(23);
  // (x-1)(x-4)(x-9) has roots 1,4,9
  FqPoly f = poly_mul(poly_mul(poly_from(F, {-1, 1}), poly_from(F, {-4, 1})), poly_from(F, {-9, 1}));
  auto roots = poly_roots(f);
  std::vector<u64> rs;
  for (auto& r : roots) rs.push_back(r.c[0]);
  std::sort(rs.begin(), rs.end());
  CHECK(rs == std::vector<u64>{1, 4, 9});
  // x^2 - 5 is irreducible over F_23, factors into two conjugate linears over F_{23^2}
  auto F2 = FqCtx::make(23, 2);
  FqPoly g = poly_from(F2, {-5, 0, 1});
  auto fac = poly_factor_squarefree(g);
  REQUIRE(fac.size() == 2);
  CHECK(poly_deg(fac[0]) == 1);
  CHECK(poly_deg(poly_gcd(f, poly_from(F, {-1, 1}))) == 1);
}

TEST_CASE("discrete log, worked instance N=23 p=11") {
  auto T = build_dlog(23, 11, 1);  // default anchor: primitive root 5 -> 1
  CHECK(T.log_int(5) == Zp(1, 11));
  CHECK(T.log_int(2) == Zp(2, 11));   // 2 = 5^2 mod 23
  CHECK(T.log_int(1) == Zp(0, 11));
  CHECK(T.log_int(-1) == Zp(0, 11));  // -1 = 5^11, 11 = 0 in Z/11
  CHECK(T.log_int(10) == Zp(3, 11));  // 2*5

  SUBCASE("homomorphism on all of (Z/23)^x") {
    for (i64 x = 1; x < 23; ++x)
      for (i64 y = 1; y < 23; ++y)
        CHECK(T.log_int(x * y % 23) == T.log_int(x) + T.log_int(y));
  }
  SUBCASE("surjectivity") {
    bool hit = false;
    for (i64 x = 1; x < 23; ++x)
      if (T.log_int(x).v % 11 == 1) hit = true;
    CHECK(hit);
  }
  SUBCASE("extension to F_{N^2}: kernel, Frobenius, norm compatibility") {
    // sqrt(5): norm is -5, log(-5) = 1, and (N+1)^{-1} = 24^{-1} = 6 mod 11
    Fq s5 = *fq_sqrt(T.f2->from_int(5));
    CHECK(T.log_fq(s5) == Zp(6, 11));
    CHECK(T.log_fq(s5) + T.log_fq(s5) == T.log_int(5));
    // elements of norm 1 (order dividing N+1) have log 0
    Fq z = T.g0.pow(22);  // order divides (N^2-1)/(N-1) = N+1
    CHECK(T.log_fq(z) == Zp(0, 11));
    FqRand rnd(T.f2, 99);
    for (int i = 0; i < 25; ++i) {
      Fq x = rnd.next(), y = rnd.next();
      if (x.is_zero() || y.is_zero()) continue;
      CHECK(T.log_fq(x * y) == T.log_fq(x) + T.log_fq(y));
      CHECK(T.log_fq(x.frob()) == T.log_fq(x));
      // norm formula: (N+1) log(x) = log(Norm x)
      Fq nm = x * x.frob();
      CHECK(T.log_fq(x).mul_int(24) == T.log_fq(nm));
    }
  }
  SUBCASE("anchor rescaling") {
    auto T2 = build_dlog(23, 11, 1, {{5, 2}});
    for (i64 x = 1; x < 23; ++x) CHECK(T2.log_int(x) == T.log_int(x).mul_int(2));
    auto T3 = build_dlog(23, 11, 1, {{2, 1}});  // log(2) = 1 => log(5) = 6
    CHECK(T3.log_int(5) == Zp(6, 11));
  }
  SUBCASE("errors") {
    CHECK_THROWS(build_dlog(23, 5, 1));   // 5 does not divide 22
    CHECK_THROWS(build_dlog(23, 11, 2));  // 11^2 does not divide 22
    CHECK_THROWS(build_dlog(24, 11, 1));  // N not prime
    CHECK_THROWS(build_dlog(23, 11, 1, {{1, 1}}));  // 1 does not generate the p-part
    CHECK_THROWS(build_dlog(23, 11, 1, {{5, 0}}));  // assigned value must be a unit
    CHECK_THROWS(T.log_int(0));
    CHECK_THROWS(T.log_int(23));
  }
}

TEST_CASE("discrete log at higher prime power") {
  // N = 89: N-1 = 8 * 11, so p = 11, t = 1; also N = 353: 352 = 2^5 * 11
  auto T = build_dlog(89, 11, 1);
  CHECK(T.log_int(3) == Zp(1, 11));  // 3 is the least primitive root mod 89
  // p^2: N = 1453 has N-1 = 2^2 * 3 * 11^2
  auto T2 = build_dlog(1453, 11, 2);
  Zp l2 = T2.log_int(2), l3 = T2.log_int(3);
  CHECK(T2.log_int(6) == l2 + l3);
  CHECK(T2.log_int(1024) == l2.mul_int(10));
  bool unit_seen = false;
  for (i64 x = 2; x < 50; ++x)
    if (T2.log_int(x).v % 11 != 0) unit_seen = true;
  CHECK(unit_seen);
}
