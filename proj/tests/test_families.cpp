#include <catch_amalgamated.hpp>

#include <hypergroup/families.hpp>

#include <thread>

using namespace hypergroup;
using Q = Rational;

namespace {

Q r(long p, long q = 1) { return Q(p, q); }

std::vector<PollaczekParams<Q>> rational_grid() {
  std::vector<PollaczekParams<Q>> out;
  for (Q a : {r(-2, 5), r(-1, 4), r(0), r(1, 2), r(1), r(2)})
    for (Q l : {r(0), r(1, 10), r(3, 10), r(1), r(5)})
      for (Q v : {r(0), r(1, 2), r(1), r(3)}) out.emplace_back(a, l, v);
  return out;
}

}  // namespace

TEST_CASE("little q-Legendre coefficients at q = 1/2") {
  auto cs = little_q_legendre(r(1, 2));
  CHECK(cs->a(0) == r(2, 3));
  CHECK(cs->b(0) == r(1, 3));
  CHECK(cs->c(0) == 0);
  CHECK(cs->c(1) == r(2, 7));
  CHECK(cs->a(1) == r(18, 35));
  CHECK(cs->b(1) == r(1, 5));
  // closed form of b_n from the product representation
  for (long n = 1; n <= 30; ++n) {
    Q q = r(1, 2), qn = pow_int(q, n);
    Q bn = (1 - qn) * (1 - qn * q) / ((1 + qn) * (1 + qn * q));
    CHECK(cs->b(n) == bn);
  }
}

TEST_CASE("little q-Legendre coefficients stay in range and sum to one") {
  for (Q q : {r(1, 4), r(1, 2), r(3, 4)}) {
    auto cs = little_q_legendre(q);
    for (std::size_t n = 1; n <= 200; ++n) {
      const auto& e = cs->at(n);
      REQUIRE(e.a > 0);
      REQUIRE(e.a < 1);
      REQUIRE(e.c > 0);
      REQUIRE(e.c < 1);
      REQUIRE(e.b >= 0);
      REQUIRE(e.a + e.b + e.c == 1);
    }
  }
  CHECK_THROWS_AS(little_q_legendre(r(1)), DomainError);
  CHECK_THROWS_AS(little_q_legendre(r(0)), DomainError);
}

TEST_CASE("little q-Legendre in float mode sums to one within 4 ulp") {
  PrecisionGuard g(256);
  auto cs = little_q_legendre(BigFloat(0.3));
  for (std::size_t n = 0; n <= 200; ++n) {
    const auto& e = cs->at(n);
    BigFloat err = abs_of(BigFloat(e.a + e.b + e.c - 1));
    REQUIRE(err <= 4 * epsilon_of(err));
  }
}

TEST_CASE("ultraspherical coefficients match n/(2n+2alpha+1)") {
  for (Q alpha : {r(0), r(1, 2), r(-1, 4), r(3)}) {
    auto cs = ultraspherical(alpha);
    for (long n = 1; n <= 60; ++n) CHECK(cs->c(n) == Q(n) / (2 * n + 2 * alpha + 1));
  }
  auto leg = ultraspherical(r(0));
  CHECK(leg->c(1) == r(1, 3));
  CHECK(leg->c(2) == r(2, 5));
}

TEST_CASE("Pollaczek worked point (0, 1/4, 0)") {
  auto cs = assoc_pollaczek(PollaczekParams<Q>(r(0), r(1, 4), r(0)));
  CHECK(cs->c(0) == 0);
  CHECK(cs->c(1) == r(4, 21));
  CHECK(cs->c(2) == r(48, 187));
  CHECK(cs->b(5) == 0);
}

TEST_CASE("Pollaczek recursion agrees with the Laguerre representation") {
  for (const auto& p : rational_grid()) {
    auto cs = assoc_pollaczek(p);
    PollaczekLaguerreForm<Q> lag(p);
    for (std::size_t n = 1; n <= 200; ++n) REQUIRE(cs->c(n) == lag.c(n));
  }
}

TEST_CASE("Laguerre ratios agree with direct evaluation") {
  const Q x = r(-1, 2), two_alpha = r(1, 3), nu = r(2, 5);
  LaguerreRatios<Q> ratios(x, two_alpha, nu);
  for (std::size_t n = 1; n <= 25; ++n) {
    CHECK(ratios.ratio(n) == laguerre_eval(n - 1, x, two_alpha, nu) / laguerre_eval(n, x, two_alpha, nu));
  }
}

TEST_CASE("Laguerre values") {
  CHECK(laguerre_eval(0, r(7), r(3), r(2)) == 1);
  CHECK(laguerre_eval(1, r(-1, 2), r(0), r(0)) == r(3, 2));
  for (std::size_t n = 0; n <= 20; ++n) CHECK(laguerre_eval(n, r(0), r(0), r(0)) == 1);
  // classical closed form L_2^{(a)}(x) = (x^2 - 2(a+2)x + (a+1)(a+2))/2
  const Q a = r(3, 7), x = r(-5, 3);
  CHECK(laguerre_eval(2, x, a, r(0)) == (x * x - 2 * (a + 2) * x + (a + 1) * (a + 2)) / 2);
}

TEST_CASE("random walk coefficients") {
  RandomWalkParams<Q> tilde(r(3), r(9, 2), r(0), true);
  auto ct = random_walk(tilde);
  CHECK(ct->c(1) == r(2, 17));

  RandomWalkParams<Q> plain(r(3), r(9, 2), r(0), false);
  auto cp = random_walk(plain);
  for (std::size_t n = 1; n <= 50; ++n) CHECK(cp->c(n) == ct->c(n));

  for (Q nu : {r(1, 2), r(1), r(4)}) {
    auto st = random_walk(RandomWalkParams<Q>(r(3), r(9, 2), nu, true));
    auto sp = random_walk(RandomWalkParams<Q>(r(3), r(9, 2), nu, false));
    for (std::size_t n = 1; n <= 100; ++n) {
      REQUIRE(sp->c(n) <= st->c(n));
      REQUIRE(st->c(n) < r(1, 4));
    }
  }
  CHECK_THROWS_AS(RandomWalkParams<Q>(r(1), r(1), r(0), true), DomainError);
  CHECK_THROWS_AS(RandomWalkParams<Q>(r(2), r(0), r(0), true), DomainError);
}

TEST_CASE("phi values and its two forms") {
  PollaczekParams<Q> leg(r(0), r(0), r(0));
  CHECK(leg.phi(r(1)) == r(1, 3));
  PollaczekParams<Q> p(r(0), r(1, 4), r(0));
  CHECK(p.phi(r(1)) == r(4, 21));
  for (const auto& g : rational_grid()) {
    PollaczekParams<Q> ultra = g.with_lambda(r(0));
    for (long x : {1L, 2L, 3L, 7L, 50L, 333L, 1000L}) {
      const Q f = g.phi(Q(x));
      REQUIRE(f > 0);
      REQUIRE(f < 1);
      REQUIRE(f == g.phi_alt(Q(x)));
      REQUIRE(f <= ultra.phi(Q(x)));
    }
  }
}

TEST_CASE("phi prime matches a central difference") {
  PrecisionGuard guard(256);
  using R = BigFloat;
  const R h = mp::ldexp(R(1), -60);
  for (const auto& g : rational_grid()) {
    PollaczekParams<R> p(to_real(g.alpha), to_real(g.lambda), to_real(g.nu));
    for (R x : {R(1), R(1.5), R(4), R(40)}) {
      R fd = (p.phi(R(x + h)) - p.phi(R(x - h))) / (2 * h);
      R exact = p.phi_prime(x);
      REQUIRE(abs_of(R(fd - exact)) <= R(1e-30) * (1 + abs_of(exact)));
    }
  }
}

TEST_CASE("iota worked value") {
  PrecisionGuard guard(256);
  PollaczekParams<Q> p(r(0), r(1, 4), r(0));
  BigFloat expected = (1 - mp::sqrt(BigFloat(17)) / 7) / 2;
  CHECK(abs_of(BigFloat(p.iota(r(1)) - expected)) < BigFloat(1e-70));
  CHECK(p.iota(r(1)) > BigFloat(0.20549));
  CHECK(p.iota(r(1)) < BigFloat(0.20550));
  CHECK_THROWS_AS(p.iota(r(-1)), DomainError);
}

TEST_CASE("xi requires phi below one quarter") {
  PrecisionGuard guard(256);
  // alpha = 1/4, lambda small: phi(1) > 1/4
  PollaczekParams<Q> p(r(-1, 4), r(1, 100), r(0));
  bool saw_error = false;
  for (long x = 1; x <= 3; ++x) {
    if (p.phi(Q(x)) * 4 > 1) {
      CHECK_THROWS_AS(p.xi(Q(x)), DomainError);
      saw_error = true;
    }
  }
  PollaczekParams<Q> ok(r(0), r(1, 4), r(0));
  BigFloat v = ok.xi(r(1));
  CHECK(v > 0);
  CHECK(v <= BigFloat(0.5));
  (void)saw_error;
}

TEST_CASE("critical points in the middle band") {
  PrecisionGuard guard(256);
  const BigFloat tol("1e-20");
  SECTION("worked point (0, 1/8, 0)") {
    PollaczekParams<Q> p(r(0), r(1, 8), r(0));
    auto cp = critical_points(p);
    REQUIRE(cp.x_star);
    CHECK(abs_of(BigFloat(*cp.x_star - BigFloat(15) / 8)) < tol);
    CHECK(*cp.x_star_star == *cp.x_star);
    PollaczekParams<BigFloat> pr(BigFloat(0), BigFloat(1) / 8, BigFloat(0));
    CHECK(abs_of(pr.phi_prime(*cp.x_star)) < tol);
  }
  SECTION("zeros of eta and theta") {
    for (Q a : {r(-1, 4), r(0), r(1, 10), r(1, 4)})
      for (Q l : {r(1, 20), r(1, 10), r(1, 5)})
        for (Q v : {r(0), r(1, 2), r(1), r(3)}) {
          if (!(l < r(1, 2) - abs_of(a))) continue;
          PollaczekParams<Q> p(a, l, v);
          auto cp = critical_points(p);
          PollaczekParams<BigFloat> pr(to_real(a), to_real(l), to_real(v));
          REQUIRE(abs_of(pr.eta(*cp.x_star)) < tol);
          REQUIRE(abs_of(pr.theta(*cp.x_star_star)) < tol);
          REQUIRE(*cp.x_star_star >= *cp.x_star);
          REQUIRE(*cp.x_star_star > 0);
          if (v == 0) REQUIRE(abs_of(BigFloat(*cp.x_star_star - *cp.x_star)) < tol);
          if (cp.x0) {
            REQUIRE(*cp.x0 >= 1);
            REQUIRE(*cp.x0 < *cp.x_star);
            BigFloat d = pr.phi(*cp.x0) - BigFloat(1) / 4;
            REQUIRE(abs_of(d) < BigFloat("1e-15"));
          }
        }
  }
  SECTION("outside the band is a domain error") {
    CHECK_THROWS_AS(critical_points(PollaczekParams<Q>(r(0), r(0), r(0))), DomainError);
    CHECK_THROWS_AS(critical_points(PollaczekParams<Q>(r(1, 4), r(1, 4), r(0))), DomainError);
  }
}

TEST_CASE("transform bundle") {
  PrecisionGuard guard(256);
  auto t = transform_params(r(0), r(1, 4));
  CHECK(t.a == 3);
  CHECK(t.b == 3);
  const BigFloat tol("1e-70");
  const BigFloat half_root3 = mp::sqrt(BigFloat(3)) / 2;
  CHECK(abs_of(BigFloat(t.omega - half_root3)) < tol);
  CHECK(abs_of(BigFloat(t.rho - half_root3)) < tol);
  CHECK(abs_of(BigFloat(t.gamma - 1 / mp::sqrt(BigFloat(3)))) < tol);
  CHECK(t.s(1) == r(6, 7));
  CHECK(t.t(1) == r(1, 7));
  for (Q a : {r(-1, 4), r(0), r(1, 2), r(2)})
    for (Q l : {r(1, 10), r(1, 5)})
      for (Q v : {r(0), r(1), r(3)}) {
        auto b = transform_params(a, l, v);
        CHECK(abs_of(BigFloat(b.omega - b.rho)) < tol);
        for (std::size_t n = 1; n <= 100; ++n) REQUIRE(b.s(n) + b.t(n) == 1);
        RandomWalkParams<Q> rw = b.random_walk_params(true);
        for (std::size_t n = 1; n <= 20; ++n) REQUIRE(rw.c_tilde(n) == b.t(n));
      }
  CHECK_THROWS_AS(transform_params(r(0), r(1, 2)), DomainError);
  CHECK_THROWS_AS(transform_params(r(0), r(0)), DomainError);
}

TEST_CASE("monic and orthonormal views") {
  auto q = little_q_legendre(r(1, 2));
  CHECK(monic_lambda(*q, 1) == r(8, 63));
  auto leg = ultraspherical(r(0));
  for (std::size_t n = 0; n <= 20; ++n) CHECK(monic_shift(*leg, n) == 0);
  for (const auto& p : rational_grid()) {
    auto cs = assoc_pollaczek(p);
    for (std::size_t n = 1; n <= 50; ++n) {
      const Q k(static_cast<long>(n));
      const Q expected = (k + p.nu) * (k + p.nu + 2 * p.alpha) /
                         ((2 * k + 2 * p.nu + 2 * p.alpha + 2 * p.lambda + 1) * (2 * k + 2 * p.nu + 2 * p.alpha + 2 * p.lambda - 1));
      REQUIRE(monic_lambda(*cs, n) == expected);
    }
  }
  PrecisionGuard guard(256);
  auto e = orthonormal_coefficients(*q, 0);
  CHECK(e.promoted);
  CHECK(abs_of(BigFloat(e.off_diagonal * e.off_diagonal - BigFloat(8) / 63)) < BigFloat("1e-70"));
}

TEST_CASE("corrupted tables are rejected at construction") {
  std::vector<Coeff<Q>> table{{r(1), r(0), r(0)}, {r(11, 10) - r(1, 2), r(-1, 10), r(1, 2)}};
  CHECK_THROWS_AS(CoefficientSequence<Q>::from_table(table), InvariantError);
  std::vector<Coeff<Q>> bad_sum{{r(1), r(0), r(0)}, {r(1, 2), r(0), r(1, 3)}};
  CHECK_THROWS_AS(CoefficientSequence<Q>::from_table(bad_sum), InvariantError);
  std::vector<Coeff<Q>> good{{r(1), r(0), r(0)}, {r(1, 2), r(0), r(1, 2)}};
  auto seq = CoefficientSequence<Q>::from_table(good);
  CHECK(seq->c(1) == r(1, 2));
  CHECK_THROWS_AS(seq->c(2), DomainError);
}

TEST_CASE("concurrent readers see one consistent prefix") {
  auto cs = little_q_legendre(r(1, 3));
  std::vector<std::thread> pool;
  std::vector<Q> seen(4);
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t n = 0; n <= 150; ++n) (void)cs->c(n);
      seen[t] = cs->c(150);
    });
  }
  for (auto& th : pool) th.join();
  for (int t = 1; t < 4; ++t) CHECK(seen[t] == seen[0]);
  CHECK(cs->materialized() == 151);
}
