#include <catch_amalgamated.hpp>

#include <hypergroup/chainseq.hpp>

#include <cmath>
#include <random>

using namespace hypergroup;
using Q = Rational;
using R = BigFloat;

namespace {

Q r(long p, long q = 1) { return Q(p, q); }

double d(const Q& v) { return v.convert_to<double>(); }
double d(const R& v) { return v.convert_to<double>(); }

ChainSequenceProbe<Q> constant_probe(const Q& v) {
  return {[v](std::size_t) { return v; }, std::nullopt, "constant"};
}

}  // namespace

TEST_CASE("minimal parameters") {
  SECTION("Lambda = 1/4 gives n/(2n+2)") {
    auto m = minimal_parameters(constant_probe(r(1, 4)), 60);
    REQUIRE(m.certified);
    REQUIRE(m.values.size() == 61);
    CHECK(m.values[0] == 0);
    CHECK(m.values[1] == r(1, 4));
    CHECK(m.values[2] == r(1, 3));
    CHECK(m.values[3] == r(3, 8));
    for (long n = 0; n <= 60; ++n) CHECK(m.values[n] == r(n, 2 * n + 2));
    REQUIRE(m.increasing.has_value());
    CHECK(*m.increasing);
  }
  SECTION("Pollaczek phi reproduces c_n") {
    for (auto p : {PollaczekParams<Q>(r(0), r(1, 4), r(0)), PollaczekParams<Q>(r(1, 2), r(1), r(1)),
                   PollaczekParams<Q>(r(-1, 4), r(3, 10), r(3))}) {
      ChainSequenceProbe<Q> probe{[p](std::size_t n) { return p.phi(Q(static_cast<long>(n))); }, std::nullopt, "phi"};
      auto m = minimal_parameters(probe, 200);
      REQUIRE(m.certified);
      auto cs = assoc_pollaczek(p);
      for (std::size_t n = 0; n <= 200; ++n) CHECK(m.values[n] == cs->c(n));
      probe.parameters = [cs](std::size_t n) { return cs->c(n); };
      CHECK_FALSE(probe.check_parameters(200).has_value());
    }
  }
  SECTION("negative certificate") {
    ChainSequenceProbe<Q> probe{[](std::size_t) { return r(9, 10); }, std::nullopt, "0.9"};
    auto m = minimal_parameters(probe, 5);
    CHECK_FALSE(m.certified);
    REQUIRE(m.failure.has_value());
    CHECK(*m.failure == 2);
    CHECK(*m.failure_value == 9);
  }
  SECTION("a wrong parameter sequence is caught") {
    auto probe = constant_probe(r(1, 4));
    probe.parameters = [](std::size_t) { return r(1, 2); };
    CHECK_FALSE(probe.check_parameters(10).has_value());
    probe.parameters = [](std::size_t n) { return n == 0 ? r(0) : r(1, 2); };
    REQUIRE(probe.check_parameters(10).has_value());
    CHECK(*probe.check_parameters(10) == 1);
  }
}

TEST_CASE("maximal parameters") {
  PrecisionGuard g(128);
  SECTION("Lambda = 3/16 converges to 3/4") {
    ChainSequenceProbe<R> probe{[](std::size_t) { return R(3) / 16; }, std::nullopt, "3/16"};
    auto M = maximal_parameters(probe, 10, 20, R(1e-30));
    REQUIRE(M.certified);
    CHECK(M.converged);
    for (const auto& v : M.values) CHECK(std::abs(d(v) - 0.75) < 1e-25);
    REQUIRE(M.nonincreasing.has_value());
    CHECK(*M.nonincreasing);
  }
  SECTION("Lambda = 1/4 converges slowly to 1/2") {
    // the backward iterate from horizon H sits at 1/2 + 1/(2(H-n)+2)
    ChainSequenceProbe<R> probe{[](std::size_t) { return R(1) / 4; }, std::nullopt, "1/4"};
    auto M = maximal_parameters(probe, 10, 20, R(1e-4));
    REQUIRE(M.certified);
    CHECK(M.converged);
    for (const auto& v : M.values) CHECK(std::abs(d(v) - 0.5) < 1e-4);
    const double expect0 = 0.5 + 1.0 / (2.0 * double(M.horizon) + 2.0);
    CHECK(std::abs(d(M.values[0]) - expect0) < 1e-12);
  }
  SECTION("Pollaczek phi: maximal exceeds minimal") {
    const PollaczekParams<R> p(R(0), R(1) / 4, R(0));
    ChainSequenceProbe<R> probe{[p](std::size_t n) { return p.phi(R(static_cast<long>(n))); }, std::nullopt, "phi"};
    auto M = maximal_parameters(probe, 50, 100, R(1e-6));
    REQUIRE(M.certified);
    auto cs = assoc_pollaczek(PollaczekParams<Q>(r(0), r(1, 4), r(0)));
    for (std::size_t n = 0; n <= 50; ++n) CHECK(M.values[n] > to_real(cs->c(n)));
    // M is itself a parameter sequence for phi
    for (std::size_t n = 1; n <= 50; ++n)
      CHECK(std::abs(d(R(M.values[n] * (1 - M.values[n - 1]) - p.phi(R(static_cast<long>(n)))))) < 1e-20);
  }
  SECTION("horizon precondition") {
    CHECK_THROWS_AS(maximal_parameters(constant_probe(r(1, 4)), 10, 5, r(1, 100)), DomainError);
  }
}

TEST_CASE("Worpitzky continued fractions") {
  PrecisionGuard g(128);
  SECTION("constant partials 1/8") {
    auto q = worpitzky_cf<R>([](std::size_t) { return R(1) / 8; }, 80);
    const double w = (1 - std::sqrt(0.5)) / 2;
    CHECK(std::abs(d(q.value) - 1 / (1 - w)) < 1e-15);
    CHECK(std::abs(d(q.value) - 1.17157) < 1e-5);
    CHECK(q.premise);
    REQUIRE(q.contained.has_value());
    CHECK(*q.contained);
    REQUIRE(q.tail_bound.has_value());
    CHECK(*q.tail_bound < R(1e-20));
  }
  SECTION("depth 0") {
    auto q = worpitzky_cf<Q>([](std::size_t) { return r(1, 8); }, 0);
    CHECK(q.value == 1);
  }
  SECTION("partials 1/A0(1)") {
    const Q A = ab_quantities(r(1, 2), 0, 1).A;
    auto q = worpitzky_cf<Q>([A](std::size_t) { return Q(1 / A); }, 30);
    REQUIRE(q.contained.has_value());
    CHECK(*q.contained);
  }
  SECTION("premise withheld") {
    auto q = worpitzky_cf<Q>([](std::size_t i) { return i == 3 ? r(1, 3) : r(1, 8); }, 5);
    CHECK_FALSE(q.premise);
    CHECK_FALSE(q.contained.has_value());
    CHECK_FALSE(q.tail_bound.has_value());
  }
  SECTION("random partials stay in [2/3, 2] and obey the tail bound") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(1, 249);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<Q> parts(41);
      for (auto& p : parts) p = Q(num(rng), 1000);
      auto f = [&parts](std::size_t i) { return parts[i]; };
      const std::size_t depth = 10 + trial % 20;
      auto q = worpitzky_cf<Q>(f, depth);
      REQUIRE(q.contained.has_value());
      CHECK(*q.contained);
      const auto deep = worpitzky_cf<Q>(f, 40);
      CHECK(abs_of(to_real(Q(q.value - deep.value))) <= *q.tail_bound);
    }
  }
}

TEST_CASE("A and B quantities") {
  CHECK(qleg_N(r(1, 2)) == 1);
  CHECK(qleg_N(r(3, 4)) == 4);
  auto ab = ab_quantities(r(1, 2), 0, 1);
  const Q p1 = r(-1, 2);
  const Q b2 = r(7, 15), b3 = r(35, 51), a2 = r(28, 93), c2 = r(36, 155), c3 = r(56, 381);
  CHECK(ab.B == (b2 - p1) * r(1, 2) / c2);
  CHECK(std::abs(d(ab.B) - 2.081) < 1e-3);
  CHECK(ab.A == (b2 - p1) * (b3 - p1) / (a2 * c3));
  CHECK(std::abs(d(ab.A) - 25.9) < 0.05);
  CHECK(ab.in_range);
  CHECK(ab.A_ok);
  CHECK(ab.B_ok);
  CHECK(ab.B_margin == ab.B - 1);

  SECTION("B_n(k) tends to 1/q") {
    for (auto q : {r(3, 10), r(1, 2), r(7, 10)})
      for (std::size_t n = 0; n <= 10; ++n) CHECK(std::abs(d(ab_quantities(q, n, 200).B_minus_inv_q)) < 1e-6);
  }
  SECTION("bounds hold past N") {
    for (auto q : {r(3, 10), r(1, 2), r(7, 10), r(3, 4)})
      for (std::size_t n = 0; n <= 5; ++n)
        for (std::size_t k = qleg_N(q); k <= qleg_N(q) + 30; ++k) {
          auto v = ab_quantities(q, n, k);
          CHECK(v.A_margin > 0);
          CHECK(v.B_margin > 0);
        }
  }
}

TEST_CASE("character ratio bound") {
  auto rep = ratio_bound_check(r(1, 2), 0, 40);
  CHECK(rep.pass());
  CHECK(rep.ratio.checked == 40);  // k = N..40 with N = 1
  // the ratio tends to 1, so the margin 4 - ratio approaches 3
  const auto cs = little_q_legendre(r(1, 2));
  const auto alpha = eval_sequence(*cs, 42, r(0));
  const Q last = abs_of(Q(alpha[41] / (alpha[40] * pow_int(r(1, 2), 41))));
  CHECK(std::abs(d(last) - 1) < 1e-3);
  for (std::size_t n = 0; n <= 5; ++n) CHECK(ratio_bound_check(r(3, 4), n, 40).pass());
  // envelope at j = 0 is the bound |alpha| <= 1
  for (std::size_t n = 0; n <= 5; ++n) {
    auto e = ratio_bound_check(r(3, 4), n, 4);
    CHECK(e.envelope.pass());
  }
}

TEST_CASE("psi recursion") {
  PrecisionGuard g(256);
  const auto tb = transform_params(r(0), r(1, 4), r(0));
  CHECK(tb.s(1) == r(6, 7));
  CHECK(tb.t(1) == r(1, 7));
  auto rep = pollaczek_psi(tb, 400);
  const double s3 = std::sqrt(3.0);
  CHECK(std::abs(d(rep.psi[1]) - s3 / 2) < 1e-15);
  CHECK(std::abs(d(rep.psi[2]) - 17 / (12 * s3)) < 1e-15);
  CHECK(std::abs(d(psi_lower_bound(tb, 2)) - 4 / (3 * s3)) < 1e-15);
  CHECK(rep.bound.pass());
  CHECK(rep.bound.checked == 400);
  CHECK(rep.product_rel_error < R(1e-60));
  for (auto [al, la, nu] : {std::tuple{r(1), r(1, 10), r(3)}, {r(2), r(1), r(1, 2)}, {r(-1, 4), r(1, 10), r(0)}}) {
    auto rp = pollaczek_psi(transform_params(al, la, nu), 300);
    CHECK(rp.bound.pass());
    CHECK(rp.product_rel_error < R(1e-50));
  }
}

TEST_CASE("chi and tau") {
  PrecisionGuard g(256);
  SECTION("nu = 0 families coincide") {
    auto rep = chi_tau(r(3), r(9, 2), r(0), 500);
    for (std::size_t n = 1; n <= 500; ++n) CHECK(rep.chi[n] == rep.chi_tilde[n]);
    for (const auto& v : rep.r) CHECK(std::abs(d(v) - 1) < 1e-60);
  }
  SECTION("(3, 9/2, 1)") {
    auto rep = chi_tau(r(3), r(9, 2), r(1), 10000);
    CHECK(rep.chi_le.pass());
    CHECK(rep.chi_tilde_increasing.pass());
    CHECK(rep.identity_residual < R(1e-60));
    CHECK(rep.chi1_residual < R(1e-70));
    const R omega = 2 * sqrt_real(R(3)) / 4;
    CHECK(std::abs(d(rep.chi_tilde[1]) - (2.0 / (8 + 4.5)) / d(R(omega * omega))) < 1e-15);
    CHECK(rep.cauchy_gap < R(1e-6));
    CHECK(rep.tau_estimate > 0);
    // r_{2n} - r_n shrinks
    const double g1 = std::abs(d(R(rep.r[200] - rep.r[100])));
    const double g2 = std::abs(d(R(rep.r[10000] - rep.r[5000])));
    CHECK(g2 < g1);
  }
}

TEST_CASE("claims A and B") {
  SECTION("(0, 1/4, 0)") {
    auto rep = pollaczek_claims_ab(PollaczekParams<Q>(r(0), r(1, 4), r(0)), 200, 500, 1000);
    CHECK(rep.transform_region);
    CHECK(rep.claim_a.pass());
    CHECK(rep.claim_a.checked == 201);
    CHECK(rep.even_derivative_zero.pass());
    CHECK(rep.claim_b.pass());
    CHECK_FALSE(rep.indeterminate);
    // a = 3 at these parameters
    CHECK(transform_params(r(0), r(1, 4), r(0)).a == 3);
  }
  SECTION("Case-1 threshold") {
    const double th = -1 + std::sqrt(5.0) / 2;
    CHECK(std::abs(d(case1_threshold(PollaczekParams<Q>(r(0), r(1, 5), r(0)))) - th) < 1e-15);
    CHECK(std::abs(th - 0.1180) < 1e-4);
    auto rep = pollaczek_claims_ab(PollaczekParams<Q>(r(0), r(1, 5), r(0)), 50, 50, 1000);
    CHECK(rep.case1_region);
    CHECK(rep.case1.pass());
    CHECK(rep.case1.checked == 1000);
    auto below = pollaczek_claims_ab(PollaczekParams<Q>(r(0), r(1, 20), r(0)), 50, 50, 100);
    CHECK_FALSE(below.case1_region);
    CHECK(below.claim_b.pass());
  }
  SECTION("outside the transform region only Case 1 is checked") {
    auto rep = pollaczek_claims_ab(PollaczekParams<Q>(r(0), r(1), r(0)), 50, 50, 200);
    CHECK_FALSE(rep.transform_region);
    CHECK(rep.claim_a.checked == 0);
    CHECK(rep.case1.pass());
  }
}

TEST_CASE("coefficient bound from the chain sequence") {
  for (auto al : {r(-2, 5), r(0), r(1)})
    for (auto la : {r(0), r(1, 10), r(1)})
      for (auto nu : {r(0), r(1)}) {
        auto rep = corollary_c_bound(PollaczekParams<Q>(al, la, nu), 200);
        CHECK(rep.pass());
      }
}

TEST_CASE("Turan inequality") {
  SECTION("random-walk families, exact") {
    for (bool tilde : {true, false}) {
      auto rep = turan_check(*random_walk(RandomWalkParams<Q>(r(3), r(9, 2), r(1), tilde)), 40, 32);
      CHECK(rep.pass());
      CHECK(rep.interior_positive.worst_margin.has_value());
      // endpoints give exactly zero because P_n(1) = 1 and P_n(-1) = (-1)^n
      CHECK(*rep.nonnegative.worst_margin == 0);
    }
  }
  SECTION("a decreasing c breaks it") {
    // c_1 = 1/2 then c_n = 1/10: P_2^2 - P_3 P_1 goes negative somewhere
    auto cs = std::make_shared<CoefficientSequence<Q>>(
        "synthetic", ParamList{}, [](std::size_t n, const std::deque<Coeff<Q>>&) -> Coeff<Q> {
          if (n == 0) return {r(1), r(0), r(0)};
          const Q c = n == 1 ? r(9, 10) : r(1, 10);
          return {Q(1 - c), r(0), c};
        });
    CHECK_FALSE(turan_check(*cs, 10, 32).pass());
  }
  SECTION("Laguerre at -2 lambda") {
    for (auto al : {r(-2, 5), r(0), r(2)}) {
      CHECK(laguerre_turan(Q(2 * al), r(0), 100, false).pass());
      CHECK(*laguerre_turan(Q(2 * al), r(0), 100, false).worst_margin == 0);
      for (auto la : {r(1, 10), r(1), r(5)}) CHECK(laguerre_turan(Q(2 * al), Q(-2 * la), 100, true).pass());
    }
  }
}
