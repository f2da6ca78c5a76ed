#include <catch_amalgamated.hpp>

#include <hypergroup/scalar.hpp>

using namespace hypergroup;

TEST_CASE("rationals are stored reduced with positive denominator") {
  Rational r = parse_rational("-6/4");
  CHECK(to_string(r) == "-3/2");
  CHECK(mp::denominator(r) > 0);
  CHECK(to_string(parse_rational("10/5")) == "2");
  CHECK(to_string(parse_rational(" 7 ")) == "7");
}

TEST_CASE("decimal literals parse to their exact rational value") {
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5e2") == Rational(-150));
  CHECK(parse_rational("2e-3") == Rational(1, 500));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
}

TEST_CASE("Scalar parse chooses exact or float by literal form") {
  CHECK(Scalar::parse("1/3").is_exact());
  CHECK(Scalar::parse("-4").is_exact());
  Scalar d = Scalar::parse("0.1", 128);
  REQUIRE_FALSE(d.is_exact());
  CHECK(*d.precision() >= 128);
  CHECK(*d.precision() < 140);
}

TEST_CASE("mixed arithmetic promotes to the float's precision") {
  Scalar third = Scalar::parse("1/3");
  Scalar f = Scalar::parse("0.5", 100);
  Scalar s = third + f;
  REQUIRE_FALSE(s.is_exact());
  CHECK(s.precision() == f.precision());
  Scalar e = third * Scalar(Rational(3));
  REQUIRE(e.is_exact());
  CHECK(e.rational() == 1);
  CHECK(Scalar::parse("1/2") == Scalar::parse("0.5"));
  CHECK(Scalar::parse("1/3") < Scalar::parse("0.34"));
  CHECK_THROWS_AS(third / Scalar(0L), DomainError);
}

TEST_CASE("float printing round-trips with the shortest decimal") {
  PrecisionGuard g(256);
  BigFloat x = BigFloat(1) / 3;
  std::string text = to_string(x);
  BigFloat back(text);
  CHECK(back == x);
  CHECK(to_string(BigFloat(0.5)) == "0.5");
  CHECK(to_string(BigFloat(1234.25)) == "1234.25");
  CHECK(to_string(BigFloat(0.001)).substr(0, 5) == "0.001");
  CHECK(to_string(mp::ldexp(BigFloat(1), 100)) == "1.267650600228229401496703205376e30");
  CHECK(to_string(BigFloat(0)) == "0");
  CHECK(to_string(BigFloat(-3)) == "-3");
}

TEST_CASE("precision guard restores the previous default") {
  unsigned before = current_precision_bits();
  {
    PrecisionGuard g(512);
    CHECK(current_precision_bits() >= 512);
  }
  CHECK(current_precision_bits() == before);
}

TEST_CASE("pow_int is exact for rationals") {
  CHECK(pow_int(Rational(1, 2), 10) == Rational(1, 1024));
  CHECK(pow_int(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(pow_int(Rational(5), 0) == 1);
}
