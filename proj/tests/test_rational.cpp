#include <doctest.h>

#include <random>

#include "additive/errors.hpp"
#include "additive/rational.hpp"

using namespace additive;

namespace {
Rational random_rational(std::mt19937_64& rng, long height) {
  std::uniform_int_distribution<long> num(-height, height);
  std::uniform_int_distribution<long> den(1, height);
  return Rational(num(rng), den(rng));
}
}  // namespace

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(1, -2).str() == "-1/2");
  CHECK(Rational(-3, -6).str() == "1/2");
  CHECK(Rational(0, 7).str() == "0/1");
  CHECK(Rational(5).str() == "5/1");
  CHECK_THROWS_AS(Rational(1, 0), ParseError);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::from_string("3/4") == Rational(3, 4));
  CHECK(Rational::from_string("-7/2") == Rational(-7, 2));
  CHECK(Rational::from_string("5") == Rational(5));
  CHECK(Rational::from_string("6/4") == Rational(3, 2));
  CHECK_THROWS_WITH_AS(Rational::from_string("2/0"),
                       doctest::Contains("denominator must be positive"),
                       ParseError);
  CHECK_THROWS_AS(Rational::from_string("1/-2"), ParseError);
  CHECK_THROWS_AS(Rational::from_string("+3/4"), ParseError);
  CHECK_THROWS_AS(Rational::from_string(" 3/4"), ParseError);
  CHECK_THROWS_AS(Rational::from_string("abc"), ParseError);
  CHECK_THROWS_AS(Rational::from_string("1/2/3"), ParseError);
  CHECK_THROWS_AS(Rational::from_string(""), ParseError);
  CHECK_THROWS_AS(Rational::from_string("1.5"), ParseError);
}

TEST_CASE("rational from_double is exact on dyadics") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(-0.375) == Rational(-3, 8));
  CHECK(Rational::from_double(3.0) == Rational(3));
  // 0.1 is not 1/10 in binary64; conversion must reproduce the actual value
  Rational tenth = Rational::from_double(0.1);
  CHECK(tenth != Rational(1, 10));
  CHECK(tenth.to_double() == 0.1);
  CHECK_THROWS_AS(Rational::from_double(std::nan("")), ParseError);
  CHECK_THROWS_AS(Rational::from_double(1.0 / 0.0), ParseError);
}

TEST_CASE("rational arithmetic is exact: associativity and distributivity") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    Rational a = random_rational(rng, 100);
    Rational b = random_rational(rng, 100);
    Rational c = random_rational(rng, 100);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("rational arbitrary precision") {
  // (1/3)^40 * 3^40 == 1 without overflow
  Rational r(1);
  for (int i = 0; i < 40; ++i) r *= Rational(1, 3);
  for (int i = 0; i < 40; ++i) r *= Rational(3);
  CHECK(r == Rational(1));

  Rational big = Rational::from_string("100000000000000000000000000001/7");
  CHECK(big.numerator_str() == "100000000000000000000000000001");
  CHECK(big.denominator_str() == "7");
  CHECK(Rational::from_string(big.str()) == big);

  // canonicalization reaches across word boundaries too
  CHECK(Rational::from_string("123456789012345678901234567890/7") ==
        Rational::from_string("17636684144620811271604938270"));
}

TEST_CASE("rational ordering and helpers") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(7, 3).floor() == Rational(2));
  CHECK(Rational(-1, 3).floor() == Rational(-1));
  CHECK(Rational(7, 3).mod1() == Rational(1, 3));
  CHECK(Rational(-1, 3).mod1() == Rational(2, 3));
  CHECK(Rational(5, 2).mod1() == Rational(1, 2));
  CHECK(Rational(3, 4).height() == 4);
  CHECK(Rational(-7, 2).height() == 7);
  CHECK(Rational(0).height() == 1);
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK(Rational(-9, 8).abs() == Rational(9, 8));
  CHECK_THROWS_AS(Rational(1) / Rational(0), ParseError);
}
