#include <doctest.h>

#include <cmath>
#include <random>

#include "additive/errors.hpp"
#include "additive/hamel.hpp"

using namespace additive;
using namespace additive::hamel;

namespace {

QVector random_qvector(std::mt19937_64& rng, size_t arity, long height) {
  std::uniform_int_distribution<long> num(-height, height);
  std::uniform_int_distribution<long> den(1, height);
  QVector v;
  for (size_t k = 0; k < arity; ++k) v.set(k, Rational(num(rng), den(rng)));
  return v;
}

AdditiveMap wild_map() {  // e1 -> 0, e2 -> 1 over (1, sqrt2)
  return AdditiveMap(basis_q_sqrt2(), std::map<size_t, Rational>{{1, Rational(1)}});
}

}  // namespace

TEST_CASE("basis validation") {
  CHECK_THROWS_AS(HamelBasisSpec({}), ParseError);
  CHECK_THROWS_AS(HamelBasisSpec({{"a", 1.0}, {"a", 2.0}}), ParseError);
  CHECK_THROWS_AS(HamelBasisSpec({{"a", 1.0}, {"b", 1.0}}), ParseError);
  CHECK_THROWS_AS(HamelBasisSpec({{"a", 0.0}}), ParseError);
  CHECK(basis_q_sqrt2_sqrt3().size() == 3);
  CHECK(basis_q_sqrt2().index_of("e2") == 1);
  CHECK_FALSE(basis_q_sqrt2().index_of("e9").has_value());
}

TEST_CASE("qvector representation omits zeros") {
  QVector v;
  v.set(0, Rational(1, 2));
  v.set(0, Rational(0));
  CHECK(v.is_zero());
  QVector a = QVector::unit(0);
  QVector b = QVector::unit(0);
  QVector diff = a - b;
  CHECK(diff.is_zero());
  CHECK((Rational(0) * a).is_zero());
}

TEST_CASE("evaluate: direct substitution") {
  AdditiveMap f(basis_q_sqrt2(), std::map<size_t, Rational>{{0, Rational(1)}});
  QVector v;
  v.set(0, Rational(3, 2));
  v.set(1, Rational(5));
  CHECK(evaluate(f, v) == Rational(3, 2));

  CHECK(evaluate(f, QVector{}) == Rational(0));

  AdditiveMap g(basis_q_sqrt2(),
                std::map<size_t, Rational>{{0, Rational(2, 3)}, {1, Rational(-1, 7)}});
  QVector w;
  w.set(0, Rational(3));
  w.set(1, Rational(7));
  CHECK(evaluate(g, w) == Rational(1));  // 2 + (-1)

  QVector out_of_range;
  out_of_range.set(5, Rational(1));
  CHECK_THROWS_AS(evaluate(f, out_of_range), UnknownSymbol);
}

TEST_CASE("embed realizes the combination in binary64") {
  auto basis = basis_q_sqrt2();
  QVector v;
  v.set(0, Rational(1));
  v.set(1, Rational(1));
  CHECK(embed(basis, v) == doctest::Approx(2.41421356).epsilon(1e-8));
  CHECK(embed(basis, QVector{}) == 0.0);
  QVector w;
  w.set(0, Rational(1, 2));
  w.set(1, Rational(3, 2));
  CHECK(embed(basis, w) == doctest::Approx(2.62132034).epsilon(1e-8));
}

TEST_CASE("check_additive always passes for the exact evaluator") {
  AdditiveMap f(basis_q_sqrt2(),
                std::map<size_t, Rational>{{0, Rational(5, 3)}, {1, Rational(-2, 7)}});
  std::mt19937_64 rng(99);
  std::vector<std::pair<QVector, QVector>> pairs;
  for (int i = 0; i < 1000; ++i) {
    pairs.emplace_back(random_qvector(rng, 2, 100), random_qvector(rng, 2, 100));
  }
  auto report = check_additive(f, pairs);
  CHECK(report.passed);
  CHECK(report.pairs_checked == 1000);

  std::vector<std::pair<QVector, QVector>> basis_pair = {
      {QVector::unit(0), QVector::unit(1)}};
  CHECK(check_additive(f, basis_pair).passed);
}

TEST_CASE("check_additive exposes a binary64-rounding evaluator") {
  // Rounding through binary64 is exact under doubling (scaling by 2 never
  // rounds), so pairs (x, x) cannot fail; (1/3, 1/6) does: fl(1/3) + fl(1/6)
  // != 1/2 while the true sum 1/3 + 1/6 = 1/2 is dyadic.
  AdditiveMap f(basis_q(), std::map<size_t, Rational>{{0, Rational(1)}});
  ExactEvaluator corrupted = [&f](const QVector& v) {
    return Rational::from_double(evaluate(f, v).to_double());
  };
  QVector third, sixth;
  third.set(0, Rational(1, 3));
  sixth.set(0, Rational(1, 6));
  std::vector<std::pair<QVector, QVector>> pairs = {{third, sixth}};
  auto report = check_additive(corrupted, pairs);
  CHECK_FALSE(report.passed);
  REQUIRE(report.counterexample.has_value());
  CHECK(report.counterexample->lhs == Rational(1, 2));
  CHECK(report.counterexample->rhs != Rational(1, 2));

  // the doubling pair stays additive under the same corruption
  std::vector<std::pair<QVector, QVector>> doubling = {{third, third}};
  CHECK(check_additive(corrupted, doubling).passed);
}

TEST_CASE("period_check is exact evaluation at the candidate period") {
  AdditiveMap f(basis_q_sqrt2(), std::map<size_t, Rational>{{0, Rational(1)}});
  QVector p;
  p.set(1, Rational(17));
  CHECK(period_check(f, p));
  CHECK_FALSE(period_check(f, QVector::unit(0)));

  AdditiveMap g(basis_q_sqrt2_sqrt3(), std::map<size_t, Rational>{{0, Rational(1)}});
  QVector mix;
  mix.set(1, Rational(2, 3));
  mix.set(2, Rational(-5));
  CHECK(period_check(g, mix));
}

TEST_CASE("Q-homogeneity holds exactly") {
  AdditiveMap f(basis_q_sqrt2(),
                std::map<size_t, Rational>{{0, Rational(4, 9)}, {1, Rational(7, 5)}});
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 50);
  for (int i = 0; i < 500; ++i) {
    Rational q(num(rng), den(rng));
    QVector v = random_qvector(rng, 2, 100);
    CHECK(evaluate(f, q * v) == q * evaluate(f, v));
  }
}

TEST_CASE("periods form a Q-subspace") {
  AdditiveMap f(basis_q_sqrt2_sqrt3(), std::map<size_t, Rational>{{0, Rational(3)}});
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 20);
  for (int i = 0; i < 200; ++i) {
    QVector p1, p2;
    p1.set(1, Rational(num(rng), den(rng)));
    p1.set(2, Rational(num(rng), den(rng)));
    p2.set(1, Rational(num(rng), den(rng)));
    REQUIRE(period_check(f, p1));
    REQUIRE(period_check(f, p2));
    Rational q1(num(rng), den(rng)), q2(num(rng), den(rng));
    CHECK(period_check(f, q1 * p1 + q2 * p2));
  }
}

TEST_CASE("wild map is not monotone, hence not c*x") {
  auto f = wild_map();
  auto basis = f.basis();
  // embed(e2) < embed(2 e1) but f(e2) = 1 > 0 = f(2 e1)
  QVector v = QVector::unit(1);
  QVector w;
  w.set(0, Rational(2));
  CHECK(embed(basis, v) < embed(basis, w));
  CHECK(evaluate(f, v) > evaluate(f, w));
  // and an increasing pair, ruling out negative slopes too
  QVector v2 = QVector::unit(0);
  QVector w2 = QVector::unit(0) + QVector::unit(1);
  CHECK(embed(basis, v2) < embed(basis, w2));
  CHECK(evaluate(f, v2) < evaluate(f, w2));
}

TEST_CASE("qvector enumeration order is canonical") {
  std::vector<QVector> seen;
  enumerate_qvectors(1, 2, [&](const QVector& v) {
    seen.push_back(v);
    return true;
  });
  // height 1: -1, 0, 1; height 2 by (num, den): -2, -1/2, 1/2, 2
  REQUIRE(seen.size() == 7);
  CHECK(seen[0].coord(0) == Rational(-1));
  CHECK(seen[1].coord(0) == Rational(0));
  CHECK(seen[2].coord(0) == Rational(1));
  CHECK(seen[3].coord(0) == Rational(-2));
  CHECK(seen[4].coord(0) == Rational(-1, 2));
  CHECK(seen[5].coord(0) == Rational(1, 2));
  CHECK(seen[6].coord(0) == Rational(2));

  // arity 2: count for height <= 2 is 7^2, each vector exactly once
  std::vector<QVector> pairs;
  enumerate_qvectors(2, 2, [&](const QVector& v) {
    pairs.push_back(v);
    return true;
  });
  CHECK(pairs.size() == 49);
  for (size_t i = 0; i < pairs.size(); ++i) {
    for (size_t j = i + 1; j < pairs.size(); ++j) {
      CHECK_FALSE(pairs[i] == pairs[j]);
    }
  }
}

TEST_CASE("density witness: wild map saturates the window") {
  auto f = wild_map();
  Window window{0.0, 1.0, -5.0, 5.0};
  auto r50 = density_witness(f, window, 10, 50);
  CHECK(r50.coverage > 0.0);
  CHECK(r50.coverage <= 1.0);
  auto r200 = density_witness(f, window, 10, 200);
  CHECK(r200.coverage >= r50.coverage);
  // golden values from the bounded search
  CHECK(r50.coverage == 1.0);
  CHECK(r200.coverage == 1.0);
  CHECK(r50.representatives.size() == 100);
}

TEST_CASE("density witness: linear control stays on a line") {
  AdditiveMap control(basis_q(), std::map<size_t, Rational>{{0, Rational(1)}});
  Window window{0.0, 1.0, -5.0, 5.0};
  auto report = density_witness(control, window, 10, 200);
  CHECK(report.coverage <= 0.3);
  CHECK(report.coverage == 0.11);  // golden: cells crossed by y = x
  for (const auto& p : report.representatives) {
    CHECK(p.x == doctest::Approx(p.y).epsilon(1e-12));
  }
}

TEST_CASE("density witness: coverage is non-decreasing in height") {
  auto f = wild_map();
  Window window{0.0, 1.0, -5.0, 5.0};
  double prev = 0.0;
  for (long h : {1L, 2L, 3L, 4L, 6L, 8L}) {
    auto report = density_witness(f, window, 10, h);
    CHECK(report.coverage >= prev);
    prev = report.coverage;
  }
  CHECK(prev > 0.0);
}

TEST_CASE("density witness rejects bad windows") {
  auto f = wild_map();
  CHECK_THROWS_AS(density_witness(f, Window{0.0, 0.0, -5.0, 5.0}, 10, 10),
                  InvalidWindow);
  CHECK_THROWS_AS(density_witness(f, Window{1.0, 0.0, -5.0, 5.0}, 10, 10),
                  InvalidWindow);
}
