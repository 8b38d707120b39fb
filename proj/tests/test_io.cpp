#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "additive/errors.hpp"
#include "additive/expr.hpp"
#include "additive/hamel_json.hpp"
#include "additive/sample_table.hpp"

using namespace additive;
using nlohmann::ordered_json;

namespace {
constexpr double kPi = std::numbers::pi;

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}
}  // namespace

TEST_CASE("expression parsing and evaluation") {
  CHECK(Expression::parse("3*x").eval(Point{2.0}) == 6.0);
  CHECK(Expression::parse("2*x+1").eval(Point{3.0}) == 7.0);
  CHECK(Expression::parse("x^2").eval(Point{1.5}) == doctest::Approx(2.25));
  CHECK(Expression::parse("x^3-x").eval(Point{2.0}) == doctest::Approx(6.0));
  CHECK(Expression::parse("sin(2*pi*x)").eval(Point{0.25}) == doctest::Approx(1.0));
  CHECK(Expression::parse("-x").eval(Point{4.0}) == -4.0);
  CHECK(Expression::parse("1/x").eval(Point{0.5}) == doctest::Approx(2.0));
  CHECK(Expression::parse("exp(0*x)").eval(Point{9.0}) == doctest::Approx(1.0));
  CHECK(Expression::parse("sqrt(abs(-4))").eval(Point{0.0}) == doctest::Approx(2.0));
  CHECK(Expression::parse("(x+1)*(x-1)").eval(Point{3.0}) == doctest::Approx(8.0));

  Expression plane = Expression::parse("x1+2*x2");
  CHECK(plane.min_dimension() == 2);
  CHECK(plane.eval(Point{1.0, 3.0}) == 7.0);

  CHECK(Expression::parse("pi").eval(Point{0.0}) == doctest::Approx(kPi));
}

TEST_CASE("expression parse errors") {
  CHECK_THROWS_AS(Expression::parse(""), ParseError);
  CHECK_THROWS_AS(Expression::parse("2**3"), ParseError);
  CHECK_THROWS_AS(Expression::parse("sin("), ParseError);
  CHECK_THROWS_AS(Expression::parse("foo(1)"), ParseError);
  CHECK_THROWS_AS(Expression::parse("x0"), ParseError);
  CHECK_THROWS_AS(Expression::parse("1 + "), ParseError);
  CHECK_THROWS_AS(Expression::parse("(1"), ParseError);
  CHECK_THROWS_AS(Expression::parse("x^y"), ParseError);
}

TEST_CASE("expression oracle dimension checks") {
  Expression plane = Expression::parse("x1+2*x2");
  CHECK_THROWS_AS(plane.oracle(1), DimensionMismatch);
  auto oracle = plane.oracle(2);
  CHECK(oracle.eval(Point{1.0, 1.0}) == 3.0);
}

TEST_CASE("hamel json round trip is canonical") {
  ordered_json doc = ordered_json::parse(R"({
    "basis": [{"label": "e1", "embedding": 1.0},
              {"label": "e2", "embedding": 1.4142135623730951}],
    "assignments": {"e2": "2/4"}
  })");
  auto map = hamel::additive_map_from_json(doc);
  CHECK(map.assignment(1) == Rational(1, 2));

  std::string first = hamel::canonical_json_text(map);
  auto reparsed = hamel::additive_map_from_json(ordered_json::parse(first));
  CHECK(hamel::canonical_json_text(reparsed) == first);
  // canonical form reduces the rational
  CHECK(first.find("\"1/2\"") != std::string::npos);
}

TEST_CASE("hamel json validation errors") {
  auto parse = [](const char* text) {
    return hamel::additive_map_from_json(ordered_json::parse(text));
  };
  CHECK_THROWS_WITH_AS(
      parse(R"({"basis": [{"label":"a","embedding":1.0},
                           {"label":"a","embedding":2.0}]})"),
      doctest::Contains("duplicate label"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse(R"({"basis": [{"label":"a","embedding":1.0}],
                "assignments": {"a": "2/0"}})"),
      doctest::Contains("denominator must be positive"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse(R"({"basis": [{"label":"a","embedding":1.0}],
                "assignments": {"zz": "1/2"}})"),
      doctest::Contains("unknown symbol"), UnknownSymbol);
  CHECK_THROWS_AS(parse(R"({"assignments": {}})"), ParseError);
  CHECK_THROWS_AS(parse(R"({"basis": [{"label":"a","embedding":"x"}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"({"basis": [{"label":"a","embedding":1.0}],
                             "extra": 1})"),
                  ParseError);
  CHECK_THROWS_AS(parse(R"({"basis": [{"label":"a","embedding":1.0}],
                             "assignments": {"a": 0.5}})"),
                  ParseError);
}

TEST_CASE("sample table: load, lookup, grid validation") {
  auto path = temp_file("additive_test_samples.csv");
  {
    std::ofstream out(path);
    out << "x1,value\n";
    out.precision(17);
    for (int j = 0; j < 8; ++j) {
      double x = (j + 0.5) / 8.0;
      out << x << "," << 3.0 * x << "\n";
    }
    out << 1.0 << "," << 3.0 << "\n";  // generator endpoint
  }
  auto table = SampleTable::load_csv(path.string());
  CHECK(table.dimension() == 1);
  CHECK(table.size() == 9);

  auto oracle = table.oracle();
  CHECK(oracle.eval(Point{0.0625}) == doctest::Approx(0.1875));
  CHECK(oracle.eval(Point{1.0}) == 3.0);
  CHECK_THROWS_AS(oracle.eval(Point{0.1234}), OracleFailure);

  auto I = Parallelepiped::interval(0, 1);
  table.validate_grid(I, GridSpec{8});
  CHECK_THROWS_WITH_AS(table.validate_grid(I, GridSpec{16}),
                       doctest::Contains("missing midpoint node"), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("sample table: header and row errors") {
  std::istringstream bad_header("a,b\n1,2\n");
  CHECK_THROWS_AS(SampleTable::parse_csv(bad_header, "test"), ParseError);
  std::istringstream bad_column("x1,x3,value\n1,2,3\n");
  CHECK_THROWS_AS(SampleTable::parse_csv(bad_column, "test"), ParseError);
  std::istringstream bad_number("x1,value\nfoo,2\n");
  CHECK_THROWS_AS(SampleTable::parse_csv(bad_number, "test"), ParseError);
  std::istringstream short_row("x1,x2,value\n1,2\n");
  CHECK_THROWS_AS(SampleTable::parse_csv(short_row, "test"), ParseError);
}

TEST_CASE("torus values csv loader") {
  auto path = temp_file("additive_test_torus.csv");
  {
    std::ofstream out(path);
    out << "x1,value\n";
    out << "0/4,0.0\n";
    out << "1/4,0.0\n";
    out << "2/4,0.0\n";
    out << "3/4,0.0\n";
  }
  auto table = load_torus_values_csv(path.string(), 4, 1);
  CHECK(torus::torsion_vanishing(table).is_zero());

  {
    std::ofstream out(path);
    out << "x1,value\n";
    out << "0/4,0.0\n";
  }
  CHECK_THROWS_AS(load_torus_values_csv(path.string(), 4, 1), IncompleteData);
  std::filesystem::remove(path);
}
