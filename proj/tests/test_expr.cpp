#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "contracta/expr.hpp"

using namespace contracta;

namespace {

double eval_xy(const std::string& text, double x, double y) {
  return Expr::parse(text).eval(Bindings::for_xy(x, y));
}

double eval_x(const std::string& text, double x) {
  return Expr::parse(text).eval(Bindings::for_x(x));
}

}  // namespace

TEST_CASE("basic arithmetic") {
  CHECK(eval_xy("abs(x - y)", 0.3, 0.7) == std::fabs(0.3 - 0.7));
  CHECK(eval_xy("abs(x - y)", 0.3, 0.7) == doctest::Approx(0.4));
  CHECK(eval_xy("(x - y)^2", 0.0, 2.0) == 4.0);
  CHECK(eval_x("x / 2", 1.0) == 0.5);
  CHECK(eval_x("1 + 2 * 3", 0.0) == 7.0);
  CHECK(eval_x("(1 + 2) * 3", 0.0) == 9.0);
  CHECK(eval_x("min(3, max(1, 2))", 0.0) == 2.0);
  CHECK(eval_x("exp(0)", 0.0) == 1.0);
}

TEST_CASE("squared difference matches repeated multiplication exactly") {
  for (double x : {0.1, 0.3, 1.7, -0.9})
    for (double y : {0.0, 0.25, -1.3}) {
      double d = x - y;
      CHECK(eval_xy("(x - y)^2", x, y) == d * d);
    }
}

TEST_CASE("unary minus and power binding") {
  CHECK(eval_x("-x^2", 3.0) == -9.0);     // -(x^2)
  CHECK(eval_x("(-x)^2", 3.0) == 9.0);
  CHECK(eval_x("2^-1", 0.0) == 0.5);      // unary minus in the exponent
  CHECK(eval_x("2^2^3", 0.0) == 64.0);    // left-associative: (2^2)^3
  CHECK(eval_x("1 - -1", 0.0) == 2.0);
}

TEST_CASE("piecewise evaluates branch conditions exactly") {
  const std::string leader = "piecewise(x <= 1/2 : x/3 ; x/3 + 1/4)";
  CHECK(eval_x(leader, 0.75) == 0.5);
  CHECK(eval_x(leader, 0.5) == 0.5 / 3.0);  // boundary goes left
  CHECK(eval_x(leader, 0.0) == 0.0);
  // multi-branch with fallback
  const std::string steps =
      "piecewise(t < 1 : 0 ; t < 2 : 1 ; 2)";
  CHECK(Expr::parse(steps).eval(Bindings::for_t(0.5)) == 0.0);
  CHECK(Expr::parse(steps).eval(Bindings::for_t(1.5)) == 1.0);
  CHECK(Expr::parse(steps).eval(Bindings::for_t(5.0)) == 2.0);
}

TEST_CASE("variable t for comparison functions") {
  CHECK(Expr::parse("t / (1 + t)").eval(Bindings::for_t(1.0)) == 0.5);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(Expr::parse(""), ParseError);
  CHECK_THROWS_AS(Expr::parse("1 +"), ParseError);
  CHECK_THROWS_AS(Expr::parse("foo(3)"), ParseError);
  CHECK_THROWS_AS(Expr::parse("x + * y"), ParseError);
  CHECK_THROWS_AS(Expr::parse("min(1)"), ParseError);
  CHECK_THROWS_AS(Expr::parse("piecewise(x : 1)"), ParseError);
  CHECK_THROWS_AS(Expr::parse("piecewise(x < 1 : 1)"), ParseError);
  CHECK_THROWS_AS(Expr::parse("(1 + 2"), ParseError);
  try {
    Expr::parse("1 + @");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("evaluation errors name the subexpression") {
  CHECK_THROWS_AS(eval_x("1 / (x - 1)", 1.0), EvaluationError);
  CHECK_THROWS_AS(eval_x("0 ^ -2", 0.0), EvaluationError);
  CHECK_THROWS_AS(Expr::parse("x + t").eval(Bindings::for_x(1.0)),
                  EvaluationError);
  try {
    eval_x("2 + 1/(x - 1)", 1.0);
    CHECK(false);
  } catch (const EvaluationError& e) {
    CHECK(std::string(e.what()).find("1/(x - 1)") != std::string::npos);
  }
}

TEST_CASE("unbound variables are rejected, bound ones fine") {
  Expr e = Expr::parse("x * t");
  Bindings b;
  b.x = 2.0;
  b.t = 3.0;
  CHECK(e.eval(b) == 6.0);
  b.t.reset();
  CHECK_THROWS_AS(e.eval(b), EvaluationError);
}

TEST_CASE("scientific notation literals") {
  CHECK(eval_x("1e-3", 0.0) == 1e-3);
  CHECK(eval_x("2.5E2", 0.0) == 250.0);
  CHECK(eval_x("1e-3 + x", 1.0) == doctest::Approx(1.001).epsilon(1e-15));
}
