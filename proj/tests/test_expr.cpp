#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "diskop/expr.hpp"

using namespace diskop;

namespace {

Complex random_point(std::mt19937& rng, double rmax) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double r = rmax * U(rng);
  double th = 2.0 * kPi * U(rng);
  return {r * std::cos(th), r * std::sin(th)};
}

// central difference with a real step; valid for holomorphic functions
Complex fd_derivative(const ExprAST& e, Complex z, double h = 1e-6) {
  return (eval_ast(e, z + Complex(h, 0)) - eval_ast(e, z - Complex(h, 0))) / (2.0 * h);
}

}  // namespace

TEST_CASE("parse + eval of the canonical symbols") {
  ExprAST a = parse("1/(1-z)");
  CHECK(std::abs(eval_ast(a, {0, 0}) - Complex(1, 0)) == 0.0);

  ExprAST b = parse("log(1/(1-z))");
  CHECK(std::abs(eval_ast(b, {0, 0})) == 0.0);

  ExprAST c = parse("(1-z)^(-0.5)");
  CHECK(std::abs(eval_ast(c, {0.75, 0}) - Complex(2, 0)) < 1e-14);

  ExprAST d = parse("z");
  CHECK(eval_ast(d, {0.3, 0.4}) == Complex(0.3, 0.4));

  CHECK(std::abs(eval_ast(a, {0.99, 0}) - Complex(100, 0)) < 1e-10);
  CHECK(std::abs(eval_ast(parse("exp(z)"), {0, 0}) - Complex(1, 0)) == 0.0);
  CHECK(std::abs(eval_ast(parse("i*i"), {0, 0}) - Complex(-1, 0)) == 0.0);
}

TEST_CASE("parse errors carry positions; unknown identifiers are rejected") {
  CHECK_THROWS_AS((void)parse("1+"), ParseError);
  CHECK_THROWS_AS((void)parse("(1-z"), ParseError);
  CHECK_THROWS_AS((void)parse("1/(1-w)"), ParseError);
  CHECK_THROWS_AS((void)parse("sin(z)"), ParseError);
  try {
    (void)parse("1*%z");
  } catch (const ParseError& e) {
    CHECK(e.position == 2);
  }
}

TEST_CASE("identically-zero denominators are rejected at parse time") {
  CHECK_THROWS_AS((void)parse("1/(z-z)"), ParseError);
  CHECK_NOTHROW((void)parse("1/(1-z)"));
  CHECK_NOTHROW((void)parse("z/(z+0.001)"));  // singular somewhere, but not identically zero
}

TEST_CASE("evaluation never returns silent non-finite values") {
  ExprAST pole = parse("1/(1-z)");
  CHECK_THROWS_AS((void)eval_ast(pole, {1.0, 0.0}), SingularityError);
  ExprAST logpole = parse("log(1/(1-z))");
  CHECK_THROWS_AS((void)eval_ast(logpole, {1.0, 0.0}), SingularityError);
}

TEST_CASE("symbolic derivatives of the canonical symbols") {
  ExprAST dlog = differentiate_ast(parse("log(1/(1-z))"));
  CHECK(std::abs(eval_ast(dlog, {0.5, 0}) - Complex(2, 0)) < 1e-13);

  ExprAST dc = differentiate_ast(parse("3"));
  CHECK(std::abs(eval_ast(dc, {0.4, 0.1})) == 0.0);

  ExprAST dp = differentiate_ast(parse("(1-z)^(-0.5)"));
  CHECK(std::abs(eval_ast(dp, {0, 0}) - Complex(0.5, 0)) < 1e-14);
}

TEST_CASE("symbolic derivative matches central finite differences") {
  const std::vector<std::string> symbols = {
      "1/(1-z)", "log(1/(1-z))", "(1-z)^(-0.25)", "(1-z)^(-0.5)",
      "(1-z)^(-0.75)", "z^2", "exp(z)"};
  std::mt19937 rng(101);
  for (const auto& text : symbols) {
    ExprAST e = parse(text);
    ExprAST de = differentiate_ast(e);
    for (int trial = 0; trial < 32; ++trial) {
      Complex z = random_point(rng, 0.9);
      Complex sym = eval_ast(de, z);
      Complex fd = fd_derivative(e, z);
      CHECK(std::abs(sym - fd) <= 1e-6 * std::max(1e-12, std::abs(sym)));
    }
  }
}

TEST_CASE("to_series: geometric, monomial, log expansions") {
  TaylorSeries geo = to_series(parse("1/(1-z)"), 3);
  for (int k = 0; k <= 3; ++k) CHECK(std::abs(geo.coeff(k) - Complex(1, 0)) < 1e-14);

  TaylorSeries mono = to_series(parse("z^2"), 4);
  for (int k = 0; k <= 4; ++k) {
    Complex want = (k == 2) ? Complex(1, 0) : Complex(0, 0);
    CHECK(std::abs(mono.coeff(k) - want) == 0.0);
  }

  TaylorSeries lg = to_series(parse("log(1/(1-z))"), 4);
  CHECK(std::abs(lg.coeff(0)) < 1e-15);
  CHECK(std::abs(lg.coeff(1) - Complex(1.0, 0)) < 1e-14);
  CHECK(std::abs(lg.coeff(2) - Complex(0.5, 0)) < 1e-14);
  CHECK(std::abs(lg.coeff(3) - Complex(1.0 / 3.0, 0)) < 1e-14);
  CHECK(std::abs(lg.coeff(4) - Complex(0.25, 0)) < 1e-14);
}

TEST_CASE("to_series agrees with pointwise evaluation inside |z| <= 0.5") {
  const std::vector<std::string> symbols = {"1/(1-z)", "log(1/(1-z))", "(1-z)^(-0.5)",
                                            "exp(z)", "(1+z)^2"};
  std::mt19937 rng(103);
  for (const auto& text : symbols) {
    ExprAST e = parse(text);
    TaylorSeries s = to_series(e, kDefaultDegreeCap);
    for (int trial = 0; trial < 25; ++trial) {
      Complex z = random_point(rng, 0.5);
      CHECK(std::abs(eval(s, z) - eval_ast(e, z)) < 1e-10);
    }
  }
}

TEST_CASE("to_series rejects symbols singular at the origin") {
  CHECK_THROWS_AS((void)to_series(parse("1/z"), 8), SingularityError);
  CHECK_THROWS_AS((void)to_series(parse("log(z)"), 8), SingularityError);
  CHECK_THROWS_AS((void)to_series(parse("z^(-0.5)"), 8), SingularityError);
}

TEST_CASE("print and re-parse yields the same evaluation") {
  const std::vector<std::string> symbols = {
      "1/(1-z)", "log(1/(1-z))", "(1-z)^(-0.75)", "z^2-3*z+0.5",
      "exp(z)*(1+i*z)", "-z+1", "(1-z)^2/(1+z)"};
  std::mt19937 rng(107);
  for (const auto& text : symbols) {
    ExprAST e = parse(text);
    ExprAST round = parse(to_string(e));
    for (int trial = 0; trial < 16; ++trial) {
      Complex z = random_point(rng, 0.8);
      CHECK(std::abs(eval_ast(e, z) - eval_ast(round, z)) < 1e-12);
    }
  }
}

TEST_CASE("programmatic builders fold constants") {
  ExprAST k = ast::mul(ast::literal(1.0), ast::var());
  CHECK(to_string(k) == "z");
  ExprAST p = ast::pow(ast::var(), 1.0);
  CHECK(to_string(p) == "z");
  ExprAST zsum = ast::add(ast::literal(2.0), ast::literal(3.0));
  CHECK(std::abs(eval_ast(zsum, {0, 0}) - Complex(5, 0)) == 0.0);
}
