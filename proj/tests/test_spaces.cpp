#include <doctest.h>

#include <cmath>
#include <random>

#include "diskop/spaces.hpp"

using namespace diskop;

namespace {

FunctionHandle poly_handle(std::initializer_list<Complex> cs) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(cs.size()));
  Eigen::Index i = 0;
  for (Complex c : cs) v[i++] = c;
  return FunctionHandle::from_series(TaylorSeries(std::move(v)));
}

}  // namespace

TEST_CASE("point-evaluation norm formulas") {
  // 0.6 is not a dyadic rational, so 1 - |z|^2 and the power are each one
  // rounding away from exact; the result sits within an ulp of 5/4
  CHECK(point_eval_norm(SpaceDescriptor::hardy(2.0), {0.6, 0}).value ==
        doctest::Approx(1.25).epsilon(1e-15));
  CHECK(point_eval_norm(SpaceDescriptor::bergman(2.0, 0.0), {0, 0}).value == 1.0);

  PointEvalNorm bl = point_eval_norm(
      SpaceDescriptor::bloch_type(Weight::classical_power(1.0)), {0.6, 0});
  CHECK(bl.value == doctest::Approx(std::log(1.0 / 0.64)).epsilon(1e-12));
  CHECK(bl.equivalence_class);

  PointEvalNorm bsmall = point_eval_norm(
      SpaceDescriptor::bloch_type(Weight::classical_power(0.5)), {0.9, 0});
  CHECK(bsmall.value == 1.0);
  CHECK(bsmall.equivalence_class);

  PointEvalNorm blarge = point_eval_norm(
      SpaceDescriptor::bloch_type(Weight::classical_power(2.0)), {0.6, 0});
  CHECK(blarge.value == doctest::Approx(1.0 / 0.64).epsilon(1e-12));

  PointEvalNorm gr = point_eval_norm(
      SpaceDescriptor::growth(Weight::classical_power(2.0)), {0.6, 0});
  CHECK(gr.value == doctest::Approx(std::pow(0.64, -2.0)).epsilon(1e-12));
  CHECK_FALSE(gr.equivalence_class);

  CHECK_THROWS_AS((void)point_eval_norm(
                      SpaceDescriptor::bloch_type(Weight::log_weight()), {0.5, 0}),
                  UnsupportedError);
}

TEST_CASE("point-evaluation norms are positive and blow up at the boundary") {
  for (const auto& X :
       {SpaceDescriptor::hardy(2.0), SpaceDescriptor::bergman(2.0, 0.0),
        SpaceDescriptor::growth(Weight::classical_power(1.0)),
        SpaceDescriptor::bloch_type(Weight::classical_power(1.5))}) {
    double prev = 0.0;
    for (int j = 1; j <= 30; ++j) {
      double h = std::ldexp(1.0, -j);
      double val = point_eval_norm_radial(X, h * (2.0 - h)).value;
      CHECK(val > 0.0);
      CHECK(val >= prev);
      prev = val;
    }
    CHECK(prev > 1e3);
  }
}

TEST_CASE("space parameter validation") {
  CHECK_THROWS_AS((void)SpaceDescriptor::hardy(1.0), DomainError);
  CHECK_THROWS_AS((void)SpaceDescriptor::bergman(0.0, 0.0), DomainError);
  CHECK_THROWS_AS((void)SpaceDescriptor::bergman(2.0, -1.0), DomainError);
}

TEST_CASE("Hardy(2) norm of polynomials matches the coefficient l2 norm") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    int degree = 8 + 8 * trial;
    Eigen::VectorXcd c(degree + 1);
    double l2sq = 0.0;
    for (int k = 0; k <= degree; ++k) {
      c[k] = Complex(U(rng), U(rng));
      l2sq += std::norm(c[k]);
    }
    FunctionHandle f = FunctionHandle::from_series(TaylorSeries(std::move(c)));
    double n = space_norm(SpaceDescriptor::hardy(2.0), f);
    CHECK(n == doctest::Approx(std::sqrt(l2sq)).epsilon(1e-8));
  }
}

TEST_CASE("Hardy(2) norm of the normalised kernel is 1") {
  SpaceDescriptor H2 = SpaceDescriptor::hardy(2.0);
  FunctionHandle k = normalized_kernel(H2, 0.5);
  CHECK(space_norm(H2, k) == doctest::Approx(1.0).epsilon(1e-6));
  // |k_w(w)| attains the point-evaluation norm
  CHECK(std::abs(k.value({0.5, 0})) ==
        doctest::Approx(point_eval_norm(H2, {0.5, 0}).value).epsilon(1e-12));
}

TEST_CASE("Bergman(2,0) norms of monomials match (k+1)^(-1/2)") {
  SpaceDescriptor A = SpaceDescriptor::bergman(2.0, 0.0);
  for (int k = 0; k <= 16; ++k) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(k + 1);
    c[k] = 1.0;
    FunctionHandle f = FunctionHandle::from_series(TaylorSeries(std::move(c)));
    CHECK(space_norm(A, f) == doctest::Approx(1.0 / std::sqrt(k + 1.0)).epsilon(1e-6));
  }
}

TEST_CASE("Bergman normalised kernels have unit norm away from p = 2") {
  SpaceDescriptor A = SpaceDescriptor::bergman(3.0, 0.5);
  FunctionHandle k = normalized_kernel(A, 0.4);
  CHECK(space_norm(A, k) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("growth norms: constants and the half-plane singular example") {
  SpaceDescriptor G1 = SpaceDescriptor::growth(Weight::classical_power(1.0));
  CHECK(space_norm(G1, poly_handle({1.0})) == doctest::Approx(1.0).epsilon(1e-12));

  FunctionHandle f = FunctionHandle::from_ast(parse("1/(1-z)"));
  CHECK(space_norm(G1, f) == doctest::Approx(2.0).epsilon(1e-3));

  SpaceDescriptor Ghalf = SpaceDescriptor::growth(Weight::classical_power(0.5));
  CHECK(space_norm(Ghalf, poly_handle({1.0})) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Bloch-type seminorm via the derivative") {
  SpaceDescriptor B1 = SpaceDescriptor::bloch_type(Weight::classical_power(1.0));
  FunctionHandle f = FunctionHandle::from_ast(parse("log(1/(1-z))"));
  CHECK(space_norm(B1, f) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("grid refinement never decreases sup-type norm estimates") {
  SpaceDescriptor G = SpaceDescriptor::growth(Weight::classical_power(1.0));
  FunctionHandle f = FunctionHandle::from_ast(parse("1/(1-z)"));
  NormOptions coarse;
  coarse.rays = 32;
  coarse.max_j = 20;
  coarse.interior = 5;
  NormOptions fine;
  fine.rays = 64;
  fine.max_j = 40;
  fine.interior = 10;
  double nc = space_norm(G, f, coarse);
  double nf = space_norm(G, f, fine);
  CHECK(nf >= nc);

  SpaceDescriptor B = SpaceDescriptor::bloch_type(Weight::classical_power(1.5));
  FunctionHandle g = FunctionHandle::from_ast(parse("log(1/(1-z))"));
  CHECK(space_norm(B, g, fine) >= space_norm(B, g, coarse));
}

TEST_CASE("little-space membership verdicts") {
  SpaceDescriptor H10 = SpaceDescriptor::growth(Weight::classical_power(1.0), true);

  LittleVerdict ones = little_space_membership(poly_handle({1.0}), H10);
  CHECK(ones.status == LittleVerdict::Status::Member);

  LittleVerdict pole =
      little_space_membership(FunctionHandle::from_ast(parse("1/(1-z)")), H10);
  CHECK(pole.status == LittleVerdict::Status::NotMember);
  CHECK(pole.limit_estimate == doctest::Approx(2.0).epsilon(1e-2));

  LittleVerdict lg =
      little_space_membership(FunctionHandle::from_ast(parse("log(1/(1-z))")), H10);
  CHECK(lg.status == LittleVerdict::Status::Member);

  CHECK_THROWS_AS(
      (void)little_space_membership(poly_handle({1.0}),
                                    SpaceDescriptor::growth(Weight::classical_power(1.0))),
      DomainError);
}

TEST_CASE("hybrid handles demand agreement between tree and series") {
  ExprAST geo = parse("1/(1-z)");
  CHECK_NOTHROW((void)FunctionHandle::hybrid(geo, to_series(geo, 64)));
  TaylorSeries wrong = to_series(parse("1/(1-0.5*z)"), 64);
  CHECK_THROWS_AS((void)FunctionHandle::hybrid(geo, wrong), Error);
}

TEST_CASE("space spec strings") {
  CHECK(to_string(parse_space("hardy:2")) == "hardy:2");
  CHECK(parse_space("bergman:2:0").alpha() == 0.0);
  CHECK(parse_space("growth:power:1:little").little());
  CHECK(parse_space("bloch:power:1.5").kind() == SpaceKind::BlochType);
  CHECK_THROWS_AS((void)parse_space("sobolev:1"), DomainError);
  CHECK_THROWS_AS((void)parse_space("hardy:2:little"), DomainError);
}
