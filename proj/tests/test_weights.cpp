#include <doctest.h>

#include <cmath>
#include <random>

#include "diskop/weights.hpp"

using namespace diskop;

TEST_CASE("classical power weight values") {
  Weight v1 = Weight::classical_power(1.0);
  CHECK(weight_value(v1, {0, 0}) == 1.0);
  CHECK(weight_value(v1, {0.6, 0}) == doctest::Approx(0.64).epsilon(1e-15));

  Weight v2 = Weight::classical_power(2.0);
  CHECK(weight_value(v2, {0.6, 0}) == doctest::Approx(0.4096).epsilon(1e-15));
}

TEST_CASE("weights are radial and match the closed form on the dyadic grid") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Weight v = Weight::classical_power(1.5);
  for (int trial = 0; trial < 50; ++trial) {
    double r = 0.95 * U(rng);
    double th = 2.0 * kPi * U(rng);
    Complex z(r * std::cos(th), r * std::sin(th));
    CHECK(weight_value(v, z) ==
          doctest::Approx(weight_value(v, {std::abs(z), 0})).epsilon(1e-14));
  }
  for (int j = 1; j <= 24; ++j) {
    double h = std::ldexp(1.0, -j);
    double r = 1.0 - h;
    double expect = std::pow(h * (2.0 - h), 1.5);
    CHECK(weight_value_radial(v, r, h * (2.0 - h)) == expect);
  }
}

TEST_CASE("log weight stays in (0,1], peaks at the centre, decays at the boundary") {
  Weight w = Weight::log_weight();
  CHECK(weight_value(w, {0, 0}) == 1.0);
  for (int j = 1; j <= 30; ++j) {
    double h = std::ldexp(1.0, -j);
    double val = weight_value_radial(w, 1.0 - h, h * (2.0 - h));
    CHECK(val > 0.0);
    CHECK(val <= 1.0);
  }
  TypicalityVerdict t = is_typical(w);
  CHECK(t.typical);
}

TEST_CASE("typicality verdicts") {
  CHECK(is_typical(Weight::classical_power(1.0)).typical);
  CHECK(is_typical(Weight::classical_power(0.25)).typical);

  Weight flat = Weight::custom(parse("1", "t"));
  TypicalityVerdict tf = is_typical(flat);
  CHECK_FALSE(tf.typical);
  CHECK(tf.reason.find("decay") != std::string::npos);

  // (1-t^2)(2-t), normalised by its value 2 at 0: decreasing to 0
  Weight prod = Weight::custom(parse("(1-t^2)*(2-t)", "t"));
  TypicalityVerdict tp = is_typical(prod);
  CHECK(tp.typical);
  CHECK(weight_value(prod, {0, 0}) == doctest::Approx(1.0));
  CHECK(weight_value(prod, {0.5, 0}) == doctest::Approx(0.75 * 1.5 / 2.0));
}

TEST_CASE("custom weights violating (0,1] are rejected") {
  CHECK_THROWS_AS((void)Weight::custom(parse("1+t", "t")), InvalidWeightError);   // exceeds v(0)
  CHECK_THROWS_AS((void)Weight::custom(parse("t-1", "t")), InvalidWeightError);   // nonpositive at 0
  CHECK_THROWS_AS((void)Weight::custom(parse("0", "t")), InvalidWeightError);
}

TEST_CASE("weight spec strings round-trip") {
  Weight v = parse_weight("power:1.5");
  CHECK(v.kind() == WeightKind::ClassicalPower);
  CHECK(v.beta() == 1.5);
  CHECK(parse_weight("log").kind() == WeightKind::Log);
  Weight c = parse_weight("custom:(1-t^2)*(2-t)");
  CHECK(c.kind() == WeightKind::Custom);
  CHECK_THROWS_AS((void)parse_weight("poly:2"), DomainError);
}
