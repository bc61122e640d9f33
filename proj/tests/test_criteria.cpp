#include <doctest.h>

#include <cmath>

#include "diskop/criteria.hpp"

using namespace diskop;

namespace {

SpaceDescriptor growth(double beta, bool little = false) {
  return SpaceDescriptor::growth(Weight::classical_power(beta), little);
}
SpaceDescriptor bloch(double beta) {
  return SpaceDescriptor::bloch_type(Weight::classical_power(beta));
}

}  // namespace

TEST_CASE("identity composition profile cancels exactly") {
  OperatorSymbol I = OperatorSymbol::weighted_composition(parse("1"), parse("z"));
  for (double beta : {0.5, 1.0, 2.0}) {
    SpaceDescriptor G = growth(beta);
    CriterionProfile P = criterion_profile(I, G, G);
    for (const ProfileSample& s : P.samples) CHECK(std::abs(s.value - 1.0) <= 1e-12);
    BoundednessVerdict b = boundedness_verdict(P);
    CHECK(b.status == Tri::Yes);
    CHECK(b.norm_estimate == doctest::Approx(1.0).epsilon(1e-12));
    CompactnessVerdict c = compactness_verdict(P);
    CHECK(c.status == Tri::No);
    CHECK(c.limit_estimate == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("criterion values at single points") {
  OperatorSymbol V = OperatorSymbol::volterra(parse("log(1/(1-z))"));
  // (1-r^2)^(3/2) |g'| (1-r^2)^(-1/2) = (1-r^2)/(1-r) = 1+r on the real ray
  CHECK(criterion_value(V, SpaceDescriptor::hardy(2.0), bloch(1.5), 0.5, 0.0) ==
        doctest::Approx(1.5).epsilon(1e-12));

  OperatorSymbol C = OperatorSymbol::cesaro(parse("log(1/(1-z))"));
  CHECK(criterion_value(C, growth(1.0), growth(1.0), 0.0, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unsupported pairings are rejected with the supported list") {
  OperatorSymbol V = OperatorSymbol::volterra(parse("z"));
  OperatorSymbol W = OperatorSymbol::weighted_composition(parse("1"), parse("z"));
  OperatorSymbol D = OperatorSymbol::differentiation();
  CHECK_THROWS_AS((void)criterion_profile(W, growth(1.0), bloch(1.0)), UnsupportedError);
  CHECK_THROWS_AS((void)criterion_profile(D, growth(1.0), growth(1.0)), UnsupportedError);
  try {
    (void)criterion_profile(V, SpaceDescriptor::hardy(2.0),
                            SpaceDescriptor::growth(Weight::log_weight()));
    CHECK(false);
  } catch (const UnsupportedError& e) {
    CHECK(std::string(e.what()).find("classical power weight") != std::string::npos);
  }
}

TEST_CASE("canonical Volterra boundedness: sup of 1+r") {
  OperatorSymbol V = OperatorSymbol::volterra(parse("log(1/(1-z))"));
  CriterionProfile P = criterion_profile(V, SpaceDescriptor::hardy(2.0), bloch(1.5));
  BoundednessVerdict b = boundedness_verdict(P);
  CHECK(b.status == Tri::Yes);
  CHECK(b.norm_estimate == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(b.equivalence_flag == false);
  CompactnessVerdict c = compactness_verdict(P);
  CHECK(c.status == Tri::No);
  CHECK(c.limit_estimate == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("power-symbol trichotomy across the compactness threshold") {
  SpaceDescriptor H2 = SpaceDescriptor::hardy(2.0);
  SpaceDescriptor B2 = bloch(2.0);

  OperatorSymbol compact_case = OperatorSymbol::volterra(parse("(1-z)^(-0.25)"));
  CriterionProfile Pc = criterion_profile(compact_case, H2, B2);
  CHECK(boundedness_verdict(Pc).status == Tri::Yes);
  CompactnessVerdict cc = compactness_verdict(Pc);
  CHECK(cc.status == Tri::Yes);

  OperatorSymbol borderline = OperatorSymbol::volterra(parse("(1-z)^(-0.5)"));
  CriterionProfile Pb = criterion_profile(borderline, H2, B2);
  CHECK(boundedness_verdict(Pb).status == Tri::Yes);
  CompactnessVerdict cb = compactness_verdict(Pb);
  CHECK(cb.status == Tri::No);
  CHECK(cb.limit_estimate == doctest::Approx(0.5 * std::pow(2.0, 1.5)).epsilon(1e-2));

  OperatorSymbol unbounded = OperatorSymbol::volterra(parse("(1-z)^(-0.75)"));
  CriterionProfile Pu = criterion_profile(unbounded, H2, B2);
  BoundednessVerdict bu = boundedness_verdict(Pu);
  CHECK(bu.status == Tri::No);
  CHECK(bu.divergence_exponent == doctest::Approx(-0.25).epsilon(0.08));
  CHECK(compactness_verdict(Pu).status == Tri::No);
}

TEST_CASE("Bloch-type sources set the equivalence flag") {
  OperatorSymbol V = OperatorSymbol::volterra(parse("z"));
  CriterionProfile P = criterion_profile(V, bloch(1.5), bloch(1.0));
  CHECK(P.equivalence_class);
  CHECK(boundedness_verdict(P).equivalence_flag);
}

TEST_CASE("level-set diagnostic: decay, stall, and the bounded-derivative case") {
  GridSpec grid;
  Tolerances tol;

  OperatorSymbol I = OperatorSymbol::weighted_composition(parse("1"), parse("z"));
  DnDiagnostic dn_id = dn_diagnostic(I, growth(1.0), growth(1.0), {10, 100, 1000}, grid, tol);
  CHECK(dn_id.status == DnStatus::Fails);
  for (double s : dn_id.sups) CHECK(s == doctest::Approx(1.0).epsilon(1e-6));

  OperatorSymbol Vz = OperatorSymbol::volterra(parse("z"));
  DnDiagnostic dn_z =
      dn_diagnostic(Vz, SpaceDescriptor::hardy(2.0), bloch(1.0), {10, 100, 1000}, grid, tol);
  CHECK(dn_z.status == DnStatus::Holds);
  CHECK(dn_z.sups.back() < 0.05);

  OperatorSymbol Vc = OperatorSymbol::volterra(parse("(1-z)^(-0.25)"));
  DnDiagnostic dn_c =
      dn_diagnostic(Vc, SpaceDescriptor::hardy(2.0), bloch(2.0), {10, 100, 1000}, grid, tol);
  CHECK(dn_c.sups.size() == 3);
  CHECK(dn_c.sups[1] < dn_c.sups[0]);
  CHECK(dn_c.sups[2] < dn_c.sups[1]);
  CHECK(dn_c.status == DnStatus::Holds);

  // far outside the kernel range: vacuous
  DnDiagnostic dn_v =
      dn_diagnostic(Vz, SpaceDescriptor::hardy(2.0), bloch(1.0), {1e30}, grid, tol);
  CHECK(dn_v.vacuous);
  CHECK(dn_v.status == DnStatus::Holds);

  // a narrow N range cannot certify a stall: slow decay looks flat over it
  DnDiagnostic dn_narrow =
      dn_diagnostic(Vc, SpaceDescriptor::hardy(2.0), bloch(2.0), {10, 11}, grid, tol);
  CHECK(dn_narrow.status == DnStatus::Inconclusive);
}

TEST_CASE("kernel lower bounds") {
  OperatorSymbol I = OperatorSymbol::weighted_composition(parse("1"), parse("z"));
  double b1 = kernel_lower_bound(I, SpaceDescriptor::hardy(2.0), growth(0.5), {0.5});
  CHECK(b1 == doctest::Approx(1.0).epsilon(1e-9));

  // Bergman source: the identity attains v(w) |k_w(w)| = 1 at the base point
  double b2 = kernel_lower_bound(I, SpaceDescriptor::bergman(2.0, 0.0), growth(1.0), {0.5});
  CHECK(b2 == doctest::Approx(1.0).epsilon(1e-9));

  OperatorSymbol V = OperatorSymbol::volterra(parse("log(1/(1-z))"));
  double prev = 0.0;
  for (double w : {0.9, 0.99, 0.999}) {
    double b = kernel_lower_bound(V, SpaceDescriptor::hardy(2.0), bloch(1.5), {w});
    CHECK(b >= (1.0 - w * w) / (1.0 - w) - 1e-9);
    CHECK(b >= prev);
    prev = b;
  }
  CHECK(prev == doctest::Approx(2.0).epsilon(2e-3));

  CHECK_THROWS_AS(
      (void)kernel_lower_bound(I, growth(1.0), growth(1.0), {0.5}), UnsupportedError);
}

TEST_CASE("symbol classification in the Bloch scale") {
  ExprAST g = parse("log(1/(1-z))");
  Classification in_b1 = classify_symbol(g, SymbolFamily::bloch(1.0));
  CHECK(in_b1.member == Tri::Yes);
  CHECK(in_b1.seminorm_estimate == doctest::Approx(2.0).epsilon(1e-3));

  Classification in_bhalf = classify_symbol(g, SymbolFamily::bloch(0.5));
  CHECK(in_bhalf.member == Tri::No);

  Classification lip = classify_symbol(parse("z"), SymbolFamily::lipschitz());
  CHECK(lip.member == Tri::Yes);
  CHECK(lip.seminorm_estimate == doctest::Approx(1.0).epsilon(1e-12));

  Classification little = classify_symbol(g, SymbolFamily::little_growth(1.0));
  CHECK(little.member == Tri::Yes);

  Classification lb =
      classify_symbol(parse("z"), SymbolFamily::little_bloch(Weight::log_weight()));
  CHECK(lb.member == Tri::Yes);

  // (1-|z|^2) log(1/(1-|z|^2)) / |1-z| ~ 2 log(1/(1-r)) on the real ray
  Classification logb = classify_symbol(g, SymbolFamily::log_bloch());
  CHECK(logb.member == Tri::No);
}

TEST_CASE("closed-form tables") {
  SpaceDescriptor H2 = SpaceDescriptor::hardy(2.0);

  ClosedFormCondition c1 = closed_form_verdict(OperatorKind::Volterra, H2, growth(1.0));
  CHECK(c1.exponent == doctest::Approx(1.5));
  CHECK(c1.regime == ClosedFormCondition::Regime::BlochMembership);
  CHECK_FALSE(c1.log_factor);

  ClosedFormCondition c2 = closed_form_verdict(OperatorKind::Volterra, H2, bloch(0.5));
  CHECK(c2.exponent == doctest::Approx(0.0));
  CHECK(c2.regime == ClosedFormCondition::Regime::Lipschitz);

  ClosedFormCondition c3 =
      closed_form_verdict(OperatorKind::Cesaro, growth(1.0), growth(1.0));
  CHECK(c3.exponent == doctest::Approx(1.0));
  CHECK(c3.condition.find("classical Bloch") != std::string::npos);

  ClosedFormCondition c4 =
      closed_form_verdict(OperatorKind::Volterra, SpaceDescriptor::bergman(2.0, 0.0), growth(1.0));
  CHECK(c4.exponent == doctest::Approx(1.0));

  ClosedFormCondition c5 = closed_form_verdict(OperatorKind::Volterra, bloch(1.0), bloch(1.0));
  CHECK(c5.log_factor);
  CHECK(c5.condition.find("LogB") != std::string::npos);
  CHECK(c5.equivalence);

  ClosedFormCondition c6 = closed_form_verdict(OperatorKind::Volterra,
                                               SpaceDescriptor::hardy(1.25), bloch(0.5));
  CHECK(c6.regime == ClosedFormCondition::Regime::ConstantOnly);

  CHECK_THROWS_AS(
      (void)closed_form_verdict(OperatorKind::Multiplication, H2, growth(1.0)),
      UnsupportedError);
}

TEST_CASE("numerical verdicts match the closed-form regimes for power symbols") {
  SpaceDescriptor H2 = SpaceDescriptor::hardy(2.0);
  SpaceDescriptor B2 = bloch(2.0);
  ClosedFormCondition cond = closed_form_verdict(OperatorKind::Volterra, H2, B2);
  CHECK(cond.exponent == doctest::Approx(1.5));

  struct Case { const char* g; Tri bounded; } cases[] = {
      {"(1-z)^(-0.25)", Tri::Yes},
      {"(1-z)^(-0.5)", Tri::Yes},
      {"(1-z)^(-0.75)", Tri::No},
  };
  for (const auto& c : cases) {
    ExprAST g = parse(c.g);
    OperatorSymbol V = OperatorSymbol::volterra(g);
    Tri numeric = boundedness_verdict(criterion_profile(V, H2, B2)).status;
    Tri predicted = classify_condition(g, cond).member;
    CHECK(numeric == c.bounded);
    CHECK(predicted == c.bounded);
  }
}

TEST_CASE("Cesaro and Volterra share boundedness verdicts") {
  SpaceDescriptor H2 = SpaceDescriptor::hardy(2.0);
  SpaceDescriptor B2 = bloch(2.0);
  for (const char* gtext : {"(1-z)^(-0.25)", "(1-z)^(-0.5)", "(1-z)^(-0.75)"}) {
    ExprAST g = parse(gtext);
    Tri tv = boundedness_verdict(criterion_profile(OperatorSymbol::volterra(g), H2, B2)).status;
    Tri tc = boundedness_verdict(criterion_profile(OperatorSymbol::cesaro(g), H2, B2)).status;
    CHECK(tv == tc);
  }
}

TEST_CASE("Volterra into Bloch matches multiplication by g' into growth") {
  ExprAST g = parse("log(1/(1-z))");
  SpaceDescriptor H2 = SpaceDescriptor::hardy(2.0);
  OperatorSymbol V = OperatorSymbol::volterra(g);
  OperatorSymbol M = OperatorSymbol::multiplication(differentiate_ast(g));
  CriterionProfile pv = criterion_profile(V, H2, bloch(1.5));
  CriterionProfile pm = criterion_profile(M, H2, growth(1.5));
  CHECK(pv.sup_estimate == doctest::Approx(pm.sup_estimate).epsilon(1e-12));
  CHECK(boundedness_verdict(pv).status == boundedness_verdict(pm).status);
}

TEST_CASE("kernel-norm abort fires when the quadrature cannot resolve the kernel") {
  OperatorSymbol V = OperatorSymbol::volterra(parse("log(1/(1-z))"));
  NormOptions starved;
  starved.hardy_angular = 64;
  starved.hardy_angular_cap = 64;  // no adaptive refinement allowed
  CHECK_THROWS_AS((void)kernel_lower_bound(V, SpaceDescriptor::hardy(2.0), bloch(1.5),
                                           {0.9999}, starved),
                  QuadratureError);
}

TEST_CASE("Bergman sources use the (alpha+2)/p point-evaluation exponent") {
  // (1-|z|^2)^2 |g'| (1-|z|^2)^(-1) with g' = s (1-z)^(-s-1): exponent 1-s-1 < 0
  SpaceDescriptor A = SpaceDescriptor::bergman(2.0, 0.0);
  OperatorSymbol V = OperatorSymbol::volterra(parse("(1-z)^(-0.25)"));
  CriterionProfile P = criterion_profile(V, A, growth(1.0));
  BoundednessVerdict b = boundedness_verdict(P);
  CHECK(b.status == Tri::No);
  CHECK(b.divergence_exponent == doctest::Approx(-0.25).epsilon(0.08));

  OperatorSymbol Vz = OperatorSymbol::volterra(parse("z"));
  CHECK(boundedness_verdict(criterion_profile(Vz, A, growth(1.0))).status == Tri::Yes);
}

TEST_CASE("Cesaro equals Volterra on a growth-target pairing too") {
  for (const char* gtext : {"z", "log(1/(1-z))", "(1-z)^(-0.75)"}) {
    ExprAST g = parse(gtext);
    Tri tv = boundedness_verdict(
                 criterion_profile(OperatorSymbol::volterra(g), growth(1.0), growth(1.0)))
                 .status;
    Tri tc = boundedness_verdict(
                 criterion_profile(OperatorSymbol::cesaro(g), growth(1.0), growth(1.0)))
                 .status;
    CHECK(tv == tc);
  }
}

TEST_CASE("profile invariants: nonnegative samples dominated by the sup") {
  OperatorSymbol V = OperatorSymbol::volterra(parse("(1-z)^(-0.5)"));
  CriterionProfile P = criterion_profile(V, SpaceDescriptor::hardy(2.0), bloch(2.0));
  CHECK(P.samples.size() ==
        static_cast<std::size_t>(P.grid.rays * (P.grid.interior + P.grid.max_j)));
  for (const ProfileSample& s : P.samples) {
    CHECK(s.value >= 0.0);
    CHECK(s.value <= P.sup_estimate * (1.0 + 1e-12));
  }
  for (const RayFit& f : P.ray_fits) CHECK(std::isfinite(f.residual));
  for (std::size_t j = 1; j < P.partial_sups.size(); ++j)
    CHECK(P.partial_sups[j] >= P.partial_sups[j - 1]);
}

TEST_CASE("compact implies bounded in assembled verdicts") {
  SpaceDescriptor H2 = SpaceDescriptor::hardy(2.0);
  for (const char* gtext : {"z", "(1-z)^(-0.25)", "(1-z)^(-0.5)", "(1-z)^(-0.75)"}) {
    CriterionProfile P =
        criterion_profile(OperatorSymbol::volterra(parse(gtext)), H2, bloch(2.0));
    BoundednessVerdict b = boundedness_verdict(P);
    CompactnessVerdict c = compactness_verdict(P);
    if (c.status == Tri::Yes) CHECK(b.status == Tri::Yes);
  }
}
