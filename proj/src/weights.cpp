#include "diskop/weights.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "diskop/fitting.hpp"

namespace diskop {

namespace {

double custom_value(const ExprAST& profile, double t) {
  Complex v = eval_ast(profile, Complex(t, 0.0));
  if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real())))
    throw InvalidWeightError("custom weight profile is not real on [0,1)");
  return v.real();
}

}  // namespace

Weight Weight::classical_power(double beta) {
  if (!(beta > 0.0)) throw InvalidWeightError("classical power weight requires beta > 0");
  Weight w;
  w.kind_ = WeightKind::ClassicalPower;
  w.beta_ = beta;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "power:%.17g", beta);
  w.spec_ = buf;
  return w;
}

Weight Weight::log_weight() {
  Weight w;
  w.kind_ = WeightKind::Log;
  w.spec_ = "log";
  return w;
}

Weight Weight::custom(ExprAST profile_in_t) {
  Weight w;
  w.kind_ = WeightKind::Custom;
  double at0 = custom_value(profile_in_t, 0.0);
  if (!(at0 > 0.0)) throw InvalidWeightError("custom weight must be positive at 0");
  w.spec_ = "custom:" + to_string(profile_in_t);
  w.profile_ = std::move(profile_in_t);
  w.normaliser_ = at0;

  // codomain check on the radial grid
  for (int j = 0; j <= 24; ++j) {
    double r = (j == 0) ? 0.0 : 1.0 - std::ldexp(1.0, -j);
    double h = 1.0 - r;
    double val = weight_value_radial(w, r, h * (2.0 - h));
    if (!(val > 0.0) || val > 1.0 + 1e-9 || !std::isfinite(val))
      throw InvalidWeightError("custom weight leaves (0,1] at r = " + std::to_string(r));
  }
  return w;
}

double Weight::beta() const {
  if (kind_ != WeightKind::ClassicalPower)
    throw DomainError("beta() is defined for classical power weights only");
  return beta_;
}

double Weight::custom_raw(double t) const {
  if (kind_ != WeightKind::Custom || !profile_)
    throw DomainError("custom_raw() is defined for custom weights only");
  return custom_value(*profile_, t);
}

double weight_value_radial(const Weight& v, double r, double one_minus_r2) {
  switch (v.kind_) {
    case WeightKind::ClassicalPower:
      return std::pow(one_minus_r2, v.beta_);
    case WeightKind::Log:
      return one_minus_r2 * (1.0 - std::log(one_minus_r2));
    case WeightKind::Custom: {
      double val = custom_value(*v.profile_, r) / v.normaliser_;
      if (!(val > 0.0) || val > 1.0 + 1e-9)
        throw InvalidWeightError("custom weight value outside (0,1] at r = " +
                                 std::to_string(r));
      return val;
    }
  }
  throw Error("corrupt weight kind");
}

double weight_value(const Weight& v, Complex z) {
  double r = std::abs(z);
  if (r >= 1.0) throw DomainError("weight evaluated outside the open disk");
  return weight_value_radial(v, r, (1.0 - r) * (1.0 + r));
}

TypicalityVerdict is_typical(const Weight& v) {
  TypicalityVerdict out;
  const int jmax = 24;
  std::vector<double> values(jmax + 1);
  values[0] = weight_value_radial(v, 0.0, 1.0);
  for (int j = 1; j <= jmax; ++j) {
    double h = std::ldexp(1.0, -j);
    values[j] = weight_value_radial(v, 1.0 - h, h * (2.0 - h));
  }
  for (int j = 0; j < jmax; ++j) {
    if (values[j + 1] > values[j] * (1.0 + 1e-12)) {
      out.reason = "not non-increasing between r_" + std::to_string(j) + " and r_" +
                   std::to_string(j + 1);
      return out;
    }
  }
  out.deepest_value = values[jmax];

  std::vector<double> hs, tail;
  for (int j = jmax - 7; j <= jmax; ++j) {
    hs.push_back(std::ldexp(1.0, -j));
    tail.push_back(values[j]);
  }
  ExponentFit fit = fit_exponent(hs, tail);
  out.fitted_decay_exponent = fit.ok ? fit.exponent : 0.0;

  const bool decays = out.deepest_value < 1e-3 ||
                      (fit.ok && fit.exponent > 0.01 && fit.residual < 0.1);
  if (!decays) {
    out.reason = "no boundary decay (v(r_24) = " + std::to_string(out.deepest_value) +
                 ", fitted exponent " + std::to_string(out.fitted_decay_exponent) + ")";
    return out;
  }
  out.typical = true;
  return out;
}

Weight parse_weight(std::string_view spec) {
  if (spec == "log") return Weight::log_weight();
  constexpr std::string_view power_prefix = "power:";
  constexpr std::string_view custom_prefix = "custom:";
  if (spec.substr(0, power_prefix.size()) == power_prefix) {
    double beta = std::stod(std::string(spec.substr(power_prefix.size())));
    return Weight::classical_power(beta);
  }
  if (spec.substr(0, custom_prefix.size()) == custom_prefix) {
    ExprAST profile = parse(spec.substr(custom_prefix.size()), "t");
    return Weight::custom(std::move(profile));
  }
  throw DomainError("unknown weight spec '" + std::string(spec) +
                    "' (expected power:<beta>, log, or custom:<expr in t>)");
}

std::string to_string(const Weight& v) { return v.spec_string(); }

}  // namespace diskop
