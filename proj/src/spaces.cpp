#include "diskop/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "diskop/fitting.hpp"
#include "diskop/quadrature.hpp"

namespace diskop {

namespace {

Complex polar_point(double r, double theta) {
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace

// --------------------------------------------------------------------------
// SpaceDescriptor

SpaceDescriptor SpaceDescriptor::hardy(double p) {
  if (!(p > 1.0)) throw DomainError("Hardy space requires p > 1");
  SpaceDescriptor X;
  X.kind_ = SpaceKind::Hardy;
  X.p_ = p;
  return X;
}

SpaceDescriptor SpaceDescriptor::bergman(double p, double alpha) {
  if (!(p > 0.0)) throw DomainError("Bergman space requires p > 0");
  if (!(alpha > -1.0)) throw DomainError("Bergman space requires alpha > -1");
  SpaceDescriptor X;
  X.kind_ = SpaceKind::Bergman;
  X.p_ = p;
  X.alpha_ = alpha;
  return X;
}

SpaceDescriptor SpaceDescriptor::growth(Weight v, bool little) {
  SpaceDescriptor X;
  X.kind_ = SpaceKind::Growth;
  X.weight_ = std::move(v);
  X.little_ = little;
  return X;
}

SpaceDescriptor SpaceDescriptor::bloch_type(Weight v, bool little) {
  SpaceDescriptor X;
  X.kind_ = SpaceKind::BlochType;
  X.weight_ = std::move(v);
  X.little_ = little;
  return X;
}

const Weight& SpaceDescriptor::weight() const {
  if (!weight_) throw DomainError("space has no weight (Hardy/Bergman)");
  return *weight_;
}

SpaceDescriptor parse_space(std::string_view spec) {
  auto take_prefix = [&](std::string_view prefix) -> bool {
    if (spec.substr(0, prefix.size()) == prefix) {
      spec.remove_prefix(prefix.size());
      return true;
    }
    return false;
  };
  bool little = false;
  constexpr std::string_view little_suffix = ":little";
  if (spec.size() > little_suffix.size() &&
      spec.substr(spec.size() - little_suffix.size()) == little_suffix) {
    little = true;
    spec.remove_suffix(little_suffix.size());
  }
  if (take_prefix("hardy:")) {
    if (little) throw DomainError("':little' applies to growth/bloch spaces only");
    return SpaceDescriptor::hardy(std::stod(std::string(spec)));
  }
  if (take_prefix("bergman:")) {
    if (little) throw DomainError("':little' applies to growth/bloch spaces only");
    auto colon = spec.find(':');
    if (colon == std::string_view::npos)
      throw DomainError("bergman spec needs p and alpha, e.g. bergman:2:0");
    double p = std::stod(std::string(spec.substr(0, colon)));
    double a = std::stod(std::string(spec.substr(colon + 1)));
    return SpaceDescriptor::bergman(p, a);
  }
  if (take_prefix("growth:")) return SpaceDescriptor::growth(parse_weight(spec), little);
  if (take_prefix("bloch:")) return SpaceDescriptor::bloch_type(parse_weight(spec), little);
  throw DomainError("unknown space spec '" + std::string(spec) + "'");
}

std::string to_string(const SpaceDescriptor& X) {
  char buf[96];
  switch (X.kind()) {
    case SpaceKind::Hardy:
      std::snprintf(buf, sizeof(buf), "hardy:%.17g", X.p());
      return buf;
    case SpaceKind::Bergman:
      std::snprintf(buf, sizeof(buf), "bergman:%.17g:%.17g", X.p(), X.alpha());
      return buf;
    case SpaceKind::Growth:
      return "growth:" + to_string(X.weight()) + (X.little() ? ":little" : "");
    case SpaceKind::BlochType:
      return "bloch:" + to_string(X.weight()) + (X.little() ? ":little" : "");
  }
  return "?";
}

// --------------------------------------------------------------------------
// FunctionHandle

FunctionHandle FunctionHandle::from_ast(ExprAST ast) {
  FunctionHandle f;
  f.dast_ = differentiate_ast(ast);
  f.ast_ = std::move(ast);
  return f;
}

FunctionHandle FunctionHandle::from_series(TaylorSeries series) {
  FunctionHandle f;
  f.dseries_ = derivative(series);
  f.series_ = std::move(series);
  return f;
}

FunctionHandle FunctionHandle::hybrid(ExprAST ast, TaylorSeries series) {
  FunctionHandle f = from_ast(std::move(ast));
  double probe_r = std::min(0.45, series.valid_radius());
  for (int k = 0; k < 16; ++k) {
    double th = 2.0 * kPi * k / 16.0 + 0.21;
    Complex z = polar_point(probe_r * (0.3 + 0.7 * ((k % 5) / 4.0)), th);
    Complex va = eval_ast(*f.ast_, z);
    Complex vs = eval(series, z);
    if (std::abs(va - vs) > 1e-8 * (1.0 + std::abs(va)))
      throw Error("hybrid handle: tree and series disagree at probe point");
  }
  f.dseries_ = derivative(series);
  f.series_ = std::move(series);
  return f;
}

FunctionHandle FunctionHandle::from_evaluators(Evaluator value, Evaluator deriv,
                                               std::optional<TaylorSeries> series) {
  if (!value) throw Error("from_evaluators requires a value evaluator");
  FunctionHandle f;
  f.eval_fn_ = std::move(value);
  f.deriv_fn_ = std::move(deriv);
  if (series) {
    f.dseries_ = derivative(*series);
    f.series_ = std::move(series);
  }
  return f;
}

Complex FunctionHandle::value(Complex z) const {
  if (ast_) return eval_ast(*ast_, z);
  if (eval_fn_) return eval_fn_(z);
  return eval(*series_, z);
}

Complex FunctionHandle::derivative_value(Complex z) const {
  if (dast_) return eval_ast(*dast_, z);
  if (deriv_fn_) return deriv_fn_(z);
  if (dseries_) return eval(*dseries_, z);
  throw UnsupportedError("function handle has no derivative representation");
}

bool FunctionHandle::has_derivative() const {
  return dast_.has_value() || static_cast<bool>(deriv_fn_) || dseries_.has_value();
}

double FunctionHandle::max_eval_radius() const {
  if (ast_ || eval_fn_) return 1.0;
  return series_->valid_radius();
}

// --------------------------------------------------------------------------
// Point-evaluation norms

PointEvalNorm point_eval_norm_radial(const SpaceDescriptor& X, double x) {
  PointEvalNorm out;
  switch (X.kind()) {
    case SpaceKind::Hardy:
      out.value = std::pow(x, -1.0 / X.p());
      return out;
    case SpaceKind::Bergman:
      out.value = std::pow(x, -(X.alpha() + 2.0) / X.p());
      return out;
    case SpaceKind::Growth:
      if (X.weight().classical()) {
        out.value = std::pow(x, -X.weight().beta());
      } else {
        // only the upper bound 1/v is available in closed form
        out.value = 1.0 / weight_value_radial(X.weight(), std::sqrt(std::max(0.0, 1.0 - x)), x);
        out.equivalence_class = true;
      }
      return out;
    case SpaceKind::BlochType: {
      if (!X.weight().classical())
        throw UnsupportedError(
            "point-evaluation norm for Bloch-type spaces is available for "
            "classical power weights only");
      double beta = X.weight().beta();
      out.equivalence_class = true;  // comparison function, constants unknown
      if (std::abs(beta - 1.0) <= 1e-12)
        out.value = std::log(1.0 / x);
      else if (beta < 1.0)
        out.value = 1.0;
      else
        out.value = std::pow(x, 1.0 - beta);
      return out;
    }
  }
  throw Error("corrupt space kind");
}

PointEvalNorm point_eval_norm(const SpaceDescriptor& X, Complex z) {
  double r = std::abs(z);
  if (r >= 1.0) throw DomainError("point evaluation norm requires |z| < 1");
  return point_eval_norm_radial(X, (1.0 - r) * (1.0 + r));
}

// --------------------------------------------------------------------------
// Norms by quadrature

namespace {

// trapezoid mean of |f|^p over M equispaced angles at radius r
double circle_mean(const FunctionHandle& f, double r, double p, int M) {
  double sum = 0.0;
  for (int k = 0; k < M; ++k) {
    double th = 2.0 * kPi * k / M;
    double mod = std::abs(f.value(polar_point(r, th)));
    sum += std::pow(mod, p);
  }
  return sum / M;
}

// adaptive doubling: refine until the mean stabilises or the cap is reached
double adaptive_circle_mean(const FunctionHandle& f, double r, double p, int M0, int cap) {
  int M = M0;
  double mean = circle_mean(f, r, p, M);
  while (2 * M <= cap) {
    // the 2M-point mean is the average of the M-point mean and the half-shifted one
    double shifted = 0.0;
    for (int k = 0; k < M; ++k) {
      double th = 2.0 * kPi * (k + 0.5) / M;
      shifted += std::pow(std::abs(f.value(polar_point(r, th))), p);
    }
    shifted /= M;
    double refined = 0.5 * (mean + shifted);
    bool stable = std::abs(refined - mean) <= 1e-10 * std::max(std::abs(refined), 1e-300);
    mean = refined;
    M *= 2;
    if (stable || !std::isfinite(mean)) break;
  }
  return mean;
}

double hardy_norm(const FunctionHandle& f, double p, const NormOptions& opts) {
  std::vector<double> radii;
  double rmax = f.max_eval_radius();
  for (int j = 1; j <= opts.hardy_max_j; ++j) {
    double r = 1.0 - std::ldexp(1.0, -j);
    if (r <= rmax) radii.push_back(r);
  }
  if (radii.empty()) radii.push_back(0.5 * rmax);

  double best = 0.0;
  for (double r : radii) {
    double mean = adaptive_circle_mean(f, r, p, opts.hardy_angular, opts.hardy_angular_cap);
    if (!std::isfinite(mean)) return HUGE_VAL;
    best = std::max(best, mean);
  }
  if (rmax >= 1.0) {
    // boundary circle: legal whenever f extends continuously; skip on singularity
    try {
      double mean = adaptive_circle_mean(f, 1.0, p, opts.hardy_angular, opts.hardy_angular_cap);
      if (!std::isfinite(mean)) return HUGE_VAL;
      best = std::max(best, mean);
    } catch (const SingularityError&) {
      // fall back to the interior radii
    }
  }
  return std::pow(best, 1.0 / p);
}

double bergman_norm(const FunctionHandle& f, double p, double alpha, const NormOptions& opts) {
  const GaussLegendre& gl = gauss_legendre(opts.bergman_radial);
  double total = 0.0;
  for (int i = 0; i < opts.bergman_radial; ++i) {
    double u = gl.nodes[i];  // u = r^2
    double r = std::sqrt(u);
    double mean = circle_mean(f, r, p, opts.bergman_angular);
    total += gl.weights[i] * (alpha + 1.0) * std::pow(1.0 - u, alpha) * mean;
    if (!std::isfinite(total)) return HUGE_VAL;
  }
  return std::pow(total, 1.0 / p);
}

// sup of point_value over the ray x dyadic-radius grid plus extra probes
double sup_norm(const SpaceDescriptor& X, const FunctionHandle& f, bool use_derivative,
                const NormOptions& opts) {
  const Weight& v = X.weight();
  double rmax = f.max_eval_radius();
  double sup = 0.0;
  auto consider = [&](double r, double x, Complex z) {
    double mod = std::abs(use_derivative ? f.derivative_value(z) : f.value(z));
    double val = weight_value_radial(v, r, x) * mod;
    if (std::isnan(val)) val = HUGE_VAL;
    sup = std::max(sup, val);
  };
  for (int k = 0; k < opts.rays; ++k) {
    double theta = 2.0 * kPi * k / opts.rays;
    for (int i = 0; i < opts.interior; ++i) {
      double r = 0.5 * i / opts.interior;
      if (r > rmax) continue;
      consider(r, (1.0 - r) * (1.0 + r), polar_point(r, theta));
    }
    for (int j = 1; j <= opts.max_j; ++j) {
      double h = std::ldexp(1.0, -j);
      double r = 1.0 - h;
      if (r > rmax) break;
      consider(r, h * (2.0 - h), polar_point(r, theta));
    }
  }
  for (Complex z : opts.extra_points) {
    double r = std::abs(z);
    if (r >= 1.0 || r > rmax) continue;
    consider(r, (1.0 - r) * (1.0 + r), z);
  }
  return sup;
}

}  // namespace

double space_norm(const SpaceDescriptor& X, const FunctionHandle& f, const NormOptions& opts) {
  switch (X.kind()) {
    case SpaceKind::Hardy: return hardy_norm(f, X.p(), opts);
    case SpaceKind::Bergman: return bergman_norm(f, X.p(), X.alpha(), opts);
    case SpaceKind::Growth: return sup_norm(X, f, false, opts);
    case SpaceKind::BlochType: return sup_norm(X, f, true, opts);
  }
  throw Error("corrupt space kind");
}

// --------------------------------------------------------------------------
// Little-space membership

LittleVerdict little_space_membership(const FunctionHandle& f, const SpaceDescriptor& X) {
  if (X.kind() != SpaceKind::Growth && X.kind() != SpaceKind::BlochType)
    throw DomainError("little-space membership applies to growth/bloch spaces");
  if (!X.little())
    throw DomainError("little_space_membership requires a little-space descriptor");
  const bool use_derivative = (X.kind() == SpaceKind::BlochType);
  const Weight& v = X.weight();
  const int rays = 32, jmax = 44, window = 10;

  LittleVerdict out;
  double deepest = 0.0;
  double min_exp = HUGE_VAL;
  bool any_unreliable = false;
  double stabilised_level = 0.0;
  bool any_stabilised = false;

  for (int k = 0; k < rays; ++k) {
    double theta = 2.0 * kPi * k / rays;
    std::vector<double> hs, vals;
    for (int j = 1; j <= jmax; ++j) {
      double h = std::ldexp(1.0, -j);
      double r = 1.0 - h;
      Complex z = polar_point(r, theta);
      double mod = std::abs(use_derivative ? f.derivative_value(z) : f.value(z));
      double val = weight_value_radial(v, r, h * (2.0 - h)) * mod;
      hs.push_back(h);
      vals.push_back(val);
    }
    deepest = std::max(deepest, vals.back());

    std::vector<double> tail_h(hs.end() - window, hs.end());
    std::vector<double> tail_v(vals.end() - window, vals.end());
    bool all_tiny = true;
    for (double tv : tail_v)
      if (tv > 1e-300) all_tiny = false;
    if (all_tiny) continue;  // ray already decayed to numerical zero

    ExponentFit fit = fit_exponent(tail_h, tail_v);
    if (!fit.ok || fit.residual > 0.05) {
      any_unreliable = true;
      continue;
    }
    min_exp = std::min(min_exp, fit.exponent);
    if (std::abs(fit.exponent) <= 0.01) {
      RichardsonLimit lim = richardson_limit(tail_v);
      if (lim.limit > 1e-6) {
        any_stabilised = true;
        stabilised_level = std::max(stabilised_level, lim.limit);
      }
    }
  }

  out.deepest_value = deepest;
  out.min_ray_exponent = std::isfinite(min_exp) ? min_exp : 1.0;
  if (any_stabilised) {
    out.status = LittleVerdict::Status::NotMember;
    out.limit_estimate = stabilised_level;
    return out;
  }
  if (!any_unreliable && deepest < 1e-6 && out.min_ray_exponent > 0.01) {
    out.status = LittleVerdict::Status::Member;
    return out;
  }
  out.status = LittleVerdict::Status::Inconclusive;
  return out;
}

// --------------------------------------------------------------------------
// Normalised reproducing-kernel test functions

FunctionHandle normalized_kernel(const SpaceDescriptor& X, double w) {
  if (!(w >= 0.0) || w >= 1.0) throw DomainError("kernel base point must lie in [0, 1)");
  double exponent = 0.0;
  switch (X.kind()) {
    case SpaceKind::Hardy: exponent = 2.0 / X.p(); break;
    case SpaceKind::Bergman: exponent = 2.0 * (2.0 + X.alpha()) / X.p(); break;
    default:
      throw UnsupportedError("normalized kernels are available for Hardy/Bergman sources");
  }
  double c = std::sqrt((1.0 - w) * (1.0 + w));
  ExprAST base = ast::div(ast::literal(c),
                          ast::sub(ast::literal(1.0), ast::mul(ast::literal(w), ast::var())));
  return FunctionHandle::from_ast(ast::pow(base, exponent));
}

}  // namespace diskop
