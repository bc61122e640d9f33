#include "diskop/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "diskop/fitting.hpp"

namespace diskop {

namespace {

Complex polar_point(double r, double theta) {
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::string supported_pairings() {
  return "supported pairings: wcomp->growth, mult->growth, volterra/cesaro->bloch, "
         "volterra/cesaro->growth with a classical power weight";
}

// Factorised criterion: weighted = v_Y * kernel, kernel = |factor| * ||delta||_X.
struct Pairing {
  enum class Form { WCompGrowth, MultGrowth, IntegralBloch, IntegralGrowthClassical };
  Form form;
  const OperatorSymbol* T = nullptr;
  const SpaceDescriptor* X = nullptr;
  const SpaceDescriptor* Y = nullptr;
  double target_beta = 0.0;  // IntegralGrowthClassical
  bool equivalence = false;

  struct Parts {
    double weighted = 0.0;
    double kernel = 0.0;
  };

  Parts evaluate(double r, double x, Complex z) const {
    Parts out;
    switch (form) {
      case Form::WCompGrowth: {
        double uv = std::abs(eval_ast(T->u(), z));
        Complex w = eval_ast(T->phi(), z);
        double delta;
        if (w == z) {
          // phi fixes the sample point: reuse its exact radial data so the
          // weight and the delta-norm cancel to machine precision
          delta = point_eval_norm_radial(*X, x).value;
        } else {
          double rw = std::abs(w);
          double xw = (1.0 - rw) * (1.0 + rw);
          delta = (xw > 0.0) ? point_eval_norm_radial(*X, xw).value : HUGE_VAL;
        }
        out.kernel = uv * delta;
        out.weighted = weight_value_radial(Y->weight(), r, x) * out.kernel;
        return out;
      }
      case Form::MultGrowth: {
        out.kernel = std::abs(eval_ast(T->h(), z)) * point_eval_norm_radial(*X, x).value;
        out.weighted = weight_value_radial(Y->weight(), r, x) * out.kernel;
        return out;
      }
      case Form::IntegralBloch: {
        out.kernel = std::abs(eval_ast(T->g_prime(), z)) * point_eval_norm_radial(*X, x).value;
        out.weighted = weight_value_radial(Y->weight(), r, x) * out.kernel;
        return out;
      }
      case Form::IntegralGrowthClassical: {
        out.kernel = std::abs(eval_ast(T->g_prime(), z)) * point_eval_norm_radial(*X, x).value;
        out.weighted = std::pow(x, target_beta + 1.0) * out.kernel;
        return out;
      }
    }
    throw Error("corrupt pairing");
  }
};

Pairing make_pairing(const OperatorSymbol& T, const SpaceDescriptor& X,
                     const SpaceDescriptor& Y) {
  Pairing ctx;
  ctx.T = &T;
  ctx.X = &X;
  ctx.Y = &Y;
  // the source must have a point-evaluation norm formula; probing also sets
  // the equivalence flag (Bloch-type sources, non-classical growth weights)
  ctx.equivalence = point_eval_norm_radial(X, 0.5).equivalence_class;

  const bool integral = (T.kind() == OperatorKind::Volterra || T.kind() == OperatorKind::Cesaro);
  if (T.kind() == OperatorKind::WeightedComposition && Y.kind() == SpaceKind::Growth) {
    ctx.form = Pairing::Form::WCompGrowth;
    return ctx;
  }
  if (T.kind() == OperatorKind::Multiplication && Y.kind() == SpaceKind::Growth) {
    ctx.form = Pairing::Form::MultGrowth;
    return ctx;
  }
  if (integral && Y.kind() == SpaceKind::BlochType) {
    ctx.form = Pairing::Form::IntegralBloch;
    return ctx;
  }
  if (integral && Y.kind() == SpaceKind::Growth) {
    if (!Y.weight().classical())
      throw UnsupportedError(
          "integral operators into growth targets need a classical power weight; " +
          supported_pairings());
    ctx.form = Pairing::Form::IntegralGrowthClassical;
    ctx.target_beta = Y.weight().beta();
    return ctx;
  }
  throw UnsupportedError("no factorised criterion for " + to_string(T.kind()) + " -> " +
                         to_string(Y) + "; " + supported_pairings());
}

// ---------------------------------------------------------------------------
// Generic profile engine over the ray x radius grid

struct EngineResult {
  std::vector<ProfileSample> samples;
  std::vector<RayFit> ray_fits;
  double sup = 0.0;
  bool sup_finite = true;
  std::vector<double> partial_sups;
  bool cauchy = false;
  double boundary_limit = 0.0;
  LimitKind boundary_kind = LimitKind::Zero;
};

EngineResult run_profile(const std::function<double(double r, double x, Complex z)>& value_fn,
                         const GridSpec& grid, const Tolerances& tol) {
  EngineResult out;
  out.partial_sups.assign(grid.max_j + 1, 0.0);

  for (int k = 0; k < grid.rays; ++k) {
    const double theta = 2.0 * kPi * k / grid.rays;
    RayFit fit;
    fit.ray = k;
    std::vector<double> hs, vals;

    for (int i = 0; i < grid.interior; ++i) {
      double r = 0.5 * i / grid.interior;
      double x = (1.0 - r) * (1.0 + r);
      double v = value_fn(r, x, polar_point(r, theta));
      out.samples.push_back({k, theta, 0, r, x, v});
      if (std::isfinite(v)) {
        out.sup = std::max(out.sup, v);
        out.partial_sups[0] = std::max(out.partial_sups[0], v);
      } else {
        out.sup_finite = false;
        fit.overflow = true;
      }
    }
    for (int j = 1; j <= grid.max_j; ++j) {
      double h = std::ldexp(1.0, -j);
      double r = 1.0 - h;
      double x = h * (2.0 - h);
      double v = value_fn(r, x, polar_point(r, theta));
      out.samples.push_back({k, theta, j, r, x, v});
      hs.push_back(h);
      vals.push_back(v);
      if (std::isfinite(v)) {
        out.sup = std::max(out.sup, v);
        out.partial_sups[j] = std::max(out.partial_sups[j], v);
      } else {
        out.sup_finite = false;
        fit.overflow = true;
      }
    }

    const int window = std::min<int>(grid.fit_window, static_cast<int>(vals.size()));
    std::vector<double> th(hs.end() - window, hs.end());
    std::vector<double> tv(vals.end() - window, vals.end());
    fit.decayed_to_zero =
        std::all_of(tv.begin(), tv.end(), [](double v) { return std::abs(v) < 1e-300; });
    if (!fit.decayed_to_zero && !fit.overflow) {
      ExponentFit ef = fit_exponent(th, tv);
      fit.exponent = ef.exponent;
      fit.residual = ef.residual;
      fit.reliable = ef.ok && ef.residual < tol.fit_residual &&
                     ef.points >= std::min(6, window);
      if (fit.reliable && std::abs(fit.exponent) <= tol.eps_fit) {
        RichardsonLimit lim = richardson_limit(
            std::vector<double>(vals.end() - std::min<std::size_t>(6, vals.size()), vals.end()));
        fit.has_limit = true;
        fit.limit = lim.limit;
      }
    }
    out.ray_fits.push_back(std::move(fit));
  }

  // cumulative partial sups and the Cauchy test on the deep tail
  for (int j = 1; j <= grid.max_j; ++j)
    out.partial_sups[j] = std::max(out.partial_sups[j], out.partial_sups[j - 1]);
  if (grid.max_j >= 6) {
    double s_end = out.partial_sups[grid.max_j];
    double s_prev = out.partial_sups[grid.max_j - 6];
    out.cauchy = (s_end - s_prev) <= tol.cauchy_rel * std::max(1.0, s_end);
  }

  // boundary behaviour across rays
  bool any_divergent = false, any_stabilised = false, any_unreliable = false;
  double stabilised_level = 0.0;
  for (const RayFit& f : out.ray_fits) {
    if (f.overflow || (f.reliable && f.exponent < -tol.eps_fit)) any_divergent = true;
    else if (f.has_limit) {
      any_stabilised = true;
      stabilised_level = std::max(stabilised_level, f.limit);
    } else if (!f.decayed_to_zero && !(f.reliable && f.exponent > tol.eps_fit)) {
      any_unreliable = true;
    }
  }
  if (any_divergent) {
    out.boundary_kind = LimitKind::Infinite;
    out.boundary_limit = HUGE_VAL;
  } else if (any_stabilised) {
    out.boundary_kind = LimitKind::Finite;
    out.boundary_limit = stabilised_level;
  } else if (any_unreliable) {
    out.boundary_kind = LimitKind::Oscillatory;
  } else {
    out.boundary_kind = LimitKind::Zero;
    out.boundary_limit = 0.0;
  }
  return out;
}

BoundednessVerdict bounded_from(const EngineResult& eng, const Tolerances& tol,
                                bool equivalence) {
  BoundednessVerdict out;
  out.equivalence_flag = equivalence;
  double min_exp = HUGE_VAL;
  bool any_divergent = false, all_ok = true;
  for (const RayFit& f : eng.ray_fits) {
    if (f.overflow) {
      any_divergent = true;
      continue;
    }
    if (f.decayed_to_zero) continue;
    if (!f.reliable) {
      all_ok = false;
      continue;
    }
    min_exp = std::min(min_exp, f.exponent);
    if (f.exponent < -tol.eps_fit) any_divergent = true;
  }
  if (any_divergent) {
    out.status = Tri::No;
    out.divergence_exponent = std::isfinite(min_exp) ? min_exp : -HUGE_VAL;
    return out;
  }
  if (all_ok && eng.cauchy && eng.sup_finite) {
    out.status = Tri::Yes;
    out.norm_estimate = eng.sup;
    return out;
  }
  out.status = Tri::Inconclusive;
  return out;
}

CriterionProfile profile_from(EngineResult eng, const GridSpec& grid, bool equivalence) {
  CriterionProfile P;
  P.grid = grid;
  P.samples = std::move(eng.samples);
  P.ray_fits = std::move(eng.ray_fits);
  P.sup_estimate = eng.sup;
  P.sup_finite = eng.sup_finite;
  P.partial_sups = std::move(eng.partial_sups);
  P.cauchy_sups = eng.cauchy;
  P.boundary_limit = eng.boundary_limit;
  P.boundary_kind = eng.boundary_kind;
  P.equivalence_class = equivalence;
  return P;
}

EngineResult engine_view(const CriterionProfile& P) {
  EngineResult eng;
  eng.samples = P.samples;
  eng.ray_fits = P.ray_fits;
  eng.sup = P.sup_estimate;
  eng.sup_finite = P.sup_finite;
  eng.partial_sups = P.partial_sups;
  eng.cauchy = P.cauchy_sups;
  eng.boundary_limit = P.boundary_limit;
  eng.boundary_kind = P.boundary_kind;
  return eng;
}

}  // namespace

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Inconclusive: return "inconclusive";
  }
  return "?";
}

double criterion_value(const OperatorSymbol& T, const SpaceDescriptor& X,
                       const SpaceDescriptor& Y, double r, double theta) {
  Pairing ctx = make_pairing(T, X, Y);
  double x = (1.0 - r) * (1.0 + r);
  return ctx.evaluate(r, x, polar_point(r, theta)).weighted;
}

CriterionProfile criterion_profile(const OperatorSymbol& T, const SpaceDescriptor& X,
                                   const SpaceDescriptor& Y, const GridSpec& grid,
                                   const Tolerances& tol) {
  Pairing ctx = make_pairing(T, X, Y);
  EngineResult eng = run_profile(
      [&ctx](double r, double x, Complex z) { return ctx.evaluate(r, x, z).weighted; }, grid,
      tol);
  return profile_from(std::move(eng), grid, ctx.equivalence);
}

BoundednessVerdict boundedness_verdict(const CriterionProfile& P, const Tolerances& tol) {
  return bounded_from(engine_view(P), tol, P.equivalence_class);
}

CompactnessVerdict compactness_verdict(const CriterionProfile& P, const Tolerances& tol) {
  CompactnessVerdict out;
  BoundednessVerdict bounded = boundedness_verdict(P, tol);
  if (bounded.status == Tri::No) {
    out.status = Tri::No;
    out.limit_estimate = HUGE_VAL;
    return out;
  }

  bool all_decayed = true, any_stabilised = false, any_unreliable = false;
  double level = 0.0, deepest = 0.0;
  for (const RayFit& f : P.ray_fits) {
    if (f.decayed_to_zero) continue;
    if (f.has_limit && f.limit > tol.decay_tol) {
      any_stabilised = true;
      level = std::max(level, f.limit);
      all_decayed = false;
      continue;
    }
    if (!(f.reliable && f.exponent > tol.eps_fit)) {
      all_decayed = false;
      if (!f.has_limit) any_unreliable = true;
    }
  }
  for (const ProfileSample& s : P.samples)
    if (s.j == P.grid.max_j && std::isfinite(s.value)) deepest = std::max(deepest, s.value);

  if (any_stabilised) {
    out.status = Tri::No;
    out.limit_estimate = level;
    return out;
  }
  if (all_decayed && deepest < tol.decay_tol && bounded.status == Tri::Yes) {
    out.status = Tri::Yes;
    return out;
  }
  (void)any_unreliable;
  out.status = Tri::Inconclusive;
  return out;
}

DnDiagnostic dn_diagnostic(const OperatorSymbol& T, const SpaceDescriptor& X,
                           const SpaceDescriptor& Y, const std::vector<double>& n_list,
                           const GridSpec& grid, const Tolerances& tol) {
  if (n_list.empty()) throw DomainError("dn_diagnostic requires a nonempty N list");
  Pairing ctx = make_pairing(T, X, Y);

  std::vector<Pairing::Parts> parts;
  for (int k = 0; k < grid.rays; ++k) {
    double theta = 2.0 * kPi * k / grid.rays;
    for (int i = 0; i < grid.interior; ++i) {
      double r = 0.5 * i / grid.interior;
      parts.push_back(ctx.evaluate(r, (1.0 - r) * (1.0 + r), polar_point(r, theta)));
    }
    for (int j = 1; j <= grid.max_j; ++j) {
      double h = std::ldexp(1.0, -j);
      double r = 1.0 - h;
      parts.push_back(ctx.evaluate(r, h * (2.0 - h), polar_point(r, theta)));
    }
  }

  DnDiagnostic out;
  out.n_list = n_list;
  for (double N : n_list) {
    double sup = 0.0;
    int count = 0;
    for (const auto& p : parts) {
      if (p.kernel > N) {
        ++count;
        if (std::isfinite(p.weighted)) sup = std::max(sup, p.weighted);
      }
    }
    out.sups.push_back(sup);
    out.sample_counts.push_back(count);
  }

  bool all_empty = std::all_of(out.sample_counts.begin(), out.sample_counts.end(),
                               [](int c) { return c == 0; });
  if (all_empty) {
    out.status = DnStatus::Holds;
    out.vacuous = true;
    out.note = "no grid sample has ||T*K_z|| above any requested N";
    return out;
  }

  bool nonincreasing = true;
  for (std::size_t i = 0; i + 1 < out.sups.size(); ++i)
    if (out.sups[i + 1] > out.sups[i] + 1e-12) nonincreasing = false;
  double first = out.sups.front(), last = out.sups.back();

  if (nonincreasing && (last < tol.decay_tol || last <= 0.6 * first)) {
    out.status = DnStatus::Holds;
    if (last >= tol.decay_tol)
      out.note = "sups decay but have not crossed the tolerance within the given N range";
    return out;
  }
  // a stall only counts as failure when the N list spans enough range to
  // separate it from slow decay
  bool wide_range = n_list.back() >= 100.0 * n_list.front();
  if (last >= tol.decay_tol && last >= 0.9 * first && wide_range) {
    out.status = DnStatus::Fails;
    out.note = "weighted sups stay at level " + std::to_string(last);
    return out;
  }
  out.status = DnStatus::Inconclusive;
  if (!wide_range) out.note = "N range too narrow to separate a stall from slow decay";
  return out;
}

double kernel_lower_bound(const OperatorSymbol& T, const SpaceDescriptor& X,
                          const SpaceDescriptor& Y, const std::vector<double>& trial_radii,
                          const NormOptions& norms, double kernel_norm_tol) {
  if (X.kind() != SpaceKind::Hardy && X.kind() != SpaceKind::Bergman)
    throw UnsupportedError("kernel test functions are available for Hardy/Bergman sources");
  if (trial_radii.empty()) throw DomainError("kernel_lower_bound needs trial radii");

  double best = 0.0;
  for (double w : trial_radii) {
    FunctionHandle kw = normalized_kernel(X, w);
    double nx = space_norm(X, kw, norms);
    if (std::abs(nx - 1.0) > kernel_norm_tol) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "kernel test function at w = %.6g has norm %.9g (|err| = %.3g > %.3g); "
                    "quadrature resolution insufficient",
                    w, nx, std::abs(nx - 1.0), kernel_norm_tol);
      throw QuadratureError(buf);
    }
    FunctionHandle image = apply(T, kw);
    NormOptions probe = norms;
    probe.extra_points.push_back(Complex(w, 0.0));
    double bound = space_norm(Y, image, probe);
    best = std::max(best, bound);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Symbol classification

SymbolFamily SymbolFamily::bloch(double gamma) {
  SymbolFamily f;
  f.kind = Kind::BlochType;
  f.parameter = gamma;
  return f;
}
SymbolFamily SymbolFamily::log_bloch() {
  SymbolFamily f;
  f.kind = Kind::LogBloch;
  return f;
}
SymbolFamily SymbolFamily::lipschitz() {
  SymbolFamily f;
  f.kind = Kind::Lipschitz;
  return f;
}
SymbolFamily SymbolFamily::little_growth(double beta) {
  SymbolFamily f;
  f.kind = Kind::LittleGrowth;
  f.parameter = beta;
  return f;
}
SymbolFamily SymbolFamily::little_bloch(Weight v) {
  SymbolFamily f;
  f.kind = Kind::LittleBloch;
  f.weight = std::move(v);
  return f;
}

std::string to_string(const SymbolFamily& fam) {
  char buf[80];
  switch (fam.kind) {
    case SymbolFamily::Kind::BlochType:
      std::snprintf(buf, sizeof(buf), "bloch:%.17g", fam.parameter);
      return buf;
    case SymbolFamily::Kind::LogBloch: return "logbloch";
    case SymbolFamily::Kind::Lipschitz: return "lipschitz";
    case SymbolFamily::Kind::LittleGrowth:
      std::snprintf(buf, sizeof(buf), "littlegrowth:%.17g", fam.parameter);
      return buf;
    case SymbolFamily::Kind::LittleBloch:
      return "littlebloch:" + to_string(*fam.weight);
  }
  return "?";
}

namespace {

// membership in sup (1-|z|^2)^a [log(1/(1-|z|^2))] |g'(z)| < inf
Classification classify_power_log(const ExprAST& g, double a, bool log_factor,
                                  const GridSpec& grid, const Tolerances& tol,
                                  std::string family_name) {
  ExprAST gp = differentiate_ast(g);
  auto value = [&gp, a, log_factor](double, double x, Complex z) {
    double v = std::pow(x, a) * std::abs(eval_ast(gp, z));
    if (log_factor) v *= std::log(1.0 / x);
    return v;
  };
  EngineResult eng = run_profile(value, grid, tol);
  BoundednessVerdict b = bounded_from(eng, tol, false);

  Classification out;
  out.family = std::move(family_name);
  out.member = b.status;
  if (b.status == Tri::Yes) out.seminorm_estimate = b.norm_estimate;
  if (b.status == Tri::No) {
    out.limit_estimate = HUGE_VAL;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "defining expression diverges (ray exponent %.4g)",
                  b.divergence_exponent);
    out.note = buf;
  }
  return out;
}

Classification classify_little(const ExprAST& g, const SpaceDescriptor& X,
                               std::string family_name) {
  FunctionHandle handle = FunctionHandle::from_ast(g);
  LittleVerdict lv = little_space_membership(handle, X);
  Classification out;
  out.family = std::move(family_name);
  switch (lv.status) {
    case LittleVerdict::Status::Member: out.member = Tri::Yes; break;
    case LittleVerdict::Status::NotMember:
      out.member = Tri::No;
      out.limit_estimate = lv.limit_estimate;
      break;
    case LittleVerdict::Status::Inconclusive: out.member = Tri::Inconclusive; break;
  }
  return out;
}

}  // namespace

Classification classify_symbol(const ExprAST& g, const SymbolFamily& fam,
                               const GridSpec& grid, const Tolerances& tol) {
  switch (fam.kind) {
    case SymbolFamily::Kind::BlochType:
      return classify_power_log(g, fam.parameter, false, grid, tol, to_string(fam));
    case SymbolFamily::Kind::LogBloch:
      return classify_power_log(g, 1.0, true, grid, tol, to_string(fam));
    case SymbolFamily::Kind::Lipschitz: {
      Classification out = classify_power_log(g, 0.0, false, grid, tol, to_string(fam));
      out.note = out.note.empty() ? "Lipschitz read as sup |g'| < inf" : out.note;
      return out;
    }
    case SymbolFamily::Kind::LittleGrowth:
      return classify_little(
          g, SpaceDescriptor::growth(Weight::classical_power(fam.parameter), true),
          to_string(fam));
    case SymbolFamily::Kind::LittleBloch:
      return classify_little(g, SpaceDescriptor::bloch_type(*fam.weight, true), to_string(fam));
  }
  throw Error("corrupt symbol family");
}

ClosedFormCondition closed_form_verdict(OperatorKind op_kind, const SpaceDescriptor& X,
                                        const SpaceDescriptor& Y) {
  if (op_kind != OperatorKind::Volterra && op_kind != OperatorKind::Cesaro)
    throw UnsupportedError("closed-form tables cover the Volterra and Cesaro operators");
  if (Y.kind() != SpaceKind::Growth && Y.kind() != SpaceKind::BlochType)
    throw UnsupportedError("closed-form tables target growth/Bloch-type spaces");
  if (!Y.weight().classical())
    throw UnsupportedError("closed-form tables need a classical power target weight");

  const double beta = Y.weight().beta();
  const double base = (Y.kind() == SpaceKind::Growth) ? beta + 1.0 : beta;

  ClosedFormCondition cond;
  switch (X.kind()) {
    case SpaceKind::Hardy:
      cond.exponent = base - 1.0 / X.p();
      break;
    case SpaceKind::Bergman:
      cond.exponent = base - (2.0 + X.alpha()) / X.p();
      break;
    case SpaceKind::Growth:
      if (!X.weight().classical())
        throw UnsupportedError("closed-form tables need a classical power source weight");
      cond.exponent = base - X.weight().beta();
      break;
    case SpaceKind::BlochType: {
      if (!X.weight().classical())
        throw UnsupportedError("closed-form tables need a classical power source weight");
      double gamma = X.weight().beta();
      cond.equivalence = true;
      if (std::abs(gamma - 1.0) <= 1e-12) {
        cond.exponent = base;
        cond.log_factor = true;
      } else if (gamma < 1.0) {
        cond.exponent = base;
      } else {
        cond.exponent = base + 1.0 - gamma;
      }
      break;
    }
  }

  char buf[160];
  const double a = cond.exponent;
  if (a > 1e-12) {
    cond.regime = ClosedFormCondition::Regime::BlochMembership;
    if (cond.log_factor && std::abs(a - 1.0) <= 1e-12) {
      cond.condition = "g in LogB (logarithmic Bloch)";
    } else if (cond.log_factor) {
      std::snprintf(buf, sizeof(buf),
                    "sup (1-|z|^2)^%.6g log(1/(1-|z|^2)) |g'(z)| < inf", a);
      cond.condition = buf;
    } else if (std::abs(a - 1.0) <= 1e-12) {
      cond.condition = "g in B (classical Bloch)";
    } else {
      std::snprintf(buf, sizeof(buf), "g in B_%.6g", a);
      cond.condition = buf;
    }
  } else if (a >= -1e-12) {
    cond.regime = ClosedFormCondition::Regime::Lipschitz;
    cond.condition = cond.log_factor ? "sup log(1/(1-|z|^2)) |g'(z)| < inf"
                                     : "g Lipschitz (sup |g'| < inf)";
  } else {
    cond.regime = ClosedFormCondition::Regime::ConstantOnly;
    cond.condition = "bounded only for constant g";
  }
  return cond;
}

Classification classify_condition(const ExprAST& g, const ClosedFormCondition& cond,
                                  const GridSpec& grid, const Tolerances& tol) {
  if (cond.regime == ClosedFormCondition::Regime::ConstantOnly) {
    // membership means g' vanishes identically
    ExprAST gp = differentiate_ast(g);
    double sup = 0.0;
    for (int k = 0; k < 16; ++k) {
      double th = 2.0 * kPi * k / 16.0 + 0.13;
      double r = 0.1 + 0.05 * k;
      sup = std::max(sup, std::abs(eval_ast(gp, polar_point(r * 0.5, th))));
    }
    Classification out;
    out.family = cond.condition;
    out.member = (sup <= 1e-12) ? Tri::Yes : Tri::No;
    if (out.member == Tri::No) out.note = "symbol is not constant";
    return out;
  }
  return classify_power_log(g, cond.exponent, cond.log_factor, grid, tol, cond.condition);
}

}  // namespace diskop
