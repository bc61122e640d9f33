#include "diskop/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "diskop/version.hpp"

namespace diskop {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json number_or_string(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : "-inf";
}

std::string grid_fingerprint(const GridSpec& g, const NormOptions& n) {
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "rays=%d;max_j=%d;interior=%d;fit_window=%d;hardy_angular=%d;"
                "bergman_radial=%d;bergman_angular=%d",
                g.rays, g.max_j, g.interior, g.fit_window, n.hardy_angular, n.bergman_radial,
                n.bergman_angular);
  return buf;
}

}  // namespace

JobConfig job_from_json(const json& j) {
  JobConfig cfg;
  const json& op = j.at("operator");
  cfg.op.kind = op.at("kind").get<std::string>();
  if (op.contains("g")) cfg.op.g = op["g"].get<std::string>();
  if (op.contains("u")) cfg.op.u = op["u"].get<std::string>();
  if (op.contains("phi")) cfg.op.phi = op["phi"].get<std::string>();
  if (op.contains("h")) cfg.op.h = op["h"].get<std::string>();
  cfg.source = j.at("source").get<std::string>();
  cfg.target = j.at("target").get<std::string>();

  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (g.contains("rays")) cfg.grid.rays = g["rays"].get<int>();
    if (g.contains("max_j")) cfg.grid.max_j = g["max_j"].get<int>();
    if (g.contains("interior")) cfg.grid.interior = g["interior"].get<int>();
    if (g.contains("fit_window")) cfg.grid.fit_window = g["fit_window"].get<int>();
    if (g.contains("angular")) cfg.norms.hardy_angular = g["angular"].get<int>();
    if (cfg.grid.rays <= 0 || cfg.grid.max_j <= 0 || cfg.grid.interior <= 0 ||
        cfg.grid.fit_window <= 0 || cfg.norms.hardy_angular <= 0)
      throw DomainError("grid parameters must be positive");
    cfg.norms.rays = cfg.grid.rays;
    cfg.norms.max_j = cfg.grid.max_j;
    cfg.norms.interior = cfg.grid.interior;
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (t.contains("fit_residual")) cfg.tol.fit_residual = t["fit_residual"].get<double>();
    if (t.contains("eps_fit")) cfg.tol.eps_fit = t["eps_fit"].get<double>();
    if (t.contains("cauchy_rel")) cfg.tol.cauchy_rel = t["cauchy_rel"].get<double>();
    if (t.contains("decay_tol")) cfg.tol.decay_tol = t["decay_tol"].get<double>();
    if (t.contains("kernel_norm_tol"))
      cfg.tol.kernel_norm_tol = t["kernel_norm_tol"].get<double>();
  }
  if (j.contains("n_list")) cfg.n_list = j["n_list"].get<std::vector<double>>();
  if (j.contains("trial_radii")) cfg.trial_radii = j["trial_radii"].get<std::vector<double>>();
  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    if (o.contains("report")) cfg.report_path = o["report"].get<std::string>();
    if (o.contains("csv")) cfg.csv_path = o["csv"].get<std::string>();
  }
  return cfg;
}

JobConfig load_job_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  json j = json::parse(in);
  return job_from_json(j);
}

OperatorSymbol build_operator(const OperatorConfig& oc) {
  auto need = [&](const std::optional<std::string>& field,
                  const char* name) -> const std::string& {
    if (!field)
      throw DomainError("operator '" + oc.kind + "' needs symbol '" + name + "'");
    return *field;
  };
  if (oc.kind == "volterra") return OperatorSymbol::volterra(parse(need(oc.g, "g")));
  if (oc.kind == "cesaro") return OperatorSymbol::cesaro(parse(need(oc.g, "g")));
  if (oc.kind == "wcomp")
    return OperatorSymbol::weighted_composition(parse(need(oc.u, "u")),
                                                parse(need(oc.phi, "phi")));
  if (oc.kind == "mult") return OperatorSymbol::multiplication(parse(need(oc.h, "h")));
  if (oc.kind == "diff") return OperatorSymbol::differentiation();
  throw DomainError("unknown operator kind '" + oc.kind +
                    "' (expected volterra|cesaro|wcomp|mult|diff)");
}

Report run_analysis(const JobConfig& config) {
  Report rep;
  rep.config = config;

  OperatorSymbol T = build_operator(config.op);
  SpaceDescriptor X = parse_space(config.source);
  SpaceDescriptor Y = parse_space(config.target);
  rep.operator_kind = to_string(T.kind());
  rep.source_space = to_string(X);
  rep.target_space = to_string(Y);

  rep.profile = criterion_profile(T, X, Y, config.grid, config.tol);
  rep.verdict.bounded = boundedness_verdict(rep.profile, config.tol);
  rep.verdict.compact = compactness_verdict(rep.profile, config.tol);
  rep.norm_upper = rep.profile.sup_estimate;

  if (rep.profile.equivalence_class)
    rep.warnings.push_back(
        "delta-norms known only up to constants; norm estimates are equivalence-class");

  if (!config.n_list.empty()) {
    rep.verdict.dn = dn_diagnostic(T, X, Y, config.n_list, config.grid, config.tol);
    if (rep.verdict.dn->status == DnStatus::Holds && rep.verdict.compact.status == Tri::No)
      rep.warnings.push_back(
          "level-set diagnostic holds but the profile limit is positive; inspect fits");
  }

  if (!config.trial_radii.empty() &&
      (X.kind() == SpaceKind::Hardy || X.kind() == SpaceKind::Bergman)) {
    double best = 0.0;
    for (double w : config.trial_radii) {
      double b = kernel_lower_bound(T, X, Y, {w}, config.norms, config.tol.kernel_norm_tol);
      rep.lower_bounds_by_radius.emplace_back(w, b);
      best = std::max(best, b);
    }
    rep.norm_lower = best;
    if (rep.norm_lower > rep.norm_upper * (1.0 + 1e-9))
      rep.warnings.push_back("kernel lower bound exceeds the profile sup; refine the grid");
  }

  if (T.kind() == OperatorKind::Volterra || T.kind() == OperatorKind::Cesaro) {
    try {
      ClosedFormCondition cond = closed_form_verdict(T.kind(), X, Y);
      rep.closed_form = cond;
      Classification membership = classify_condition(T.g(), cond, config.grid, config.tol);
      rep.condition_membership = membership;

      Tri numeric = rep.verdict.bounded.status;
      if (numeric != Tri::Inconclusive && membership.member != Tri::Inconclusive) {
        CrossCheck cc;
        cc.agrees = (numeric == membership.member);
        cc.detail = cc.agrees
                        ? "numerical verdict matches the closed-form condition"
                        : "numerical boundedness is '" + to_string(numeric) +
                              "' but the condition '" + cond.condition + "' is '" +
                              to_string(membership.member) + "'";
        rep.verdict.closed_form_cross_check = cc;
      } else {
        rep.warnings.push_back("closed-form cross-check omitted (inconclusive side)");
      }
    } catch (const UnsupportedError&) {
      // outside the tables; numerical verdicts stand alone
    }
  }

  // necessary condition for boundedness into a little space: the operator
  // applied to the constant 1 must itself lie in the little space
  if (Y.little()) {
    try {
      switch (T.kind()) {
        case OperatorKind::WeightedComposition:
          rep.little_necessary = classify_symbol(
              T.u(),
              Y.kind() == SpaceKind::Growth
                  ? SymbolFamily::little_growth(Y.weight().beta())
                  : SymbolFamily::little_bloch(Y.weight()),
              config.grid, config.tol);
          break;
        case OperatorKind::Volterra:
        case OperatorKind::Cesaro:
          if (Y.kind() == SpaceKind::BlochType)
            rep.little_necessary = classify_symbol(T.g(), SymbolFamily::little_bloch(Y.weight()),
                                                   config.grid, config.tol);
          else
            rep.little_necessary = classify_symbol(
                T.g(), SymbolFamily::little_growth(Y.weight().beta()), config.grid, config.tol);
          break;
        default:
          break;
      }
      if (rep.little_necessary && rep.little_necessary->member == Tri::No)
        rep.warnings.push_back(
            "necessary little-space condition fails: the symbol does not vanish at the "
            "boundary in the target norm");
    } catch (const Error&) {
      rep.warnings.push_back("little-space necessary condition could not be evaluated");
    }
  }

  return rep;
}

namespace {

ordered_json config_json(const JobConfig& c) {
  ordered_json op;
  op["kind"] = c.op.kind;
  if (c.op.g) op["g"] = *c.op.g;
  if (c.op.u) op["u"] = *c.op.u;
  if (c.op.phi) op["phi"] = *c.op.phi;
  if (c.op.h) op["h"] = *c.op.h;
  ordered_json j;
  j["operator"] = op;
  j["source"] = c.source;
  j["target"] = c.target;
  j["grid"] = {{"rays", c.grid.rays},
               {"max_j", c.grid.max_j},
               {"interior", c.grid.interior},
               {"fit_window", c.grid.fit_window},
               {"angular", c.norms.hardy_angular}};
  j["tolerances"] = {{"fit_residual", c.tol.fit_residual},
                     {"eps_fit", c.tol.eps_fit},
                     {"cauchy_rel", c.tol.cauchy_rel},
                     {"decay_tol", c.tol.decay_tol},
                     {"kernel_norm_tol", c.tol.kernel_norm_tol},
                     {"series_tol", kSeriesTol}};
  j["n_list"] = c.n_list;
  j["trial_radii"] = c.trial_radii;
  return j;
}

const char* limit_kind_name(LimitKind k) {
  switch (k) {
    case LimitKind::Zero: return "zero";
    case LimitKind::Finite: return "finite";
    case LimitKind::Infinite: return "infinite";
    case LimitKind::Oscillatory: return "oscillatory";
  }
  return "?";
}

ordered_json classification_json(const Classification& c) {
  ordered_json j;
  j["family"] = c.family;
  j["member"] = to_string(c.member);
  j["seminorm_estimate"] = number_or_string(c.seminorm_estimate);
  if (c.member == Tri::No) j["limit_estimate"] = number_or_string(c.limit_estimate);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

}  // namespace

ordered_json report_to_json(const Report& rep) {
  ordered_json j;
  j["tool"] = "diskop";
  j["version"] = kVersion;
  j["grid_fingerprint"] = grid_fingerprint(rep.config.grid, rep.config.norms);
  j["config"] = config_json(rep.config);
  j["operator"] = rep.operator_kind;
  j["source"] = rep.source_space;
  j["target"] = rep.target_space;

  ordered_json prof;
  prof["sup_estimate"] = number_or_string(rep.profile.sup_estimate);
  prof["sup_finite"] = rep.profile.sup_finite;
  prof["boundary_limit_kind"] = limit_kind_name(rep.profile.boundary_kind);
  prof["boundary_limit"] = number_or_string(rep.profile.boundary_limit);
  prof["cauchy_partial_sups"] = rep.profile.cauchy_sups;
  prof["equivalence_class"] = rep.profile.equivalence_class;
  prof["samples"] = rep.profile.samples.size();
  ordered_json rays = ordered_json::array();
  for (const RayFit& f : rep.profile.ray_fits) {
    ordered_json rj;
    rj["ray"] = f.ray;
    rj["exponent"] = number_or_string(f.exponent);
    rj["residual"] = number_or_string(f.residual);
    rj["reliable"] = f.reliable;
    if (f.decayed_to_zero) rj["decayed_to_zero"] = true;
    if (f.overflow) rj["overflow"] = true;
    if (f.has_limit) rj["limit"] = number_or_string(f.limit);
    rays.push_back(rj);
  }
  prof["ray_fits"] = rays;
  j["profile"] = prof;

  ordered_json verdict;
  verdict["bounded"] = {{"status", to_string(rep.verdict.bounded.status)},
                        {"norm_estimate", number_or_string(rep.verdict.bounded.norm_estimate)},
                        {"equivalence_flag", rep.verdict.bounded.equivalence_flag},
                        {"divergence_exponent",
                         number_or_string(rep.verdict.bounded.divergence_exponent)}};
  verdict["compact"] = {{"status", to_string(rep.verdict.compact.status)},
                        {"limit_estimate", number_or_string(rep.verdict.compact.limit_estimate)}};
  if (rep.verdict.dn) {
    const DnDiagnostic& dn = *rep.verdict.dn;
    const char* status = dn.status == DnStatus::Holds
                             ? "holds"
                             : dn.status == DnStatus::Fails ? "fails" : "inconclusive";
    ordered_json dj;
    dj["status"] = status;
    dj["n_list"] = dn.n_list;
    dj["sups"] = dn.sups;
    dj["sample_counts"] = dn.sample_counts;
    dj["vacuous"] = dn.vacuous;
    if (!dn.note.empty()) dj["note"] = dn.note;
    dj["sufficient_condition_only"] = true;
    verdict["dn_condition"] = dj;
  }
  if (rep.verdict.closed_form_cross_check) {
    verdict["closed_form_cross_check"] = {
        {"agrees", rep.verdict.closed_form_cross_check->agrees},
        {"detail", rep.verdict.closed_form_cross_check->detail}};
  }
  j["verdict"] = verdict;

  ordered_json norms;
  norms["upper_sup_profile"] = number_or_string(rep.norm_upper);
  if (rep.norm_lower) {
    norms["lower_kernel_bound"] = number_or_string(*rep.norm_lower);
    ordered_json per = ordered_json::array();
    for (auto [w, b] : rep.lower_bounds_by_radius)
      per.push_back({{"w", w}, {"bound", number_or_string(b)}});
    norms["lower_bounds_by_radius"] = per;
  }
  j["norm_estimates"] = norms;

  if (rep.closed_form) {
    const ClosedFormCondition& c = *rep.closed_form;
    const char* regime = c.regime == ClosedFormCondition::Regime::BlochMembership
                             ? "bloch_membership"
                             : c.regime == ClosedFormCondition::Regime::Lipschitz
                                   ? "lipschitz"
                                   : "constant_only";
    j["closed_form"] = {{"exponent", c.exponent},
                        {"log_factor", c.log_factor},
                        {"regime", regime},
                        {"condition", c.condition},
                        {"equivalence", c.equivalence}};
  }
  if (rep.condition_membership)
    j["condition_membership"] = classification_json(*rep.condition_membership);
  if (rep.little_necessary)
    j["little_space_necessary_condition"] = classification_json(*rep.little_necessary);

  j["warnings"] = rep.warnings;
  return j;
}

void emit_profile_csv(const CriterionProfile& P, std::ostream& out) {
  if (P.samples.empty()) throw DomainError("profile has no samples; refusing to write CSV");
  out << "ray_index,theta,j,r,value,fitted_exponent\n";
  for (const ProfileSample& s : P.samples) {
    const RayFit& f = P.ray_fits.at(s.ray);
    out << s.ray << ',' << fmt(s.theta) << ',' << s.j << ',' << fmt(s.r) << ',' << fmt(s.value)
        << ',' << fmt(f.exponent) << '\n';
  }
}

void emit_profile_csv(const CriterionProfile& P, const std::string& path) {
  if (P.samples.empty()) throw DomainError("profile has no samples; refusing to write CSV");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  emit_profile_csv(P, out);
  if (!out) throw Error("failed writing CSV to '" + path + "'");
}

}  // namespace diskop
