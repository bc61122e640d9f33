#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "diskop/report.hpp"
#include "diskop/version.hpp"

namespace {

using namespace diskop;

SymbolFamily parse_family(const std::string& spec) {
  if (spec == "logbloch") return SymbolFamily::log_bloch();
  if (spec == "lipschitz") return SymbolFamily::lipschitz();
  auto split = spec.find(':');
  std::string head = spec.substr(0, split);
  std::string rest = split == std::string::npos ? "" : spec.substr(split + 1);
  if (head == "bloch") return SymbolFamily::bloch(std::stod(rest));
  if (head == "littlegrowth") return SymbolFamily::little_growth(std::stod(rest));
  if (head == "littlebloch") return SymbolFamily::little_bloch(parse_weight(rest));
  throw DomainError("unknown family '" + spec +
                    "' (bloch:<g>, logbloch, lipschitz, littlegrowth:<b>, littlebloch:<w>)");
}

int run_analyze(const std::string& config_path, std::string out_path, std::string csv_path) {
  JobConfig cfg = load_job_config(config_path);
  if (out_path.empty()) out_path = cfg.report_path;
  if (csv_path.empty()) csv_path = cfg.csv_path;

  Report rep = run_analysis(cfg);
  nlohmann::ordered_json j = report_to_json(rep);
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot open '" + out_path + "' for writing");
    out << j.dump(2) << "\n";
  }
  if (!csv_path.empty()) emit_profile_csv(rep.profile, csv_path);

  std::cerr << "bounded: " << to_string(rep.verdict.bounded.status)
            << ", compact: " << to_string(rep.verdict.compact.status) << "\n";
  return 0;
}

int run_classify(const std::string& symbol, const std::string& family_spec) {
  ExprAST g = parse(symbol);
  Classification c = classify_symbol(g, parse_family(family_spec));
  nlohmann::ordered_json j;
  j["symbol"] = symbol;
  j["family"] = c.family;
  j["member"] = to_string(c.member);
  j["seminorm_estimate"] = c.seminorm_estimate;
  if (c.member == Tri::No && std::isfinite(c.limit_estimate))
    j["limit_estimate"] = c.limit_estimate;
  if (!c.note.empty()) j["note"] = c.note;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_norm(const std::string& space_spec, const std::string& function, int series_cap) {
  SpaceDescriptor X = parse_space(space_spec);
  ExprAST f_ast = parse(function);
  FunctionHandle f = (series_cap > 0)
                         ? FunctionHandle::hybrid(f_ast, to_series(f_ast, series_cap))
                         : FunctionHandle::from_ast(f_ast);
  double n = space_norm(X, f);
  std::printf("%.12g\n", n);
  return 0;
}

int run_profile_csv(const std::string& config_path, const std::string& csv_path) {
  JobConfig cfg = load_job_config(config_path);
  OperatorSymbol T = build_operator(cfg.op);
  SpaceDescriptor X = parse_space(cfg.source);
  SpaceDescriptor Y = parse_space(cfg.target);
  CriterionProfile P = criterion_profile(T, X, Y, cfg.grid, cfg.tol);
  std::string path = csv_path.empty() ? cfg.csv_path : csv_path;
  if (path.empty()) {
    emit_profile_csv(P, std::cout);
  } else {
    emit_profile_csv(P, path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundedness/compactness criteria for intrinsic operators into growth spaces"};
  app.set_version_flag("--version", diskop::kVersion);
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path;
  auto* analyze = app.add_subcommand("analyze", "run the full criterion pipeline on a job config");
  analyze->add_option("--config", config_path, "job config JSON")->required();
  analyze->add_option("--out", out_path, "report JSON path (default: stdout)");
  analyze->add_option("--csv", csv_path, "also write the profile CSV here");

  std::string symbol, family;
  auto* classify = app.add_subcommand("classify", "classify a symbol in a seminorm family");
  classify->add_option("--symbol", symbol, "symbol expression in z")->required();
  classify->add_option("--family", family,
                       "bloch:<gamma> | logbloch | lipschitz | littlegrowth:<beta> | "
                       "littlebloch:<weight>")
      ->required();

  std::string space_spec, function;
  int series_cap = 0;
  auto* norm = app.add_subcommand("norm", "space norm of a closed-form function");
  norm->add_option("--space", space_spec, "hardy:p | bergman:p:a | growth:<w> | bloch:<w>")
      ->required();
  norm->add_option("--function", function, "expression in z")->required();
  norm->add_option("--series-cap", series_cap, "attach a Taylor series with this degree cap");

  std::string pconfig, pcsv;
  auto* profile = app.add_subcommand("profile", "emit the criterion profile as CSV");
  profile->add_option("--config", pconfig, "job config JSON")->required();
  profile->add_option("--csv", pcsv, "CSV output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return run_analyze(config_path, out_path, csv_path);
    if (*classify) return run_classify(symbol, family);
    if (*norm) return run_norm(space_spec, function, series_cap);
    if (*profile) return run_profile_csv(pconfig, pcsv);
  } catch (const diskop::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
