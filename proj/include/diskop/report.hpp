#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diskop/criteria.hpp"
#include "diskop/operators.hpp"
#include "diskop/spaces.hpp"

namespace diskop {

/// Operator entry of a job config:
///   {"kind": "volterra"|"cesaro"|"wcomp"|"mult"|"diff",
///    "g": expr, "u": expr, "phi": expr, "h": expr}
struct OperatorConfig {
  std::string kind;
  std::optional<std::string> g, u, phi, h;
};

struct JobConfig {
  OperatorConfig op;
  std::string source;
  std::string target;
  GridSpec grid;
  Tolerances tol;
  NormOptions norms;
  std::vector<double> n_list;       // level-set diagnostic; empty -> skipped
  std::vector<double> trial_radii;  // kernel lower bounds; empty -> skipped
  std::string report_path;          // optional defaults from the config file
  std::string csv_path;
};

JobConfig job_from_json(const nlohmann::json& j);
JobConfig load_job_config(const std::string& path);

OperatorSymbol build_operator(const OperatorConfig& oc);

/// Full analysis result; serialisable as a byte-stable ordered JSON document.
struct Report {
  JobConfig config;
  std::string source_space, target_space, operator_kind;
  CriterionProfile profile;
  AnalysisVerdict verdict;
  std::optional<ClosedFormCondition> closed_form;
  std::optional<Classification> condition_membership;
  std::optional<Classification> little_necessary;  // little-space targets
  double norm_upper = 0.0;
  std::optional<double> norm_lower;
  std::vector<std::pair<double, double>> lower_bounds_by_radius;
  std::vector<std::string> warnings;
};

Report run_analysis(const JobConfig& config);

nlohmann::ordered_json report_to_json(const Report& report);

/// CSV rows `ray_index,theta,j,r,value,fitted_exponent` (LF line endings).
/// The interior sweep carries j = 0; dyadic radii carry their j.
void emit_profile_csv(const CriterionProfile& P, std::ostream& out);
void emit_profile_csv(const CriterionProfile& P, const std::string& path);

}  // namespace diskop
