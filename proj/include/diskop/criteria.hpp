#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diskop/common.hpp"
#include "diskop/operators.hpp"
#include "diskop/spaces.hpp"

namespace diskop {

/// Boundary-refining sample grid: rays theta_k = 2 pi k / rays, interior
/// radii r = i/(2*interior) (recorded with j = 0) and dyadic radii
/// r_j = 1 - 2^-j, j = 1..max_j. Exponents are fitted per ray over the last
/// fit_window dyadic radii.
struct GridSpec {
  int rays = 64;
  int max_j = 40;
  int interior = 10;
  int fit_window = 12;
};

struct Tolerances {
  double fit_residual = 0.05;  // RMS log-space residual above which a fit is unreliable
  double eps_fit = 0.01;       // |exponent| below this reads as a finite nonzero limit
  double cauchy_rel = 1e-3;    // relative stall threshold for the partial-sup sequence
  double decay_tol = 0.05;     // compactness / level-set decay threshold
  double kernel_norm_tol = 1e-3;  // unit-norm check for kernel test functions
};

struct ProfileSample {
  int ray = 0;
  double theta = 0.0;
  int j = 0;  // 0 for interior sweep samples
  double r = 0.0;
  double one_minus_r2 = 0.0;
  double value = 0.0;
};

struct RayFit {
  int ray = 0;
  double exponent = 0.0;  // value ~ C (1-r)^exponent along the ray
  double residual = 0.0;
  bool reliable = false;
  bool decayed_to_zero = false;  // tail numerically zero
  bool overflow = false;         // non-finite samples on the ray
  bool has_limit = false;        // |exponent| < eps_fit: Richardson limit below
  double limit = 0.0;
};

enum class LimitKind { Zero, Finite, Infinite, Oscillatory };

/// Sampled values of the scalar boundedness/compactness criterion
/// z -> v(z) |factor(z)| ||delta||, with per-ray asymptotic fits.
struct CriterionProfile {
  GridSpec grid;
  std::vector<ProfileSample> samples;
  std::vector<RayFit> ray_fits;
  double sup_estimate = 0.0;
  bool sup_finite = true;
  std::vector<double> partial_sups;  // indexed by j (0 = interior sweep)
  bool cauchy_sups = false;
  double boundary_limit = 0.0;
  LimitKind boundary_kind = LimitKind::Zero;
  /// Some delta-norm in the profile is known only up to constants.
  bool equivalence_class = false;
};

enum class Tri { Yes, No, Inconclusive };

std::string to_string(Tri t);

struct BoundednessVerdict {
  Tri status = Tri::Inconclusive;
  double norm_estimate = 0.0;         // = sup of the profile when bounded
  bool equivalence_flag = false;      // norm known only up to constants
  double divergence_exponent = 0.0;   // most negative ray exponent when unbounded
};

struct CompactnessVerdict {
  Tri status = Tri::Inconclusive;
  double limit_estimate = 0.0;  // stabilised boundary level when non-compact
};

enum class DnStatus { Holds, Fails, Inconclusive };

/// Level-set decay diagnostic: restrict to D_N = { ||T* K_z|| > N } and track
/// the sup of the weighted profile as N grows. A vanishing sequence is a
/// sufficient compactness condition; this diagnostic never claims necessity.
struct DnDiagnostic {
  std::vector<double> n_list;
  std::vector<double> sups;
  std::vector<int> sample_counts;
  DnStatus status = DnStatus::Inconclusive;
  bool vacuous = false;
  std::string note;
};

struct CrossCheck {
  bool agrees = false;
  std::string detail;
};

struct AnalysisVerdict {
  BoundednessVerdict bounded;
  CompactnessVerdict compact;
  std::optional<DnDiagnostic> dn;
  std::optional<CrossCheck> closed_form_cross_check;
};

/// Value of the factorised criterion at radius r, angle theta. Supported
/// pairings:
///   weighted composition -> Growth(v):       v |u(z)| ||delta_phi(z)||_X
///   multiplication       -> Growth(v):       v |h(z)| ||delta_z||_X
///   Volterra/Cesaro      -> BlochType(v):    v |g'(z)| ||delta_z||_X
///   Volterra/Cesaro      -> Growth(power b): (1-|z|^2)^(b+1) |g'(z)| ||delta_z||_X
double criterion_value(const OperatorSymbol& T, const SpaceDescriptor& X,
                       const SpaceDescriptor& Y, double r, double theta);

CriterionProfile criterion_profile(const OperatorSymbol& T, const SpaceDescriptor& X,
                                   const SpaceDescriptor& Y, const GridSpec& grid = {},
                                   const Tolerances& tol = {});

/// Bounded when every ray exponent clears -eps_fit and the partial sups are
/// Cauchy; unbounded when a reliable ray diverges; inconclusive otherwise.
BoundednessVerdict boundedness_verdict(const CriterionProfile& P, const Tolerances& tol = {});

/// Compact when every ray decays below decay_tol with a positive exponent;
/// non-compact when a ray stabilises at a positive level (or the profile
/// diverges); inconclusive on oscillation or unreliable fits.
CompactnessVerdict compactness_verdict(const CriterionProfile& P, const Tolerances& tol = {});

DnDiagnostic dn_diagnostic(const OperatorSymbol& T, const SpaceDescriptor& X,
                           const SpaceDescriptor& Y, const std::vector<double>& n_list,
                           const GridSpec& grid = {}, const Tolerances& tol = {});

/// Certified lower bound for ||T||: max over trial base points w of
/// ||T k_w||_Y with k_w the unit-norm kernel test function of X. Aborts if a
/// test-function norm deviates from 1 beyond kernel_norm_tol.
double kernel_lower_bound(const OperatorSymbol& T, const SpaceDescriptor& X,
                          const SpaceDescriptor& Y, const std::vector<double>& trial_radii,
                          const NormOptions& norms = {},
                          double kernel_norm_tol = 1e-3);

struct SymbolFamily {
  enum class Kind { BlochType, LogBloch, Lipschitz, LittleGrowth, LittleBloch };
  Kind kind = Kind::BlochType;
  double parameter = 1.0;          // gamma (BlochType) or beta (LittleGrowth)
  std::optional<Weight> weight;    // LittleBloch

  static SymbolFamily bloch(double gamma);
  static SymbolFamily log_bloch();
  static SymbolFamily lipschitz();  // read as sup |g'| < inf
  static SymbolFamily little_growth(double beta);
  static SymbolFamily little_bloch(Weight v);
};

std::string to_string(const SymbolFamily& fam);

struct Classification {
  Tri member = Tri::Inconclusive;
  double seminorm_estimate = 0.0;  // sup of the defining expression when member
  double limit_estimate = 0.0;     // boundary level for failed little families
  std::string family;
  std::string note;
};

Classification classify_symbol(const ExprAST& g, const SymbolFamily& fam,
                               const GridSpec& grid = {}, const Tolerances& tol = {});

/// The classical-table condition equivalent to boundedness of T_g (= C_g) for
/// the supported source/target pairs: the profile behaves as
/// (1-|z|^2)^exponent [log factor] |g'(z)|, and boundedness is equivalent to
/// Bloch-type membership (exponent > 0), Lipschitz (exponent = 0), or g
/// constant (exponent < 0).
struct ClosedFormCondition {
  double exponent = 0.0;
  bool log_factor = false;  // Bloch-type source with gamma = 1
  enum class Regime { BlochMembership, Lipschitz, ConstantOnly } regime = Regime::BlochMembership;
  std::string condition;
  bool equivalence = false;  // constants unknown (Bloch-type source)
};

ClosedFormCondition closed_form_verdict(OperatorKind op_kind, const SpaceDescriptor& X,
                                        const SpaceDescriptor& Y);

/// Numerical membership in the condition family of a closed-form verdict.
Classification classify_condition(const ExprAST& g, const ClosedFormCondition& cond,
                                  const GridSpec& grid = {}, const Tolerances& tol = {});

}  // namespace diskop
