#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diskop/common.hpp"
#include "diskop/expr.hpp"
#include "diskop/series.hpp"
#include "diskop/weights.hpp"

namespace diskop {

enum class SpaceKind { Hardy, Bergman, Growth, BlochType };

/// Descriptor for a function space on the disk:
///   Hardy(p), p > 1; Bergman(p, alpha), p > 0, alpha > -1;
///   Growth(v):    sup v(z)|f(z)|;
///   BlochType(v): sup v(z)|f'(z)| (a seminorm);
/// little = true marks the subspaces where the weighted modulus tends to 0
/// at the boundary (Growth/BlochType only).
class SpaceDescriptor {
 public:
  static SpaceDescriptor hardy(double p);
  static SpaceDescriptor bergman(double p, double alpha);
  static SpaceDescriptor growth(Weight v, bool little = false);
  static SpaceDescriptor bloch_type(Weight v, bool little = false);

  SpaceKind kind() const { return kind_; }
  double p() const { return p_; }
  double alpha() const { return alpha_; }
  const Weight& weight() const;
  bool little() const { return little_; }

 private:
  SpaceDescriptor() = default;
  SpaceKind kind_ = SpaceKind::Hardy;
  double p_ = 2.0;
  double alpha_ = 0.0;
  std::optional<Weight> weight_;
  bool little_ = false;
};

/// "hardy:p" | "bergman:p:alpha" | "growth:<weight>" | "bloch:<weight>",
/// optional ":little" suffix on growth/bloch.
SpaceDescriptor parse_space(std::string_view spec);
std::string to_string(const SpaceDescriptor& X);

/// A concrete function: closed-form tree, truncated series, or custom
/// pointwise evaluators (operator images). At least one representation is
/// always present; when a tree and a series are both given they are checked
/// against each other at interior probe points.
class FunctionHandle {
 public:
  using Evaluator = std::function<Complex(Complex)>;

  static FunctionHandle from_ast(ExprAST ast);
  static FunctionHandle from_series(TaylorSeries series);
  static FunctionHandle hybrid(ExprAST ast, TaylorSeries series);
  static FunctionHandle from_evaluators(Evaluator value, Evaluator derivative,
                                        std::optional<TaylorSeries> series = std::nullopt);

  Complex value(Complex z) const;

  /// f'(z); requires a tree, a derivative evaluator, or a series within radius.
  Complex derivative_value(Complex z) const;

  bool has_ast() const { return ast_.has_value(); }
  const ExprAST& ast() const { return *ast_; }
  bool has_series() const { return series_.has_value(); }
  const TaylorSeries& series() const { return *series_; }
  bool has_derivative() const;

  /// 1 for tree/evaluator-backed handles (the boundary circle may be probed),
  /// the series valid_radius otherwise.
  double max_eval_radius() const;

 private:
  FunctionHandle() = default;
  std::optional<ExprAST> ast_, dast_;
  std::optional<TaylorSeries> series_, dseries_;
  Evaluator eval_fn_, deriv_fn_;
};

struct PointEvalNorm {
  double value = 0.0;
  /// Known only up to multiplicative constants (Bloch-type sources and
  /// non-classical growth weights); consumers must not assert norm equality.
  bool equivalence_class = false;
};

/// Closed-form norm of the point evaluation functional delta_z on X:
///   Hardy(p):        (1-|z|^2)^(-1/p)
///   Bergman(p,a):    (1-|z|^2)^(-(a+2)/p)
///   Growth power b:  (1-|z|^2)^(-b); other weights 1/v(z), flagged
///   BlochType power b: 1 (b<1), log(1/(1-|z|^2)) (b=1), (1-|z|^2)^(1-b) (b>1),
///                      always flagged; non-classical Bloch weights unsupported.
PointEvalNorm point_eval_norm(const SpaceDescriptor& X, Complex z);
PointEvalNorm point_eval_norm_radial(const SpaceDescriptor& X, double one_minus_r2);

struct NormOptions {
  // growth/bloch sup grid: rays x (interior radii + dyadic radii 1-2^-j)
  int rays = 64;
  int max_j = 40;
  int interior = 10;
  std::vector<Complex> extra_points;  // additional sup probes

  // Hardy: max of circle means over dyadic radii and the boundary circle,
  // trapezoid rule with adaptive angular doubling
  int hardy_angular = 2048;
  int hardy_angular_cap = 1 << 19;
  int hardy_max_j = 20;

  // Bergman: Gauss-Legendre in r^2 x trapezoid in angle
  int bergman_radial = 128;
  int bergman_angular = 512;
};

/// Norm of f in X by quadrature. Returns +inf when the quadrature diverges
/// (unbounded norm at this resolution). Singularities strictly inside the
/// grid propagate as errors; a singular boundary circle is skipped.
double space_norm(const SpaceDescriptor& X, const FunctionHandle& f,
                  const NormOptions& opts = {});

struct LittleVerdict {
  enum class Status { Member, NotMember, Inconclusive } status = Status::Inconclusive;
  double limit_estimate = 0.0;   // stabilised boundary level (NotMember)
  double deepest_value = 0.0;    // max over rays at the deepest radius
  double min_ray_exponent = 0.0; // most pessimistic fitted decay exponent
};

/// Numerical membership of f in the little space (X with little = true):
/// samples v|f| (or v|f'|) along 32 rays at radii 1-2^-j and classifies the
/// boundary behaviour. Evidence, not a proof.
LittleVerdict little_space_membership(const FunctionHandle& f, const SpaceDescriptor& X);

/// Unit-norm test function attaining the point-evaluation norm at w in [0,1):
///   Hardy(p):   ((1-w^2)^(1/2) / (1-wz))^(2/p)
///   Bergman:    ((1-w^2)^(1/2) / (1-wz))^(2(2+alpha)/p)
FunctionHandle normalized_kernel(const SpaceDescriptor& X, double w);

}  // namespace diskop
