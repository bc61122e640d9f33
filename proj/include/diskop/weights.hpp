#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "diskop/common.hpp"
#include "diskop/expr.hpp"

namespace diskop {

enum class WeightKind { ClassicalPower, Log, Custom };

/// Radial weight v on the disk with values in (0, 1].
///
/// ClassicalPower(beta):  v(z) = (1-|z|^2)^beta, beta > 0.
/// Log:                   v(z) = (1-|z|^2) * log(e/(1-|z|^2)); the extra
///                        factor e inside the log keeps the value positive at
///                        the centre and <= 1, and changes nothing
///                        asymptotically at the boundary.
/// Custom(profile):       expression in the real radial variable t = |z|,
///                        normalised by its value at 0; the (0,1] codomain is
///                        checked on a radial grid at construction.
class Weight {
 public:
  static Weight classical_power(double beta);
  static Weight log_weight();
  static Weight custom(ExprAST profile_in_t);

  WeightKind kind() const { return kind_; }
  bool classical() const { return kind_ == WeightKind::ClassicalPower; }
  double beta() const;  // ClassicalPower only

  /// Raw profile value at radius t before normalisation (Custom only).
  double custom_raw(double t) const;

  const std::string& spec_string() const { return spec_; }

 private:
  Weight() = default;
  WeightKind kind_ = WeightKind::ClassicalPower;
  double beta_ = 1.0;
  std::optional<ExprAST> profile_;
  double normaliser_ = 1.0;
  std::string spec_;

  friend double weight_value_radial(const Weight&, double, double);
};

/// v at |z| = r; one_minus_r2 = 1-r^2 is passed separately so callers on
/// boundary-refining grids can supply it without cancellation.
double weight_value_radial(const Weight& v, double r, double one_minus_r2);

/// v(z) for |z| < 1.
double weight_value(const Weight& v, Complex z);

struct TypicalityVerdict {
  bool typical = false;
  std::string reason;              // empty when typical
  double fitted_decay_exponent = 0.0;
  double deepest_value = 0.0;      // v at the deepest grid radius
};

/// Checks the typical-weight properties on the radial grid r_j = 1-2^-j,
/// j = 1..24: monotone non-increase and decay to 0 at the boundary
/// (deep value below tolerance, or a positive fitted decay exponent).
/// Grid evidence, not a proof.
TypicalityVerdict is_typical(const Weight& v);

/// "power:beta" | "log" | "custom:<expression in t>"
Weight parse_weight(std::string_view spec);

std::string to_string(const Weight& v);

}  // namespace diskop
