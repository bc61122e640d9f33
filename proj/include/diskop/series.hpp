#pragma once

#include <Eigen/Core>

#include "diskop/common.hpp"

namespace diskop {

inline constexpr int kDefaultDegreeCap = 256;
inline constexpr double kSeriesTol = 1e-10;

/// Truncated Taylor expansion about 0 with complex coefficients a_0..a_N.
///
/// valid_radius is the radius within which the truncation error is certified:
/// for series produced by truncating an analytic function it is estimated by
/// geometric extrapolation of the trailing coefficient magnitudes; for series
/// built directly from explicit coefficients the data IS the function (a
/// polynomial, zero tail) and the radius is 1.
class TaylorSeries {
 public:
  /// The zero constant.
  TaylorSeries();

  /// Exact polynomial with the given coefficients; valid_radius = 1.
  explicit TaylorSeries(Eigen::VectorXcd coeffs);

  TaylorSeries(Eigen::VectorXcd coeffs, double valid_radius);

  /// A truncation of an analytic function: valid_radius is estimated from the
  /// trailing coefficients so the extrapolated tail stays below `tol`.
  static TaylorSeries truncated(Eigen::VectorXcd coeffs, double tol = kSeriesTol);

  int degree_cap() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;  // 0 outside [0, degree_cap]
  double valid_radius() const { return valid_radius_; }

 private:
  Eigen::VectorXcd coeffs_;
  double valid_radius_ = 1.0;
};

/// Largest r in (0,1] at which the tail extrapolated from the trailing
/// coefficients stays below tol. Trailing exact zeros are read as a
/// polynomial (radius 1).
double estimate_valid_radius(const Eigen::VectorXcd& coeffs, double tol = kSeriesTol);

/// Horner evaluation. Requires |z| <= valid_radius.
Complex eval(const TaylorSeries& f, Complex z);

/// Termwise derivative, degree cap N-1 (a constant stays a one-term zero series).
TaylorSeries derivative(const TaylorSeries& f);

/// Termwise antiderivative with zero constant term, degree cap N+1.
TaylorSeries antiderivative(const TaylorSeries& f);

/// Full Cauchy product (degree cap = sum of caps); valid_radius = min of inputs.
TaylorSeries multiply(const TaylorSeries& f, const TaylorSeries& g);

TaylorSeries add(const TaylorSeries& f, const TaylorSeries& g);
TaylorSeries subtract(const TaylorSeries& f, const TaylorSeries& g);
TaylorSeries scale(const TaylorSeries& f, Complex c);

/// Zero-pad (or truncate) to the given degree cap; valid_radius preserved.
TaylorSeries pad(const TaylorSeries& f, int degree_cap);

/// f(rz) for 0 <= r < 1; valid_radius = min(1, valid_radius / r).
TaylorSeries dilate(const TaylorSeries& f, double r);

/// Series of f∘phi for phi(0) = 0, computed to f's degree cap.
/// Recentring a truncated series is ill-conditioned, so phi(0) != 0 is
/// rejected; general composition is done pointwise through expression trees.
TaylorSeries compose_at_zero(const TaylorSeries& f, const TaylorSeries& phi);

/// f / g with g(0) != 0, truncated at min degree cap.
TaylorSeries divide(const TaylorSeries& f, const TaylorSeries& g);

/// log(f) with f(0) != 0 (principal branch at the constant term).
TaylorSeries log(const TaylorSeries& f);

TaylorSeries exp(const TaylorSeries& f);

/// f^s with real s. Nonnegative integer s works for any f; otherwise f(0) != 0.
TaylorSeries pow(const TaylorSeries& f, double s);

}  // namespace diskop
