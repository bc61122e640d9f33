#pragma once

#include <optional>
#include <string>
#include <variant>

#include "diskop/common.hpp"
#include "diskop/expr.hpp"
#include "diskop/spaces.hpp"

namespace diskop {

enum class OperatorKind { WeightedComposition, Volterra, Cesaro, Multiplication, Differentiation };

/// One of the intrinsic operators, together with its defining symbols:
///   weighted composition f -> u * (f o phi)
///   Volterra             f -> int_0^z f g'
///   Cesaro               f -> (1/z) int_0^z f g'
///   multiplication       f -> h * f
///   differentiation      f -> f'
///
/// phi is validated as a self-map of the disk on a 64x64 sampling grid at
/// construction; g must be analytic at 0. The derivative g' is cached.
class OperatorSymbol {
 public:
  static OperatorSymbol weighted_composition(ExprAST u, ExprAST phi);
  static OperatorSymbol volterra(ExprAST g);
  static OperatorSymbol cesaro(ExprAST g);
  static OperatorSymbol multiplication(ExprAST h);
  static OperatorSymbol differentiation();

  OperatorKind kind() const { return kind_; }
  const ExprAST& u() const;
  const ExprAST& phi() const;
  const ExprAST& g() const;
  const ExprAST& g_prime() const;
  const ExprAST& h() const;

 private:
  OperatorSymbol() = default;
  OperatorKind kind_ = OperatorKind::Differentiation;
  std::optional<ExprAST> u_, phi_, g_, g_prime_, h_;
};

std::string to_string(OperatorKind kind);

/// Image of f under T as a hybrid handle: a series representation whenever
/// it is legal (series composition needs phi(0) = 0), and a pointwise
/// evaluator always. Volterra/Cesaro images evaluate through a graded
/// Gauss-Legendre line integral of f g' along [0, z]; their derivatives use
/// the closed forms f g' and (f g' - C_g f)/z.
FunctionHandle apply(const OperatorSymbol& T, const FunctionHandle& f);

/// Max absolute coefficient difference between T_g f and z * C_g f.
/// Requires f to carry a series.
double shift_relation_residual(const ExprAST& g, const FunctionHandle& f);

}  // namespace diskop
