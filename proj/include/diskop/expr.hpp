#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "diskop/common.hpp"
#include "diskop/series.hpp"

namespace diskop {

/// Immutable expression tree for closed-form symbols on the unit disk.
///
/// Node kinds: complex literal, the variable, +, -, unary -, *, /, power with
/// a real exponent, log, exp. Powers and logs use the principal branch; for
/// the canonical symbols built from 1-z this never crosses the cut since
/// Re(1-z) > 0 on the disk.
class ExprAST {
 public:
  enum class Kind { Literal, Var, Add, Sub, Neg, Mul, Div, Pow, Log, Exp };

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    Complex value{};        // Literal
    double exponent = 0.0;  // Pow
    NodePtr lhs, rhs;
  };

  ExprAST() = default;
  explicit ExprAST(NodePtr root, std::string source = {})
      : root_(std::move(root)), source_(std::move(source)) {}

  bool valid() const { return static_cast<bool>(root_); }
  const NodePtr& root() const { return root_; }
  const std::string& source_text() const { return source_; }

 private:
  NodePtr root_;
  std::string source_;
};

/// Parse an expression over the grammar
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' real)?
///   base   := number | 'i' | var | 'log' '(' expr ')' | 'exp' '(' expr ')' | '(' expr ')'
/// where `real` is an optionally parenthesised signed decimal literal and
/// `var` is the variable name (default "z").
///
/// Every division node is probed at 16 interior points to reject denominators
/// that vanish identically.
ExprAST parse(std::string_view text, std::string_view var_name = "z");

/// Pointwise evaluation. Any non-finite intermediate raises SingularityError;
/// a silent non-finite value is never returned. Intended for |z| < 1, and
/// usable on |z| = 1 off the singular set (boundary-circle quadrature).
Complex eval_ast(const ExprAST& e, Complex z);

/// Symbolic derivative with light constant folding.
ExprAST differentiate_ast(const ExprAST& e);

/// Taylor coefficients about 0 up to degree_cap, by series arithmetic over
/// the tree. Throws SingularityError if the expression is singular at 0.
TaylorSeries to_series(const ExprAST& e, int degree_cap = kDefaultDegreeCap);

/// Printable form, re-parseable by `parse`.
std::string to_string(const ExprAST& e);

/// e with every occurrence of the variable replaced by `inner` (composition).
ExprAST substitute(const ExprAST& e, const ExprAST& inner);

namespace ast {

ExprAST literal(Complex c);
ExprAST literal(double x);
ExprAST var();
ExprAST add(const ExprAST& a, const ExprAST& b);
ExprAST sub(const ExprAST& a, const ExprAST& b);
ExprAST neg(const ExprAST& a);
ExprAST mul(const ExprAST& a, const ExprAST& b);
ExprAST div(const ExprAST& a, const ExprAST& b);
ExprAST pow(const ExprAST& base, double exponent);
ExprAST log(const ExprAST& a);
ExprAST exp(const ExprAST& a);

}  // namespace ast

}  // namespace diskop
