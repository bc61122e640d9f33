#include "diskop/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace diskop {

using Kind = ExprAST::Kind;
using Node = ExprAST::Node;
using NodePtr = ExprAST::NodePtr;

namespace {

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr make_literal(Complex c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Literal;
  n->value = c;
  return n;
}

bool is_literal(const NodePtr& n, Complex c) {
  return n->kind == Kind::Literal && n->value == c;
}

// Smart constructors with constant folding; they keep derivative trees small.
NodePtr mk_add(NodePtr a, NodePtr b) {
  if (a->kind == Kind::Literal && b->kind == Kind::Literal)
    return make_literal(a->value + b->value);
  if (is_literal(a, {0, 0})) return b;
  if (is_literal(b, {0, 0})) return a;
  return make(Kind::Add, std::move(a), std::move(b));
}

NodePtr mk_neg(NodePtr a) {
  if (a->kind == Kind::Literal) return make_literal(-a->value);
  return make(Kind::Neg, std::move(a));
}

NodePtr mk_sub(NodePtr a, NodePtr b) {
  if (a->kind == Kind::Literal && b->kind == Kind::Literal)
    return make_literal(a->value - b->value);
  if (is_literal(b, {0, 0})) return a;
  if (is_literal(a, {0, 0})) return mk_neg(std::move(b));
  return make(Kind::Sub, std::move(a), std::move(b));
}

NodePtr mk_mul(NodePtr a, NodePtr b) {
  if (a->kind == Kind::Literal && b->kind == Kind::Literal)
    return make_literal(a->value * b->value);
  if (is_literal(a, {0, 0}) || is_literal(b, {0, 0})) return make_literal({0, 0});
  if (is_literal(a, {1, 0})) return b;
  if (is_literal(b, {1, 0})) return a;
  return make(Kind::Mul, std::move(a), std::move(b));
}

NodePtr mk_div(NodePtr a, NodePtr b) {
  if (is_literal(b, {1, 0})) return a;
  if (is_literal(a, {0, 0})) return make_literal({0, 0});
  return make(Kind::Div, std::move(a), std::move(b));
}

NodePtr mk_pow(NodePtr base, double e) {
  if (e == 0.0) return make_literal({1, 0});
  if (e == 1.0) return base;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->exponent = e;
  n->lhs = std::move(base);
  return n;
}

// ---------------------------------------------------------------------------
// Parser

struct Token {
  enum Type { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Type type = End;
  double num = 0.0;
  std::string ident;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    tok_ = Token{};
    tok_.pos = i_;
    if (i_ >= text_.size()) {
      tok_.type = Token::End;
      return;
    }
    char c = text_[i_];
    switch (c) {
      case '+': tok_.type = Token::Plus; ++i_; return;
      case '-': tok_.type = Token::Minus; ++i_; return;
      case '*': tok_.type = Token::Star; ++i_; return;
      case '/': tok_.type = Token::Slash; ++i_; return;
      case '^': tok_.type = Token::Caret; ++i_; return;
      case '(': tok_.type = Token::LParen; ++i_; return;
      case ')': tok_.type = Token::RParen; ++i_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.data() + i_;
      const char* end = text_.data() + text_.size();
      double value = 0.0;
      auto res = std::from_chars(begin, end, value);
      if (res.ec != std::errc{})
        throw ParseError("malformed number", i_);
      tok_.type = Token::Num;
      tok_.num = value;
      i_ += static_cast<std::size_t>(res.ptr - begin);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < text_.size() && std::isalpha(static_cast<unsigned char>(text_[j]))) ++j;
      tok_.type = Token::Ident;
      tok_.ident = std::string(text_.substr(i_, j - i_));
      i_ = j;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

  std::string_view text_;
  std::size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(std::string_view text, std::string_view var_name)
      : lex_(text), var_(var_name) {}

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    if (lex_.peek().type != Token::End)
      throw ParseError("trailing input after expression", lex_.peek().pos);
    return e;
  }

 private:
  NodePtr parse_expr() {
    NodePtr acc;
    if (lex_.peek().type == Token::Minus) {
      lex_.take();
      acc = mk_neg(parse_term());
    } else {
      acc = parse_term();
    }
    while (lex_.peek().type == Token::Plus || lex_.peek().type == Token::Minus) {
      Token op = lex_.take();
      NodePtr rhs = parse_term();
      acc = (op.type == Token::Plus) ? mk_add(acc, rhs) : mk_sub(acc, rhs);
    }
    return acc;
  }

  NodePtr parse_term() {
    NodePtr acc = parse_factor();
    while (lex_.peek().type == Token::Star || lex_.peek().type == Token::Slash) {
      Token op = lex_.take();
      NodePtr rhs = parse_factor();
      acc = (op.type == Token::Star) ? mk_mul(acc, rhs) : mk_div(acc, rhs);
    }
    return acc;
  }

  NodePtr parse_factor() {
    NodePtr base = parse_base();
    if (lex_.peek().type == Token::Caret) {
      lex_.take();
      double e = parse_real_exponent();
      base = mk_pow(std::move(base), e);
    }
    return base;
  }

  // real exponent: NUM | '-' NUM | '(' ['-'] NUM ')'
  double parse_real_exponent() {
    double sign = 1.0;
    bool parens = false;
    if (lex_.peek().type == Token::LParen) {
      parens = true;
      lex_.take();
    }
    if (lex_.peek().type == Token::Minus) {
      sign = -1.0;
      lex_.take();
    }
    if (lex_.peek().type != Token::Num)
      throw ParseError("expected a real exponent", lex_.peek().pos);
    double v = lex_.take().num;
    if (parens) {
      if (lex_.peek().type != Token::RParen)
        throw ParseError("expected ')' after exponent", lex_.peek().pos);
      lex_.take();
    }
    return sign * v;
  }

  NodePtr parse_base() {
    Token t = lex_.peek();
    switch (t.type) {
      case Token::Num:
        lex_.take();
        return make_literal({t.num, 0.0});
      case Token::LParen: {
        lex_.take();
        NodePtr e = parse_expr();
        if (lex_.peek().type != Token::RParen)
          throw ParseError("expected ')'", lex_.peek().pos);
        lex_.take();
        return e;
      }
      case Token::Ident: {
        lex_.take();
        if (t.ident == "i") return make_literal({0.0, 1.0});
        if (t.ident == var_) return make(Kind::Var);
        if (t.ident == "log" || t.ident == "exp") {
          if (lex_.peek().type != Token::LParen)
            throw ParseError("expected '(' after '" + t.ident + "'", lex_.peek().pos);
          lex_.take();
          NodePtr arg = parse_expr();
          if (lex_.peek().type != Token::RParen)
            throw ParseError("expected ')'", lex_.peek().pos);
          lex_.take();
          return make(t.ident == "log" ? Kind::Log : Kind::Exp, std::move(arg));
        }
        throw ParseError("unknown identifier '" + t.ident + "'", t.pos);
      }
      default:
        throw ParseError("expected a number, variable or '('", t.pos);
    }
  }

  Lexer lex_;
  std::string var_;
};

Complex eval_node(const Node& n, Complex z);

Complex check_finite(Complex v, Complex z) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw SingularityError("expression singular at z = (" + std::to_string(z.real()) +
                           ", " + std::to_string(z.imag()) + ")");
  return v;
}

Complex eval_node(const Node& n, Complex z) {
  switch (n.kind) {
    case Kind::Literal: return n.value;
    case Kind::Var: return z;
    case Kind::Add: return check_finite(eval_node(*n.lhs, z) + eval_node(*n.rhs, z), z);
    case Kind::Sub: return check_finite(eval_node(*n.lhs, z) - eval_node(*n.rhs, z), z);
    case Kind::Neg: return -eval_node(*n.lhs, z);
    case Kind::Mul: return check_finite(eval_node(*n.lhs, z) * eval_node(*n.rhs, z), z);
    case Kind::Div: return check_finite(eval_node(*n.lhs, z) / eval_node(*n.rhs, z), z);
    case Kind::Pow:
      return check_finite(std::pow(eval_node(*n.lhs, z), Complex(n.exponent, 0.0)), z);
    case Kind::Log: return check_finite(std::log(eval_node(*n.lhs, z)), z);
    case Kind::Exp: return check_finite(std::exp(eval_node(*n.lhs, z)), z);
  }
  throw Error("corrupt expression node");
}

// 16 fixed interior probe points used by the division sanity check.
std::vector<Complex> probe_points() {
  std::vector<Complex> pts;
  const double radii[4] = {0.11, 0.23, 0.34, 0.45};
  for (int k = 0; k < 16; ++k) {
    double th = 2.0 * kPi * k / 16.0 + 0.37;
    double r = radii[k % 4];
    pts.emplace_back(r * std::cos(th), r * std::sin(th));
  }
  return pts;
}

void check_divisions(const NodePtr& n) {
  if (!n) return;
  if (n->kind == Kind::Div) {
    static const std::vector<Complex> pts = probe_points();
    bool nonzero = false;
    for (const auto& z : pts) {
      try {
        if (std::abs(eval_node(*n->rhs, z)) > 1e-12) {
          nonzero = true;
          break;
        }
      } catch (const SingularityError&) {
        nonzero = true;  // singular is certainly not identically zero
        break;
      }
    }
    if (!nonzero)
      throw ParseError("denominator vanishes at all probe points (identically zero?)", 0);
  }
  check_divisions(n->lhs);
  check_divisions(n->rhs);
}

NodePtr diff_node(const NodePtr& n) {
  switch (n->kind) {
    case Kind::Literal: return make_literal({0, 0});
    case Kind::Var: return make_literal({1, 0});
    case Kind::Add: return mk_add(diff_node(n->lhs), diff_node(n->rhs));
    case Kind::Sub: return mk_sub(diff_node(n->lhs), diff_node(n->rhs));
    case Kind::Neg: return mk_neg(diff_node(n->lhs));
    case Kind::Mul:
      return mk_add(mk_mul(diff_node(n->lhs), n->rhs), mk_mul(n->lhs, diff_node(n->rhs)));
    case Kind::Div:
      // (u/v)' = u'/v - u v'/v^2
      return mk_sub(mk_div(diff_node(n->lhs), n->rhs),
                    mk_div(mk_mul(n->lhs, diff_node(n->rhs)),
                           mk_pow(n->rhs, 2.0)));
    case Kind::Pow:
      // (u^s)' = s u^(s-1) u'
      return mk_mul(mk_mul(make_literal({n->exponent, 0}), mk_pow(n->lhs, n->exponent - 1.0)),
                    diff_node(n->lhs));
    case Kind::Log: return mk_div(diff_node(n->lhs), n->lhs);
    case Kind::Exp: return mk_mul(make(Kind::Exp, n->lhs), diff_node(n->lhs));
  }
  throw Error("corrupt expression node");
}

TaylorSeries series_node(const NodePtr& n, int cap) {
  switch (n->kind) {
    case Kind::Literal: {
      Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cap + 1);
      c[0] = n->value;
      return TaylorSeries(std::move(c), 1.0);
    }
    case Kind::Var: {
      Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cap + 1);
      if (cap >= 1) c[1] = Complex(1, 0);
      return TaylorSeries(std::move(c), 1.0);
    }
    case Kind::Add: return add(series_node(n->lhs, cap), series_node(n->rhs, cap));
    case Kind::Sub: return subtract(series_node(n->lhs, cap), series_node(n->rhs, cap));
    case Kind::Neg: return scale(series_node(n->lhs, cap), Complex(-1, 0));
    case Kind::Mul: {
      TaylorSeries p = multiply(series_node(n->lhs, cap), series_node(n->rhs, cap));
      // re-truncate the full product to the requested cap
      Eigen::VectorXcd c = p.coeffs().head(cap + 1);
      return TaylorSeries(std::move(c), p.valid_radius());
    }
    case Kind::Div: return divide(series_node(n->lhs, cap), series_node(n->rhs, cap));
    case Kind::Pow: return pow(series_node(n->lhs, cap), n->exponent);
    case Kind::Log: return log(series_node(n->lhs, cap));
    case Kind::Exp: return exp(series_node(n->lhs, cap));
  }
  throw Error("corrupt expression node");
}

NodePtr subst_node(const NodePtr& n, const NodePtr& inner) {
  switch (n->kind) {
    case Kind::Literal: return n;
    case Kind::Var: return inner;
    case Kind::Pow: return mk_pow(subst_node(n->lhs, inner), n->exponent);
    case Kind::Neg: return mk_neg(subst_node(n->lhs, inner));
    case Kind::Log: return make(Kind::Log, subst_node(n->lhs, inner));
    case Kind::Exp: return make(Kind::Exp, subst_node(n->lhs, inner));
    case Kind::Add: return mk_add(subst_node(n->lhs, inner), subst_node(n->rhs, inner));
    case Kind::Sub: return mk_sub(subst_node(n->lhs, inner), subst_node(n->rhs, inner));
    case Kind::Mul: return mk_mul(subst_node(n->lhs, inner), subst_node(n->rhs, inner));
    case Kind::Div: return mk_div(subst_node(n->lhs, inner), subst_node(n->rhs, inner));
  }
  throw Error("corrupt expression node");
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_literal(Complex c) {
  if (c.imag() == 0.0) {
    if (c.real() < 0.0) return "(0-" + format_real(-c.real()) + ")";
    return format_real(c.real());
  }
  if (c.real() == 0.0 && c.imag() == 1.0) return "i";
  std::string re = format_real(c.real());
  std::string im = format_real(std::abs(c.imag()));
  return "(" + re + (c.imag() >= 0 ? "+" : "-") + im + "*i)";
}

int precedence(Kind k) {
  switch (k) {
    case Kind::Add:
    case Kind::Sub:
    case Kind::Neg: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Pow: return 3;
    default: return 4;
  }
}

std::string print_node(const NodePtr& n, int parent_prec) {
  std::string s;
  int prec = precedence(n->kind);
  switch (n->kind) {
    case Kind::Literal: s = format_literal(n->value); break;
    case Kind::Var: s = "z"; break;
    case Kind::Add: s = print_node(n->lhs, prec) + "+" + print_node(n->rhs, prec + 1); break;
    case Kind::Sub: s = print_node(n->lhs, prec) + "-" + print_node(n->rhs, prec + 1); break;
    case Kind::Neg: s = "-" + print_node(n->lhs, prec + 1); break;
    case Kind::Mul: s = print_node(n->lhs, prec) + "*" + print_node(n->rhs, prec + 1); break;
    case Kind::Div: s = print_node(n->lhs, prec) + "/" + print_node(n->rhs, prec + 1); break;
    case Kind::Pow: {
      std::string e = (n->exponent < 0.0) ? "(-" + format_real(-n->exponent) + ")"
                                          : format_real(n->exponent);
      s = print_node(n->lhs, prec + 1) + "^" + e;
      break;
    }
    case Kind::Log: return "log(" + print_node(n->lhs, 0) + ")";
    case Kind::Exp: return "exp(" + print_node(n->lhs, 0) + ")";
  }
  if (prec < parent_prec &&
      n->kind != Kind::Literal && n->kind != Kind::Var)
    return "(" + s + ")";
  return s;
}

}  // namespace

ExprAST parse(std::string_view text, std::string_view var_name) {
  Parser p(text, var_name);
  NodePtr root = p.parse_all();
  check_divisions(root);
  return ExprAST(std::move(root), std::string(text));
}

Complex eval_ast(const ExprAST& e, Complex z) {
  if (!e.valid()) throw Error("evaluating an empty expression");
  return eval_node(*e.root(), z);
}

ExprAST differentiate_ast(const ExprAST& e) {
  if (!e.valid()) throw Error("differentiating an empty expression");
  NodePtr d = diff_node(e.root());
  return ExprAST(std::move(d));
}

TaylorSeries to_series(const ExprAST& e, int degree_cap) {
  if (!e.valid()) throw Error("expanding an empty expression");
  if (degree_cap < 0) throw DomainError("degree cap must be nonnegative");
  return series_node(e.root(), degree_cap);
}

std::string to_string(const ExprAST& e) {
  if (!e.valid()) return "";
  return print_node(e.root(), 0);
}

ExprAST substitute(const ExprAST& e, const ExprAST& inner) {
  if (!e.valid() || !inner.valid()) throw Error("substitute on an empty expression");
  return ExprAST(subst_node(e.root(), inner.root()));
}

namespace ast {

ExprAST literal(Complex c) { return ExprAST(make_literal(c)); }
ExprAST literal(double x) { return ExprAST(make_literal({x, 0.0})); }
ExprAST var() { return ExprAST(make(Kind::Var)); }
ExprAST add(const ExprAST& a, const ExprAST& b) { return ExprAST(mk_add(a.root(), b.root())); }
ExprAST sub(const ExprAST& a, const ExprAST& b) { return ExprAST(mk_sub(a.root(), b.root())); }
ExprAST neg(const ExprAST& a) { return ExprAST(mk_neg(a.root())); }
ExprAST mul(const ExprAST& a, const ExprAST& b) { return ExprAST(mk_mul(a.root(), b.root())); }
ExprAST div(const ExprAST& a, const ExprAST& b) { return ExprAST(mk_div(a.root(), b.root())); }
ExprAST pow(const ExprAST& base, double exponent) { return ExprAST(mk_pow(base.root(), exponent)); }
ExprAST log(const ExprAST& a) { return ExprAST(make(Kind::Log, a.root())); }
ExprAST exp(const ExprAST& a) { return ExprAST(make(Kind::Exp, a.root())); }

}  // namespace ast

}  // namespace diskop
