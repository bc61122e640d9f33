#include "diskop/operators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "diskop/quadrature.hpp"

namespace diskop {

namespace {

void check_self_map(const ExprAST& phi) {
  // 64 radii x 64 angles; violations are reported, not silently accepted
  for (int i = 0; i < 64; ++i) {
    double r = (i + 0.5) / 64.0;
    for (int k = 0; k < 64; ++k) {
      double th = 2.0 * kPi * k / 64.0;
      Complex z(r * std::cos(th), r * std::sin(th));
      double mod = std::abs(eval_ast(phi, z));
      if (!(mod < 1.0 + 1e-9))
        throw DomainError("phi is not a self-map of the disk: |phi(z)| = " +
                          std::to_string(mod) + " at |z| = " + std::to_string(r));
    }
  }
}

void check_analytic_at_zero(const ExprAST& g) {
  try {
    (void)to_series(g, 2);
  } catch (const SingularityError&) {
    throw DomainError("integral-operator symbol must be analytic at 0");
  }
}

// int_0^z f(w) g'(w) dw = z * int_0^1 f(tz) g'(tz) dt with panels graded
// toward t = 1, where the integrand may blow up as z approaches the boundary.
Complex volterra_integral(const FunctionHandle& f, const ExprAST& gp, Complex z) {
  if (z == Complex(0.0, 0.0)) return {0.0, 0.0};
  const double dist = std::max(1.0 - std::abs(z), 1e-15);
  const int refine = static_cast<int>(std::ceil(std::log2(1.0 / dist))) + 2;
  const int panels = std::clamp(refine, 8, 64);
  const GaussLegendre& gl = gauss_legendre(16);

  Complex total(0.0, 0.0);
  double lo = 0.0;
  for (int m = 0; m < panels; ++m) {
    double hi = (m + 1 == panels) ? 1.0 : 1.0 - std::ldexp(1.0, -(m + 1));
    double len = hi - lo;
    for (int q = 0; q < gl.nodes.size(); ++q) {
      double t = lo + len * gl.nodes[q];
      Complex w = t * z;
      total += len * gl.weights[q] * f.value(w) * eval_ast(gp, w);
    }
    lo = hi;
  }
  return z * total;
}

}  // namespace

OperatorSymbol OperatorSymbol::weighted_composition(ExprAST u, ExprAST phi) {
  check_self_map(phi);
  OperatorSymbol T;
  T.kind_ = OperatorKind::WeightedComposition;
  T.u_ = std::move(u);
  T.phi_ = std::move(phi);
  return T;
}

OperatorSymbol OperatorSymbol::volterra(ExprAST g) {
  check_analytic_at_zero(g);
  OperatorSymbol T;
  T.kind_ = OperatorKind::Volterra;
  T.g_prime_ = differentiate_ast(g);
  T.g_ = std::move(g);
  return T;
}

OperatorSymbol OperatorSymbol::cesaro(ExprAST g) {
  OperatorSymbol T = volterra(std::move(g));
  T.kind_ = OperatorKind::Cesaro;
  return T;
}

OperatorSymbol OperatorSymbol::multiplication(ExprAST h) {
  OperatorSymbol T;
  T.kind_ = OperatorKind::Multiplication;
  T.h_ = std::move(h);
  return T;
}

OperatorSymbol OperatorSymbol::differentiation() { return OperatorSymbol(); }

const ExprAST& OperatorSymbol::u() const {
  if (!u_) throw DomainError("operator has no symbol u");
  return *u_;
}
const ExprAST& OperatorSymbol::phi() const {
  if (!phi_) throw DomainError("operator has no symbol phi");
  return *phi_;
}
const ExprAST& OperatorSymbol::g() const {
  if (!g_) throw DomainError("operator has no symbol g");
  return *g_;
}
const ExprAST& OperatorSymbol::g_prime() const {
  if (!g_prime_) throw DomainError("operator has no symbol g");
  return *g_prime_;
}
const ExprAST& OperatorSymbol::h() const {
  if (!h_) throw DomainError("operator has no symbol h");
  return *h_;
}

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::WeightedComposition: return "wcomp";
    case OperatorKind::Volterra: return "volterra";
    case OperatorKind::Cesaro: return "cesaro";
    case OperatorKind::Multiplication: return "mult";
    case OperatorKind::Differentiation: return "diff";
  }
  return "?";
}

namespace {

// series work cap for operator images: generous for low-degree inputs so
// compositions and products keep their full structure
int work_cap(const FunctionHandle& f) {
  return std::max(f.series().degree_cap(), kDefaultDegreeCap);
}

FunctionHandle apply_weighted_composition(const OperatorSymbol& T, const FunctionHandle& f) {
  const ExprAST& u = T.u();
  const ExprAST& phi = T.phi();

  std::optional<TaylorSeries> image_series;
  if (f.has_series()) {
    const int cap = work_cap(f);
    TaylorSeries phi_series = to_series(phi, cap);
    if (std::abs(phi_series.coeff(0)) <= 1e-14) {
      TaylorSeries composed = compose_at_zero(pad(f.series(), cap), phi_series);
      TaylorSeries prod = multiply(to_series(u, cap), composed);
      image_series = pad(prod, cap);
    }
  }

  if (f.has_ast()) {
    ExprAST image = ast::mul(u, substitute(f.ast(), phi));
    if (image_series) return FunctionHandle::hybrid(std::move(image), *image_series);
    return FunctionHandle::from_ast(std::move(image));
  }

  ExprAST du = differentiate_ast(u);
  ExprAST dphi = differentiate_ast(phi);
  auto value = [u, phi, f](Complex z) { return eval_ast(u, z) * f.value(eval_ast(phi, z)); };
  auto deriv = [u, du, phi, dphi, f](Complex z) {
    Complex w = eval_ast(phi, z);
    return eval_ast(du, z) * f.value(w) + eval_ast(u, z) * f.derivative_value(w) * eval_ast(dphi, z);
  };
  return FunctionHandle::from_evaluators(value, deriv, image_series);
}

FunctionHandle apply_multiplication(const OperatorSymbol& T, const FunctionHandle& f) {
  const ExprAST& h = T.h();
  std::optional<TaylorSeries> image_series;
  if (f.has_series()) {
    const int cap = work_cap(f);
    image_series = pad(multiply(to_series(h, cap), pad(f.series(), cap)), cap);
  }
  if (f.has_ast()) {
    ExprAST image = ast::mul(h, f.ast());
    if (image_series) return FunctionHandle::hybrid(std::move(image), *image_series);
    return FunctionHandle::from_ast(std::move(image));
  }
  ExprAST dh = differentiate_ast(h);
  auto value = [h, f](Complex z) { return eval_ast(h, z) * f.value(z); };
  auto deriv = [h, dh, f](Complex z) {
    return eval_ast(dh, z) * f.value(z) + eval_ast(h, z) * f.derivative_value(z);
  };
  return FunctionHandle::from_evaluators(value, deriv, image_series);
}

FunctionHandle apply_differentiation(const FunctionHandle& f) {
  if (f.has_ast()) {
    ExprAST image = differentiate_ast(f.ast());
    if (f.has_series()) return FunctionHandle::hybrid(std::move(image), derivative(f.series()));
    return FunctionHandle::from_ast(std::move(image));
  }
  if (f.has_series()) return FunctionHandle::from_series(derivative(f.series()));
  throw UnsupportedError(
      "differentiation image needs a tree or series form of f (missing capability: "
      "second derivative of an evaluator-only handle)");
}

FunctionHandle apply_volterra(const OperatorSymbol& T, const FunctionHandle& f) {
  const ExprAST gp = T.g_prime();

  std::optional<TaylorSeries> image_series;
  if (f.has_series()) {
    const int cap = work_cap(f);
    TaylorSeries gps = to_series(gp, cap);
    image_series = antiderivative(pad(multiply(pad(f.series(), cap), gps), cap));
  }
  auto value = [f, gp](Complex z) { return volterra_integral(f, gp, z); };
  auto deriv = [f, gp](Complex z) { return f.value(z) * eval_ast(gp, z); };
  return FunctionHandle::from_evaluators(value, deriv, image_series);
}

FunctionHandle apply_cesaro(const OperatorSymbol& T, const FunctionHandle& f) {
  const ExprAST gp = T.g_prime();
  const ExprAST gpp = differentiate_ast(gp);

  std::optional<TaylorSeries> image_series;
  if (f.has_series()) {
    const int cap = work_cap(f);
    TaylorSeries gps = to_series(gp, cap);
    TaylorSeries prod = pad(multiply(pad(f.series(), cap), gps), cap);
    // (1/z) int_0^z f g': coefficient c_k = (f g')_k / (k+1)
    Eigen::VectorXcd c(cap + 1);
    for (int k = 0; k <= cap; ++k)
      c[k] = prod.coeff(k) / static_cast<double>(k + 1);
    image_series = TaylorSeries(std::move(c), prod.valid_radius());
  }
  // value at 0 is the continuous extension f(0) g'(0)
  auto value = [f, gp](Complex z) {
    if (z == Complex(0.0, 0.0)) return f.value(z) * eval_ast(gp, z);
    return volterra_integral(f, gp, z) / z;
  };
  auto deriv = [f, gp, gpp](Complex z) {
    if (z == Complex(0.0, 0.0)) {
      // second coefficient of the integral: (f g')'(0) / 2
      Complex fg1 = f.derivative_value(z) * eval_ast(gp, z) + f.value(z) * eval_ast(gpp, z);
      return 0.5 * fg1;
    }
    Complex ces = volterra_integral(f, gp, z) / z;
    return (f.value(z) * eval_ast(gp, z) - ces) / z;
  };
  return FunctionHandle::from_evaluators(value, deriv, image_series);
}

}  // namespace

FunctionHandle apply(const OperatorSymbol& T, const FunctionHandle& f) {
  switch (T.kind()) {
    case OperatorKind::WeightedComposition: return apply_weighted_composition(T, f);
    case OperatorKind::Volterra: return apply_volterra(T, f);
    case OperatorKind::Cesaro: return apply_cesaro(T, f);
    case OperatorKind::Multiplication: return apply_multiplication(T, f);
    case OperatorKind::Differentiation: return apply_differentiation(f);
  }
  throw Error("corrupt operator kind");
}

double shift_relation_residual(const ExprAST& g, const FunctionHandle& f) {
  if (!f.has_series())
    throw DomainError("shift_relation_residual requires a series representation of f");
  OperatorSymbol Tg = OperatorSymbol::volterra(g);
  OperatorSymbol Cg = OperatorSymbol::cesaro(g);
  FunctionHandle v = apply(Tg, f);
  FunctionHandle c = apply(Cg, f);
  const TaylorSeries& vs = v.series();
  const TaylorSeries& cs = c.series();
  // z * C_g f shifts the Cesaro coefficients up one degree
  int cap = std::min(vs.degree_cap(), cs.degree_cap() + 1);
  double residual = std::abs(vs.coeff(0));
  for (int k = 1; k <= cap; ++k)
    residual = std::max(residual, std::abs(vs.coeff(k) - cs.coeff(k - 1)));
  return residual;
}

}  // namespace diskop
