#include "diskop/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace diskop {

namespace {

// Cauchy product of a and b, truncated at `cap`.
Eigen::VectorXcd conv_cap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, int cap) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cap + 1);
  const int na = static_cast<int>(a.size()) - 1;
  const int nb = static_cast<int>(b.size()) - 1;
  for (int i = 0; i <= std::min(na, cap); ++i) {
    if (a[i] == Complex(0.0, 0.0)) continue;
    const int jmax = std::min(nb, cap - i);
    for (int j = 0; j <= jmax; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

}  // namespace

TaylorSeries::TaylorSeries() : coeffs_(Eigen::VectorXcd::Zero(1)), valid_radius_(1.0) {}

TaylorSeries::TaylorSeries(Eigen::VectorXcd coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) coeffs_ = Eigen::VectorXcd::Zero(1);
}

TaylorSeries::TaylorSeries(Eigen::VectorXcd coeffs, double valid_radius)
    : coeffs_(std::move(coeffs)), valid_radius_(valid_radius) {
  if (coeffs_.size() == 0) coeffs_ = Eigen::VectorXcd::Zero(1);
  if (!(valid_radius_ > 0.0) || valid_radius_ > 1.0)
    throw DomainError("valid_radius must lie in (0, 1]");
}

TaylorSeries TaylorSeries::truncated(Eigen::VectorXcd coeffs, double tol) {
  double r = estimate_valid_radius(coeffs, tol);
  return TaylorSeries(std::move(coeffs), r);
}

Complex TaylorSeries::coeff(int k) const {
  if (k < 0 || k > degree_cap()) return {0.0, 0.0};
  return coeffs_[k];
}

double estimate_valid_radius(const Eigen::VectorXcd& coeffs, double tol) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 0) return 1.0;

  int last_nz = -1;
  for (int k = 0; k <= n; ++k)
    if (coeffs[k] != Complex(0.0, 0.0)) last_nz = k;
  if (last_nz < 0) return 1.0;       // identically zero
  if (n - last_nz >= 2) return 1.0;  // trailing exact zeros: polynomial

  // Fit log|a_k| ~ c + s*k over the nonzero entries of the last 16 slots.
  const int k0 = std::max(0, n - 15);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int k = k0; k <= n; ++k) {
    double mag = std::abs(coeffs[k]);
    if (mag <= 0.0) continue;
    double x = static_cast<double>(k), y = std::log(mag);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++m;
  }
  double slope = 0.0, intercept = 0.0;
  if (m >= 2 && m * sxx - sx * sx > 0.0) {
    slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    intercept = (sy - slope * sx) / m;
  } else {
    // single data point: flat extrapolation from its magnitude
    intercept = sy - 0.0;
  }

  auto tail = [&](double r) -> double {
    if (r <= 0.0) return 0.0;
    const double lr = std::log(r);
    double sum = 0.0;
    for (int k = n + 1; k <= n + 4000; ++k) {
      double lterm = intercept + slope * k + k * lr;
      if (lterm > 700.0) return HUGE_VAL;
      double term = std::exp(lterm);
      sum += term;
      if (term < tol * 1e-6 && k > n + 8) break;
      if (!std::isfinite(sum)) return HUGE_VAL;
    }
    return sum;
  };

  if (tail(1.0) <= tol) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (tail(mid) <= tol) lo = mid; else hi = mid;
  }
  return std::max(lo, 1e-6);
}

Complex eval(const TaylorSeries& f, Complex z) {
  if (std::abs(z) > f.valid_radius() * (1.0 + 1e-14))
    throw DomainError("series evaluation outside valid_radius");
  const auto& a = f.coeffs();
  Complex acc = a[a.size() - 1];
  for (Eigen::Index k = a.size() - 2; k >= 0; --k) acc = acc * z + a[k];
  return acc;
}

TaylorSeries derivative(const TaylorSeries& f) {
  const int n = f.degree_cap();
  if (n == 0) return TaylorSeries(Eigen::VectorXcd::Zero(1), f.valid_radius());
  Eigen::VectorXcd b(n);
  for (int k = 0; k < n; ++k) b[k] = static_cast<double>(k + 1) * f.coeffs()[k + 1];
  return TaylorSeries(std::move(b), f.valid_radius());
}

TaylorSeries antiderivative(const TaylorSeries& f) {
  const int n = f.degree_cap();
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n + 2);
  for (int k = 0; k <= n; ++k) b[k + 1] = f.coeffs()[k] / static_cast<double>(k + 1);
  return TaylorSeries(std::move(b), f.valid_radius());
}

TaylorSeries multiply(const TaylorSeries& f, const TaylorSeries& g) {
  const int cap = f.degree_cap() + g.degree_cap();
  Eigen::VectorXcd c = conv_cap(f.coeffs(), g.coeffs(), cap);
  return TaylorSeries(std::move(c), std::min(f.valid_radius(), g.valid_radius()));
}

TaylorSeries add(const TaylorSeries& f, const TaylorSeries& g) {
  const int cap = std::max(f.degree_cap(), g.degree_cap());
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cap + 1);
  for (int k = 0; k <= cap; ++k) c[k] = f.coeff(k) + g.coeff(k);
  return TaylorSeries(std::move(c), std::min(f.valid_radius(), g.valid_radius()));
}

TaylorSeries subtract(const TaylorSeries& f, const TaylorSeries& g) {
  return add(f, scale(g, Complex(-1.0, 0.0)));
}

TaylorSeries scale(const TaylorSeries& f, Complex c) {
  Eigen::VectorXcd b = f.coeffs() * c;
  return TaylorSeries(std::move(b), f.valid_radius());
}

TaylorSeries pad(const TaylorSeries& f, int degree_cap) {
  if (degree_cap < 0) throw DomainError("degree cap must be nonnegative");
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(degree_cap + 1);
  const int n = std::min(degree_cap, f.degree_cap());
  b.head(n + 1) = f.coeffs().head(n + 1);
  return TaylorSeries(std::move(b), f.valid_radius());
}

TaylorSeries dilate(const TaylorSeries& f, double r) {
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("dilation radius must lie in [0, 1)");
  const int n = f.degree_cap();
  Eigen::VectorXcd b(n + 1);
  double rk = 1.0;
  for (int k = 0; k <= n; ++k) {
    b[k] = f.coeffs()[k] * rk;
    rk *= r;
  }
  double radius = (r == 0.0) ? 1.0 : std::min(1.0, f.valid_radius() / r);
  return TaylorSeries(std::move(b), radius);
}

TaylorSeries compose_at_zero(const TaylorSeries& f, const TaylorSeries& phi) {
  if (std::abs(phi.coeff(0)) > 1e-14)
    throw UnsupportedError(
        "series composition requires phi(0) = 0; evaluate pointwise instead");
  const int cap = f.degree_cap();
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(cap + 1);
  acc[0] = f.coeffs()[cap];
  for (int k = cap - 1; k >= 0; --k) {
    acc = conv_cap(acc, phi.coeffs(), cap);
    acc[0] += f.coeffs()[k];
  }
  double radius = std::min(estimate_valid_radius(acc), phi.valid_radius());
  return TaylorSeries(std::move(acc), radius);
}

TaylorSeries divide(const TaylorSeries& f, const TaylorSeries& g) {
  if (g.coeff(0) == Complex(0.0, 0.0))
    throw SingularityError("series division by a function vanishing at 0");
  const int cap = std::min(f.degree_cap(), g.degree_cap());
  Eigen::VectorXcd b(cap + 1);
  for (int i = 0; i <= cap; ++i) {
    Complex s = f.coeff(i);
    for (int j = 1; j <= i; ++j) s -= g.coeff(j) * b[i - j];
    b[i] = s / g.coeff(0);
  }
  double radius = std::min({estimate_valid_radius(b), f.valid_radius(), g.valid_radius()});
  return TaylorSeries(std::move(b), radius);
}

TaylorSeries log(const TaylorSeries& f) {
  if (f.coeff(0) == Complex(0.0, 0.0))
    throw SingularityError("series log of a function vanishing at 0");
  const int cap = f.degree_cap();
  Eigen::VectorXcd b(cap + 1);
  b[0] = std::log(f.coeff(0));
  for (int i = 1; i <= cap; ++i) {
    Complex s = static_cast<double>(i) * f.coeff(i);
    for (int j = 1; j < i; ++j) s -= static_cast<double>(j) * b[j] * f.coeff(i - j);
    b[i] = s / (f.coeff(0) * static_cast<double>(i));
  }
  double radius = std::min(estimate_valid_radius(b), f.valid_radius());
  return TaylorSeries(std::move(b), radius);
}

TaylorSeries exp(const TaylorSeries& f) {
  const int cap = f.degree_cap();
  Eigen::VectorXcd b(cap + 1);
  b[0] = std::exp(f.coeff(0));
  for (int i = 1; i <= cap; ++i) {
    Complex s(0.0, 0.0);
    for (int j = 1; j <= i; ++j) s += static_cast<double>(j) * f.coeff(j) * b[i - j];
    b[i] = s / static_cast<double>(i);
  }
  double radius = std::min(estimate_valid_radius(b), f.valid_radius());
  return TaylorSeries(std::move(b), radius);
}

TaylorSeries pow(const TaylorSeries& f, double s) {
  const int cap = f.degree_cap();
  const bool integral = (s == std::floor(s));
  if (f.coeff(0) == Complex(0.0, 0.0)) {
    if (!integral || s < 0.0)
      throw SingularityError("series power of a function vanishing at 0");
    // nonnegative integer power by repeated truncated multiplication
    int e = static_cast<int>(s);
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(cap + 1);
    acc[0] = Complex(1.0, 0.0);
    Eigen::VectorXcd base = f.coeffs();
    while (e > 0) {
      if (e & 1) acc = conv_cap(acc, base, cap);
      e >>= 1;
      if (e > 0) base = conv_cap(base, base, cap);
    }
    double radius = std::min(estimate_valid_radius(acc), f.valid_radius());
    return TaylorSeries(std::move(acc), radius);
  }
  Eigen::VectorXcd b(cap + 1);
  b[0] = std::pow(f.coeff(0), Complex(s, 0.0));
  for (int i = 1; i <= cap; ++i) {
    Complex acc(0.0, 0.0);
    for (int j = 1; j <= i; ++j)
      acc += (s * static_cast<double>(j) - static_cast<double>(i - j)) * f.coeff(j) * b[i - j];
    b[i] = acc / (static_cast<double>(i) * f.coeff(0));
  }
  double radius = std::min(estimate_valid_radius(b), f.valid_radius());
  return TaylorSeries(std::move(b), radius);
}

}  // namespace diskop
