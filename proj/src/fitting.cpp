#include "diskop/fitting.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace diskop {

ExponentFit fit_exponent(const std::vector<double>& hs, const std::vector<double>& values) {
  ExponentFit fit;
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < hs.size() && k < values.size(); ++k) {
    if (!(values[k] > 0.0) || !std::isfinite(values[k])) continue;
    if (!(hs[k] > 0.0)) continue;
    xs.push_back(std::log(hs[k]));
    ys.push_back(std::log(values[k]));
  }
  fit.points = static_cast<int>(xs.size());
  if (fit.points < 4) return fit;

  Eigen::MatrixXd A(fit.points, 2);
  Eigen::VectorXd b(fit.points);
  for (int k = 0; k < fit.points; ++k) {
    A(k, 0) = xs[k];
    A(k, 1) = 1.0;
    b(k) = ys[k];
  }
  Eigen::Vector2d sol = A.colPivHouseholderQr().solve(b);
  fit.exponent = sol(0);
  fit.log_constant = sol(1);
  fit.residual = std::sqrt((A * sol - b).squaredNorm() / fit.points);
  fit.ok = std::isfinite(fit.exponent) && std::isfinite(fit.residual);
  return fit;
}

RichardsonLimit richardson_limit(const std::vector<double>& values) {
  RichardsonLimit out;
  std::vector<double> row;
  for (double v : values)
    if (std::isfinite(v)) row.push_back(v);
  if (row.size() < 2) {
    if (row.size() == 1) out.limit = row[0];
    return out;
  }
  if (row.size() > 6) row.erase(row.begin(), row.end() - 6);

  double prev_corner = row.back();
  double weight = 2.0;
  while (row.size() >= 2) {
    prev_corner = row.back();
    std::vector<double> next(row.size() - 1);
    for (std::size_t k = 0; k + 1 < row.size(); ++k)
      next[k] = row[k + 1] + (row[k + 1] - row[k]) / (weight - 1.0);
    row = std::move(next);
    weight *= 2.0;
  }
  out.limit = row.back();
  double scale = std::max(1.0, std::abs(out.limit));
  out.converged = std::abs(out.limit - prev_corner) <= 1e-4 * scale;
  return out;
}

}  // namespace diskop
