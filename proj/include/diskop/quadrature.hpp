#pragma once

#include <Eigen/Core>

namespace diskop {

/// Gauss-Legendre nodes and weights on [0, 1], cached per order.
struct GaussLegendre {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
};

const GaussLegendre& gauss_legendre(int n);

}  // namespace diskop
