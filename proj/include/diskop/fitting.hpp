#pragma once

#include <vector>

#include "diskop/common.hpp"

namespace diskop {

/// Least-squares fit of log(value) against log(h) over a boundary-refining
/// tail: value ~ C * h^exponent with h = 1 - r.
struct ExponentFit {
  double exponent = 0.0;
  double log_constant = 0.0;
  double residual = 0.0;  // RMS residual in log space
  int points = 0;
  bool ok = false;  // >= 4 usable points, finite data
};

/// `hs` are the 1-r values, `values` the matching profile samples.
/// Nonpositive or non-finite samples are skipped.
ExponentFit fit_exponent(const std::vector<double>& hs, const std::vector<double>& values);

/// Richardson extrapolation of a sequence v_k = L + C*2^-k + O(4^-k) sampled
/// at geometrically halving step sizes (oldest first).
struct RichardsonLimit {
  double limit = 0.0;
  bool converged = false;
};

RichardsonLimit richardson_limit(const std::vector<double>& values);

}  // namespace diskop
