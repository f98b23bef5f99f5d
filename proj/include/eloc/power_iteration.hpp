#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace eloc {

/// y = A x for a symmetric operator with an entrywise-nonnegative matrix.
/// Must be a pure function of x.
using EdgeOperator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct SpectralEstimate {
  double value;
  int iterations;
};

struct PowerIterationOptions {
  double tol = 1e-10;
  /// <= 0 means 10 * m + 1000.
  int max_iter = 0;
};

/// Largest eigenvalue of a symmetric nonnegative operator by power iteration
/// from the all-ones start vector. Stops when the Rayleigh quotient changes
/// by less than tol relative. Throws ConvergenceError (with the last
/// estimate) when max_iter is exhausted.
SpectralEstimate spectral_norm_nonneg(const EdgeOperator& matvec, std::size_t m,
                                      const PowerIterationOptions& opts = {});

}  // namespace eloc
