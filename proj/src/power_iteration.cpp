#include "eloc/power_iteration.hpp"

#include <cmath>
#include <string>

#include "eloc/errors.hpp"

namespace eloc {

SpectralEstimate spectral_norm_nonneg(const EdgeOperator& matvec, std::size_t m,
                                      const PowerIterationOptions& opts) {
  if (m == 0) return {0.0, 0};
  const int max_iter = opts.max_iter > 0 ? opts.max_iter : static_cast<int>(10 * m + 1000);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m),
                                                1.0 / std::sqrt(static_cast<double>(m)));
  double lambda = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd y = matvec(x);
    if (y.size() != x.size()) throw InvalidArgument("operator changed the vector length");
    const double next = x.dot(y);
    const double norm = y.norm();
    if (norm == 0.0) return {0.0, it};
    x = y / norm;
    if (it > 1 && std::abs(next - lambda) <= opts.tol * std::abs(next)) return {next, it};
    lambda = next;
  }
  throw ConvergenceError("power iteration did not converge in " + std::to_string(max_iter) +
                             " iterations (last estimate " + std::to_string(lambda) + ")",
                         lambda, max_iter);
}

}  // namespace eloc
