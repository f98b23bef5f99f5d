#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "eloc/graph.hpp"

namespace eloc {

/// A connected Laplacian with a cached factorization for pseudoinverse solves.
///
/// L+ is applied by grounding the last vertex, Cholesky-factoring the
/// remaining (n-1)x(n-1) block and re-centring the result onto the space
/// orthogonal to the all-ones vector. The factorization is built once and
/// never mutated, so concurrent solves against one system are safe.
class LaplacianSystem {
 public:
  explicit LaplacianSystem(const Graph& g);

  /// Any symmetric matrix with zero row sums and non-positive off-diagonals.
  /// Throws DisconnectedGraphError if its support graph is disconnected.
  explicit LaplacianSystem(Eigen::MatrixXd laplacian);

  std::size_t size() const { return static_cast<std::size_t>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// x = L+ (b - mean(b) 1); x is orthogonal to the all-ones vector.
  Eigen::VectorXd pinv_apply(const Eigen::VectorXd& b) const;
  VertexVector pinv_apply(const VertexVector& b) const {
    return VertexVector(pinv_apply(b.values()));
  }

  /// Column-wise pinv_apply.
  Eigen::MatrixXd pinv_apply_columns(const Eigen::MatrixXd& rhs) const;

  /// Dense L+.
  Eigen::MatrixXd pseudoinverse() const;

  /// b^T L+ b for b = b_u - b_v.
  double effective_resistance(VertexId u, VertexId v) const;

 private:
  void factor();

  Eigen::MatrixXd matrix_;
  Eigen::LLT<Eigen::MatrixXd> reduced_;
};

}  // namespace eloc
