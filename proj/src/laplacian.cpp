#include "eloc/laplacian.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "eloc/errors.hpp"

namespace eloc {

namespace {

bool support_connected(const Eigen::MatrixXd& L) {
  const Eigen::Index n = L.rows();
  if (n <= 1) return true;
  double scale = L.diagonal().cwiseAbs().maxCoeff();
  double eps = 1e-14 * (scale > 0 ? scale : 1.0);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Eigen::Index> stack{0};
  seen[0] = 1;
  Eigen::Index count = 1;
  while (!stack.empty()) {
    Eigen::Index v = stack.back();
    stack.pop_back();
    for (Eigen::Index w = 0; w < n; ++w) {
      if (w == v || seen[static_cast<std::size_t>(w)] || !(L(v, w) < -eps)) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      ++count;
      stack.push_back(w);
    }
  }
  return count == n;
}

}  // namespace

LaplacianSystem::LaplacianSystem(const Graph& g) : matrix_(laplacian_matrix(g)) {
  if (g.n_vertices() < 1) throw InvalidArgument("Laplacian of an empty graph");
  if (!g.is_connected())
    throw DisconnectedGraphError("graph is disconnected; L+ is only supported on connected graphs");
  factor();
}

LaplacianSystem::LaplacianSystem(Eigen::MatrixXd laplacian) : matrix_(std::move(laplacian)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1)
    throw InvalidArgument("Laplacian must be a non-empty square matrix");
  if (!support_connected(matrix_))
    throw DisconnectedGraphError("Laplacian support graph is disconnected");
  factor();
}

void LaplacianSystem::factor() {
  const Eigen::Index k = matrix_.rows() - 1;
  if (k == 0) return;
  reduced_.compute(matrix_.topLeftCorner(k, k));
  if (reduced_.info() != Eigen::Success)
    throw DisconnectedGraphError("grounded Laplacian is singular; graph is disconnected");
}

Eigen::VectorXd LaplacianSystem::pinv_apply(const Eigen::VectorXd& b) const {
  if (static_cast<std::size_t>(b.size()) != size())
    throw InvalidArgument("right-hand side has length " + std::to_string(b.size()) +
                          ", expected " + std::to_string(size()));
  const Eigen::Index k = matrix_.rows() - 1;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(matrix_.rows());
  if (k == 0) return x;
  Eigen::VectorXd zb = b.array() - b.mean();
  x.head(k) = reduced_.solve(zb.head(k));
  x.array() -= x.mean();
  return x;
}

Eigen::MatrixXd LaplacianSystem::pinv_apply_columns(const Eigen::MatrixXd& rhs) const {
  if (static_cast<std::size_t>(rhs.rows()) != size())
    throw InvalidArgument("right-hand side has wrong row count");
  const Eigen::Index k = matrix_.rows() - 1;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(rhs.rows(), rhs.cols());
  if (k == 0) return x;
  Eigen::MatrixXd zb = rhs.rowwise() - rhs.colwise().mean();
  x.topRows(k) = reduced_.solve(zb.topRows(k));
  x.rowwise() -= x.colwise().mean();
  return x;
}

Eigen::MatrixXd LaplacianSystem::pseudoinverse() const {
  return pinv_apply_columns(Eigen::MatrixXd::Identity(matrix_.rows(), matrix_.rows()));
}

double LaplacianSystem::effective_resistance(VertexId u, VertexId v) const {
  if (u >= size() || v >= size()) throw InvalidArgument("vertex id out of range");
  Eigen::VectorXd b = Eigen::VectorXd::Zero(matrix_.rows());
  b[static_cast<Eigen::Index>(u)] += 1.0;
  b[static_cast<Eigen::Index>(v)] -= 1.0;
  Eigen::VectorXd x = pinv_apply(b);
  return b.dot(x);
}

}  // namespace eloc
