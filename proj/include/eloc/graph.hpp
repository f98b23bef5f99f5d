#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace eloc {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  VertexId tail;
  VertexId head;
  double conductance;

  bool operator==(const Edge&) const = default;
};

/// Weighted multigraph with a fixed orientation per edge instance.
///
/// Vertex ids are dense in [0, n). Every conductance is positive and no edge
/// is a self-loop. Parallel edges are distinct instances. Immutable once
/// built, so a Graph can be shared freely between readers.
class Graph {
 public:
  /// Builds a graph on `n_vertices` vertices; throws InvalidArgument on
  /// self-loops, non-positive or non-finite conductances and out-of-range ids.
  Graph(std::size_t n_vertices, std::vector<Edge> edges);

  std::size_t n_vertices() const { return n_; }
  std::size_t n_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }

  /// Edge ids incident to v, in edge order.
  const std::vector<EdgeId>& incident(VertexId v) const { return incident_.at(v); }

  /// Sum of conductances of edges incident to v.
  double weighted_degree(VertexId v) const;

  /// True iff every conductance is exactly 1.
  bool is_unweighted() const;
  bool is_connected() const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

/// Vertex count inferred as max id + 1; edges kept in input order.
Graph build_graph(std::vector<Edge> edge_list);

enum class EdgeRole { Weights, Flow, PotentialDifference };

/// One real value per edge, in Graph edge order.
class EdgeVector {
 public:
  EdgeVector(EdgeRole role, Eigen::VectorXd values);

  static EdgeVector ones(std::size_t m) {
    return EdgeVector(EdgeRole::Weights, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m)));
  }

  EdgeRole role() const { return role_; }
  const Eigen::VectorXd& values() const { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  double operator[](EdgeId e) const { return values_[static_cast<Eigen::Index>(e)]; }

 private:
  EdgeRole role_;
  Eigen::VectorXd values_;
};

/// One real value per vertex.
class VertexVector {
 public:
  explicit VertexVector(Eigen::VectorXd values) : values_(std::move(values)) {}

  /// b_v, the indicator of v.
  static VertexVector indicator(std::size_t n, VertexId v);
  /// b_u - b_v.
  static VertexVector dipole(std::size_t n, VertexId u, VertexId v);

  const Eigen::VectorXd& values() const { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  double operator[](VertexId v) const { return values_[static_cast<Eigen::Index>(v)]; }

 private:
  Eigen::VectorXd values_;
};

/// (Bx)_e = x_tail - x_head.
EdgeVector incidence_apply(const Graph& g, const VertexVector& x);

/// (B^T f)_v = sum of f over edges leaving v minus sum over edges entering v.
VertexVector incidence_transpose_apply(const Graph& g, const EdgeVector& f);

/// Dense weighted Laplacian B^T C B.
Eigen::MatrixXd laplacian_matrix(const Graph& g);

/// Unweighted hop distance; nullopt when v is unreachable from u.
std::optional<std::size_t> bfs_distance(const Graph& g, VertexId u, VertexId v);

}  // namespace eloc
