#include "eloc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "eloc/errors.hpp"

namespace eloc {

Graph::Graph(std::size_t n_vertices, std::vector<Edge> edges)
    : n_(n_vertices), edges_(std::move(edges)), incident_(n_vertices) {
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.tail >= n_ || ed.head >= n_)
      throw InvalidArgument("edge " + std::to_string(e) + " has a vertex id outside [0, " +
                            std::to_string(n_) + ")");
    if (ed.tail == ed.head)
      throw InvalidArgument("edge " + std::to_string(e) + " is a self-loop at vertex " +
                            std::to_string(ed.tail));
    if (!(ed.conductance > 0.0) || !std::isfinite(ed.conductance))
      throw InvalidArgument("edge " + std::to_string(e) + " has non-positive conductance");
    incident_[ed.tail].push_back(e);
    incident_[ed.head].push_back(e);
  }
}

double Graph::weighted_degree(VertexId v) const {
  double d = 0.0;
  for (EdgeId e : incident(v)) d += edges_[e].conductance;
  return d;
}

bool Graph::is_unweighted() const {
  for (const Edge& e : edges_)
    if (e.conductance != 1.0) return false;
  return true;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : incident_[v]) {
      VertexId w = edges_[e].tail == v ? edges_[e].head : edges_[e].tail;
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n_;
}

Graph build_graph(std::vector<Edge> edge_list) {
  std::size_t n = 0;
  for (const Edge& e : edge_list) n = std::max({n, e.tail + 1, e.head + 1});
  return Graph(n, std::move(edge_list));
}

EdgeVector::EdgeVector(EdgeRole role, Eigen::VectorXd values)
    : role_(role), values_(std::move(values)) {
  if (role_ == EdgeRole::Weights) {
    for (Eigen::Index i = 0; i < values_.size(); ++i)
      if (!(values_[i] >= 0.0))
        throw InvalidArgument("edge weight " + std::to_string(i) + " is negative");
  }
}

VertexVector VertexVector::indicator(std::size_t n, VertexId v) {
  if (v >= n) throw InvalidArgument("vertex id out of range");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  x[static_cast<Eigen::Index>(v)] = 1.0;
  return VertexVector(std::move(x));
}

VertexVector VertexVector::dipole(std::size_t n, VertexId u, VertexId v) {
  if (u >= n || v >= n) throw InvalidArgument("vertex id out of range");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  x[static_cast<Eigen::Index>(u)] += 1.0;
  x[static_cast<Eigen::Index>(v)] -= 1.0;
  return VertexVector(std::move(x));
}

EdgeVector incidence_apply(const Graph& g, const VertexVector& x) {
  if (x.size() != g.n_vertices())
    throw InvalidArgument("vertex vector has length " + std::to_string(x.size()) +
                          ", graph has " + std::to_string(g.n_vertices()) + " vertices");
  Eigen::VectorXd out(static_cast<Eigen::Index>(g.n_edges()));
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    const Edge& ed = g.edge(e);
    out[static_cast<Eigen::Index>(e)] = x[ed.tail] - x[ed.head];
  }
  return EdgeVector(EdgeRole::PotentialDifference, std::move(out));
}

VertexVector incidence_transpose_apply(const Graph& g, const EdgeVector& f) {
  if (f.size() != g.n_edges())
    throw InvalidArgument("edge vector has length " + std::to_string(f.size()) +
                          ", graph has " + std::to_string(g.n_edges()) + " edges");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.n_vertices()));
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    const Edge& ed = g.edge(e);
    out[static_cast<Eigen::Index>(ed.tail)] += f[e];
    out[static_cast<Eigen::Index>(ed.head)] -= f[e];
  }
  return VertexVector(std::move(out));
}

Eigen::MatrixXd laplacian_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.n_vertices());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const auto t = static_cast<Eigen::Index>(e.tail);
    const auto h = static_cast<Eigen::Index>(e.head);
    L(t, t) += e.conductance;
    L(h, h) += e.conductance;
    L(t, h) -= e.conductance;
    L(h, t) -= e.conductance;
  }
  return L;
}

std::optional<std::size_t> bfs_distance(const Graph& g, VertexId u, VertexId v) {
  if (u >= g.n_vertices() || v >= g.n_vertices())
    throw InvalidArgument("vertex id out of range");
  if (u == v) return 0;
  std::vector<std::size_t> dist(g.n_vertices(), SIZE_MAX);
  std::deque<VertexId> queue{u};
  dist[u] = 0;
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    for (EdgeId e : g.incident(x)) {
      const Edge& ed = g.edge(e);
      VertexId y = ed.tail == x ? ed.head : ed.tail;
      if (dist[y] != SIZE_MAX) continue;
      dist[y] = dist[x] + 1;
      if (y == v) return dist[y];
      queue.push_back(y);
    }
  }
  return std::nullopt;
}

}  // namespace eloc
