#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "eloc/graph.hpp"

namespace eloc {

struct SchurOptions {
  /// Eliminated-graph conductances below this are pruned to zero.
  double prune_threshold = 1e-12;
  /// Largest tolerated row-sum residue (self-loop mass), relative to the
  /// largest diagonal entry, before it is discarded.
  double surplus_tolerance = 1e-9;
};

/// Schur(G, S) together with the hitting-probability map p_v^{G,S}(x).
///
/// Retained vertices are kept sorted by id; local index i of the Laplacian
/// corresponds to retained()[i]. probabilities() is |S| x n with entry
/// (i, x) = P_x[walk hits retained()[i] before any other vertex of S].
/// Snapshots are immutable; eliminate_one returns a new system.
class SchurSystem {
 public:
  SchurSystem(std::shared_ptr<const Graph> base, std::vector<VertexId> retained,
              Eigen::MatrixXd laplacian, Eigen::MatrixXd probabilities, SchurOptions opts);

  const Graph& base() const { return *base_; }
  std::shared_ptr<const Graph> base_ptr() const { return base_; }
  const std::vector<VertexId>& retained() const { return retained_; }
  std::size_t size() const { return retained_.size(); }
  const SchurOptions& options() const { return opts_; }

  bool contains(VertexId v) const;
  /// Position of v within retained(); throws InvalidArgument if v is not in S.
  std::size_t local_index(VertexId v) const;

  const Eigen::MatrixXd& laplacian() const { return laplacian_; }
  const Eigen::MatrixXd& probabilities() const { return probabilities_; }
  double probability(VertexId v, VertexId x) const;

  /// Sum of conductances incident to v in Schur(G, S).
  double weighted_degree(VertexId v) const;

  /// Schur(G, S) as a graph on local ids 0..|S|-1 (edge (i, j), i < j, for
  /// every positive conductance).
  Graph materialize() const;

 private:
  std::shared_ptr<const Graph> base_;
  std::vector<VertexId> retained_;
  std::vector<std::size_t> local_;  // vertex id -> local index, or npos
  Eigen::MatrixXd laplacian_;
  Eigen::MatrixXd probabilities_;
  SchurOptions opts_;
};

/// Eliminates V \ S from G's Laplacian: P - Q R^-1 Q^T. Probabilities come
/// from the block map [I, -Q R^-1]. Requires |S| >= 2 and G connected.
SchurSystem schur_complement(const Graph& g, std::vector<VertexId> retained,
                             const SchurOptions& opts = {});
SchurSystem schur_complement(std::shared_ptr<const Graph> g, std::vector<VertexId> retained,
                             const SchurOptions& opts = {});

/// Star-clique elimination of x from the current Schur Laplacian. The
/// probability map is recomputed from the base graph with the block formula.
/// Requires |S| >= 3.
SchurSystem eliminate_one(const SchurSystem& sys, VertexId x);

enum class ProbabilityMethod {
  /// p = [I, -Q R^-1] b_x.
  Block,
  /// Identify S \ {v} into one vertex s and read normalized potentials.
  Identify,
  /// Absorbing Markov chain of the simple random walk, solved exactly.
  WalkOracle,
};

/// |S| x n hitting-probability matrix (rows follow sorted S).
Eigen::MatrixXd hitting_probabilities(const Graph& g, std::vector<VertexId> retained,
                                      ProbabilityMethod method);

struct EdgeStats {
  /// |p_v(x) - p_v(y)| per base edge {x, y}.
  std::vector<double> q;
  /// max(p_v(x), p_v(y), 1/|S|) per base edge.
  std::vector<double> r;
};

EdgeStats edge_stats(const SchurSystem& sys, VertexId v);

struct InequalityCheck {
  double lhs;
  double rhs;
};

/// Sum over v in S of r_v(e); never exceeds 3.
double check_sum_potentials(const SchurSystem& sys, EdgeId e);

/// lhs = energy of edges whose endpoint potentials are both <= p,
/// rhs = p * total energy, for the potential p_v. Requires p in (0, 1).
InequalityCheck check_norm_energy(const SchurSystem& sys, VertexId v, double p);
InequalityCheck check_norm_energy(const Graph& g, const std::vector<VertexId>& retained,
                                  VertexId v, double p);

/// lhs = weighted degree of v in Schur(G, S), rhs = sum_e c_e q_v(e)^2.
InequalityCheck check_schur_conductance(const SchurSystem& sys, VertexId v);
InequalityCheck check_schur_conductance(const Graph& g, const std::vector<VertexId>& retained,
                                        VertexId v);

}  // namespace eloc
