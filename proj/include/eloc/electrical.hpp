#pragma once

#include <vector>

#include <Eigen/Dense>

#include "eloc/graph.hpp"
#include "eloc/laplacian.hpp"
#include "eloc/power_iteration.hpp"

namespace eloc {

/// A connected graph together with its factored Laplacian.
class ElectricalNetwork {
 public:
  explicit ElectricalNetwork(Graph g);

  const Graph& graph() const { return graph_; }
  const LaplacianSystem& laplacian() const { return system_; }

  /// Potentials L+ b_uv.
  Eigen::VectorXd potentials(VertexId u, VertexId v) const;

  /// f = C B L+ b_uv. Throws InvalidArgument when u == v.
  EdgeVector unit_flow(VertexId u, VertexId v) const;

  double effective_resistance(VertexId u, VertexId v) const;

 private:
  Graph graph_;
  LaplacianSystem system_;
};

EdgeVector unit_flow(const Graph& g, VertexId u, VertexId v);
double effective_resistance(const Graph& g, VertexId u, VertexId v);

struct EdgeDelta {
  VertexId tail;
  VertexId head;
  double delta;
  double l1;
  double reff;
};

struct FlowSummary {
  std::vector<EdgeDelta> per_edge;
  double sum_delta = 0.0;
  double mean_delta = 0.0;
  double max_delta = 0.0;
};

/// ||f_uv||_1 / dist(u, v) with dist the BFS hop count. Unweighted graphs only.
double delta_pair(const Graph& g, VertexId u, VertexId v);
double delta_edge(const Graph& g, EdgeId e);
FlowSummary delta_summary(const Graph& g);

/// Throws InvalidArgument unless every conductance is 1.
void require_unweighted(const Graph& g, const char* what);

enum class ImpedanceMode { Dense, Streaming };

struct ImpedanceOptions {
  ImpedanceMode mode = ImpedanceMode::Dense;
  /// Largest edge count for which dense mode will materialize Pi.
  std::size_t dense_cap = 4000;
  /// Entries with smaller magnitude are stored as exact zeros.
  double zero_threshold = 1e-12;
};

/// The transfer impedance matrix Pi = C^1/2 B L+ B^T C^1/2 and its entrywise
/// absolute value. Dense mode stores Pi; streaming mode recomputes a column
/// (one Laplacian solve) each time it is needed and uses O(m) memory.
class TransferImpedance {
 public:
  explicit TransferImpedance(const Graph& g, ImpedanceOptions opts = {});

  ImpedanceMode mode() const { return opts_.mode; }
  std::size_t size() const { return network_.graph().n_edges(); }
  const ElectricalNetwork& network() const { return network_; }

  /// Pi(., f), signed.
  Eigen::VectorXd column(EdgeId f) const;
  double entry(EdgeId e, EdgeId f) const;

  /// Stored Pi; throws in streaming mode.
  const Eigen::MatrixXd& dense() const;

  double trace() const;

  /// |Pi| x.
  Eigen::VectorXd abs_apply(const Eigen::VectorXd& x) const;

  /// Column sums of |Pi|; for unweighted graphs entry f equals Delta(f).
  Eigen::VectorXd abs_column_sums() const;
  double max_abs_colsum() const;

  SpectralEstimate abs_spectral_norm(const PowerIterationOptions& opts = {}) const;

  /// w^T |Pi| w for w >= 0.
  double quadratic_form_abs(const EdgeVector& w) const;

 private:
  Eigen::VectorXd compute_column(EdgeId f) const;

  ElectricalNetwork network_;
  ImpedanceOptions opts_;
  Eigen::MatrixXd dense_;
  Eigen::MatrixXd dense_abs_;
};

TransferImpedance transfer_impedance(const Graph& g, ImpedanceMode mode);

double abs_impedance_spectral_norm(const Graph& g);
double abs_impedance_max_colsum(const Graph& g);
double quadratic_form_abs(const Graph& g, const EdgeVector& w);

/// Dense mode when m is within the cap, streaming otherwise.
ImpedanceMode auto_mode(const Graph& g, std::size_t dense_cap = 4000);

}  // namespace eloc
