#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "eloc/graph.hpp"
#include "eloc/schur.hpp"

namespace eloc {

struct DegreeValue {
  double value;
  /// q_u vanished on every edge; value is then defined as 0.
  bool degenerate;
};

/// Degree_S(u) = (sum_e w_e sqrt(c_e) q_u(e))^2 / sum_e c_e q_u(e)^2 over
/// the base graph's edges, with q taken from sys's probability map.
DegreeValue degree(const SchurSystem& sys, VertexId u, const EdgeVector& w);
DegreeValue degree(const Graph& g, const std::vector<VertexId>& retained, VertexId u,
                   const EdgeVector& w);

/// ceil(log2 s) for s >= 1.
std::size_t bucket_count(std::size_t s);

/// (6 T + 6) ||w||^2 with T = bucket_count(s).
double local_energy_bound(std::size_t s, double w_norm_sq);

struct DegreeProfile {
  std::vector<VertexId> vertices;
  std::vector<double> degrees;
  double sum = 0.0;
  std::size_t buckets = 0;
  double w_norm_sq = 0.0;
  double bound = 0.0;
  VertexId argmin = 0;
  double min = 0.0;

  bool holds(double tol = 1e-9) const { return sum <= bound * (1.0 + tol) + tol; }
};

DegreeProfile degree_profile(const SchurSystem& sys, const EdgeVector& w);
DegreeProfile degree_profile(const Graph& g, const std::vector<VertexId>& retained,
                             const EdgeVector& w);

/// sum_{e,f} w_e sqrt(c_e) |b_e^T L_S+ b_f| sqrt(c_f) w_f where b_x is the
/// hitting-probability vector of x onto S and L_S the Schur Laplacian.
double absolute_form(const SchurSystem& sys, const EdgeVector& w);

struct EliminationStep {
  std::size_t index;
  std::size_t retained;
  VertexId pivot;
  double degree;
  /// (sum_e w_e sqrt(c_e) |x_e|)^2 / m_i with m_i the pivot's diagonal entry.
  double rank_one;
  double v_value = std::numeric_limits<double>::quiet_NaN();
  double v_next = std::numeric_limits<double>::quiet_NaN();
  /// v_value - v_next - degree.
  double slack = std::numeric_limits<double>::quiet_NaN();
  /// max |G_i - G_{i+1} - x x^T / m_i| over the signed edge-pair forms.
  double split_error = std::numeric_limits<double>::quiet_NaN();
};

struct EliminationTerminal {
  VertexId a;
  VertexId b;
  double v_value = std::numeric_limits<double>::quiet_NaN();
};

struct EliminationTrace {
  std::vector<EliminationStep> steps;
  EliminationTerminal terminal;
  double w_norm_sq = 0.0;
  bool values_recorded = true;

  /// V_0 (the terminal value for a trace without steps).
  double initial_value() const {
    return steps.empty() ? terminal.v_value : steps.front().v_value;
  }
};

struct EliminationOptions {
  /// Record only pivots and degrees; skips every V_i solve.
  bool skip_values = false;
  SchurOptions schur;
};

/// Greedy elimination: repeatedly eliminate the retained vertex of minimum
/// Degree (smallest id on ties) until two vertices remain.
EliminationTrace run_elimination(const Graph& g, const EdgeVector& w,
                                 const EliminationOptions& opts = {});

struct Theorem4Result {
  /// V_0 through the Schur/probability route.
  double lhs;
  /// w^T |Pi| w through the transfer impedance route.
  double cross_check;
  /// ||w||^2 (1 + sum_{i<T} (6 ceil(log2 |S_i|) + 6) / |S_i|), |S_i| = n - i.
  double harmonic_bound;
  bool ok;
};

Theorem4Result theorem4_check(const Graph& g, const EdgeVector& w);

/// The bound above as a function of n and ||w||^2.
double harmonic_bound(std::size_t n, double w_norm_sq);

}  // namespace eloc
