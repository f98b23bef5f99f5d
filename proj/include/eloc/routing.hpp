#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eloc/graph.hpp"

namespace eloc {

struct Demand {
  VertexId source;
  VertexId sink;
  double amount;
};

/// Demand pairs with source != sink and positive amounts.
class DemandSet {
 public:
  DemandSet() = default;
  explicit DemandSet(std::vector<Demand> pairs);

  const std::vector<Demand>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

 private:
  std::vector<Demand> pairs_;
};

/// One `source sink amount` triple per line; '#' lines and blank lines skipped.
DemandSet parse_demands(std::istream& in);
DemandSet parse_demands(const std::string& text);

struct EdgeLoad {
  VertexId tail;
  VertexId head;
  /// Signed superposed flow along the edge orientation.
  double flow;
  double congestion;
};

struct RoutingReport {
  std::vector<EdgeLoad> per_edge;
  double max_congestion = 0.0;
  /// max_e Delta(e); only reported for unweighted graphs.
  std::optional<double> competitive_ratio_bound;
};

/// Routes every demand along its electrical flow, superposes the signed
/// flows and reports |F_e| / c_e per edge.
RoutingReport route_demands(const Graph& g, const DemandSet& demands);

/// max column sum of |Pi|, i.e. max_e Delta(e). Unweighted graphs only.
double competitive_ratio_bound(const Graph& g);

}  // namespace eloc
