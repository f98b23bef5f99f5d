#include "eloc/routing.hpp"

#include <cmath>
#include <istream>
#include <sstream>

#include "eloc/electrical.hpp"
#include "eloc/errors.hpp"
#include "eloc/graph_io.hpp"

namespace eloc {

DemandSet::DemandSet(std::vector<Demand> pairs) : pairs_(std::move(pairs)) {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const Demand& d = pairs_[i];
    if (d.source == d.sink)
      throw InvalidArgument("demand " + std::to_string(i) + " has identical source and sink");
    if (!(d.amount > 0.0) || !std::isfinite(d.amount))
      throw InvalidArgument("demand " + std::to_string(i) + " has a non-positive amount");
  }
}

DemandSet parse_demands(std::istream& in) {
  std::vector<Demand> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line, line_no);
    if (fields.size() != 3)
      throw ParseError("expected 'source sink amount'", line_no);
    Demand d{parse_id_field(fields[0], line_no), parse_id_field(fields[1], line_no),
             parse_real_field(fields[2], line_no)};
    if (d.source == d.sink) throw ParseError("source equals sink", line_no);
    if (!(d.amount > 0.0)) throw ParseError("amount must be positive", line_no);
    pairs.push_back(d);
  }
  return DemandSet(std::move(pairs));
}

DemandSet parse_demands(const std::string& text) {
  std::istringstream in(text);
  return parse_demands(in);
}

RoutingReport route_demands(const Graph& g, const DemandSet& demands) {
  for (const Demand& d : demands.pairs())
    if (d.source >= g.n_vertices() || d.sink >= g.n_vertices())
      throw InvalidArgument("demand endpoint outside the graph");
  ElectricalNetwork net(g);
  Eigen::VectorXd total = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.n_edges()));
  for (const Demand& d : demands.pairs())
    total += d.amount * net.unit_flow(d.source, d.sink).values();

  RoutingReport report;
  report.per_edge.reserve(g.n_edges());
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const double flow = total[static_cast<Eigen::Index>(e)];
    const double congestion = std::abs(flow) / ed.conductance;
    report.per_edge.push_back({ed.tail, ed.head, flow, congestion});
    report.max_congestion = std::max(report.max_congestion, congestion);
  }
  if (g.is_unweighted()) report.competitive_ratio_bound = competitive_ratio_bound(g);
  return report;
}

double competitive_ratio_bound(const Graph& g) {
  require_unweighted(g, "the electrical-routing competitive ratio identity");
  return abs_impedance_max_colsum(g);
}

}  // namespace eloc
