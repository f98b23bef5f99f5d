#include "eloc/electrical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eloc/errors.hpp"

namespace eloc {

ElectricalNetwork::ElectricalNetwork(Graph g) : graph_(std::move(g)), system_(graph_) {}

Eigen::VectorXd ElectricalNetwork::potentials(VertexId u, VertexId v) const {
  return system_.pinv_apply(VertexVector::dipole(graph_.n_vertices(), u, v).values());
}

EdgeVector ElectricalNetwork::unit_flow(VertexId u, VertexId v) const {
  if (u == v) throw InvalidArgument("unit flow needs distinct endpoints");
  Eigen::VectorXd phi = potentials(u, v);
  Eigen::VectorXd f(static_cast<Eigen::Index>(graph_.n_edges()));
  for (EdgeId e = 0; e < graph_.n_edges(); ++e) {
    const Edge& ed = graph_.edge(e);
    f[static_cast<Eigen::Index>(e)] =
        ed.conductance * (phi[static_cast<Eigen::Index>(ed.tail)] -
                          phi[static_cast<Eigen::Index>(ed.head)]);
  }
  return EdgeVector(EdgeRole::Flow, std::move(f));
}

double ElectricalNetwork::effective_resistance(VertexId u, VertexId v) const {
  if (u == v) throw InvalidArgument("effective resistance needs distinct endpoints");
  return system_.effective_resistance(u, v);
}

EdgeVector unit_flow(const Graph& g, VertexId u, VertexId v) {
  return ElectricalNetwork(g).unit_flow(u, v);
}

double effective_resistance(const Graph& g, VertexId u, VertexId v) {
  return ElectricalNetwork(g).effective_resistance(u, v);
}

void require_unweighted(const Graph& g, const char* what) {
  if (!g.is_unweighted())
    throw InvalidArgument(std::string(what) +
                          " is only defined for unweighted graphs (every conductance 1)");
}

double delta_pair(const Graph& g, VertexId u, VertexId v) {
  require_unweighted(g, "Delta");
  auto dist = bfs_distance(g, u, v);
  if (!dist) throw DisconnectedGraphError("endpoints are in different components");
  return unit_flow(g, u, v).values().lpNorm<1>() / static_cast<double>(*dist);
}

double delta_edge(const Graph& g, EdgeId e) {
  const Edge& ed = g.edge(e);
  return delta_pair(g, ed.tail, ed.head);
}

FlowSummary delta_summary(const Graph& g) {
  require_unweighted(g, "Delta");
  ElectricalNetwork net(g);
  FlowSummary out;
  out.per_edge.reserve(g.n_edges());
  for (const Edge& ed : g.edges()) {
    Eigen::VectorXd f = net.unit_flow(ed.tail, ed.head).values();
    auto dist = bfs_distance(g, ed.tail, ed.head);
    EdgeDelta d{ed.tail, ed.head, 0.0, f.lpNorm<1>(), net.effective_resistance(ed.tail, ed.head)};
    d.delta = d.l1 / static_cast<double>(*dist);
    out.sum_delta += d.delta;
    out.max_delta = std::max(out.max_delta, d.delta);
    out.per_edge.push_back(d);
  }
  if (!out.per_edge.empty()) out.mean_delta = out.sum_delta / static_cast<double>(g.n_edges());
  return out;
}

TransferImpedance::TransferImpedance(const Graph& g, ImpedanceOptions opts)
    : network_(g), opts_(opts) {
  if (opts_.mode != ImpedanceMode::Dense) return;
  const std::size_t m = g.n_edges();
  if (m > opts_.dense_cap)
    throw InvalidArgument("dense transfer impedance requested for m = " + std::to_string(m) +
                          " edges, above the cap of " + std::to_string(opts_.dense_cap) +
                          "; use streaming mode");
  const auto n = static_cast<Eigen::Index>(g.n_vertices());
  const auto mi = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd pinv = network_.laplacian().pseudoinverse();
  // Y = L+ B^T C^1/2, column by column.
  Eigen::MatrixXd Y(n, mi);
  for (EdgeId f = 0; f < m; ++f) {
    const Edge& ed = g.edge(f);
    Y.col(static_cast<Eigen::Index>(f)) =
        std::sqrt(ed.conductance) * (pinv.col(static_cast<Eigen::Index>(ed.tail)) -
                                     pinv.col(static_cast<Eigen::Index>(ed.head)));
  }
  dense_.resize(mi, mi);
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    dense_.row(static_cast<Eigen::Index>(e)) =
        std::sqrt(ed.conductance) * (Y.row(static_cast<Eigen::Index>(ed.tail)) -
                                     Y.row(static_cast<Eigen::Index>(ed.head)));
  }
  // Symmetrize away rounding asymmetry, then drop sign noise.
  dense_ = (0.5 * (dense_ + dense_.transpose())).eval();
  dense_ = dense_.unaryExpr([t = opts_.zero_threshold](double x) { return std::abs(x) < t ? 0.0 : x; });
  dense_abs_ = dense_.cwiseAbs();
}

Eigen::VectorXd TransferImpedance::compute_column(EdgeId f) const {
  const Graph& g = network_.graph();
  const Edge& ef = g.edge(f);
  Eigen::VectorXd phi = network_.potentials(ef.tail, ef.head);
  const double sf = std::sqrt(ef.conductance);
  Eigen::VectorXd col(static_cast<Eigen::Index>(g.n_edges()));
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    const Edge& ed = g.edge(e);
    double v = std::sqrt(ed.conductance) * sf *
               (phi[static_cast<Eigen::Index>(ed.tail)] - phi[static_cast<Eigen::Index>(ed.head)]);
    col[static_cast<Eigen::Index>(e)] = std::abs(v) < opts_.zero_threshold ? 0.0 : v;
  }
  return col;
}

Eigen::VectorXd TransferImpedance::column(EdgeId f) const {
  if (f >= size()) throw InvalidArgument("edge id out of range");
  if (opts_.mode == ImpedanceMode::Dense) return dense_.col(static_cast<Eigen::Index>(f));
  return compute_column(f);
}

double TransferImpedance::entry(EdgeId e, EdgeId f) const {
  if (e >= size() || f >= size()) throw InvalidArgument("edge id out of range");
  if (opts_.mode == ImpedanceMode::Dense)
    return dense_(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(f));
  return compute_column(f)[static_cast<Eigen::Index>(e)];
}

const Eigen::MatrixXd& TransferImpedance::dense() const {
  if (opts_.mode != ImpedanceMode::Dense)
    throw InvalidArgument("transfer impedance is in streaming mode; no stored matrix");
  return dense_;
}

double TransferImpedance::trace() const {
  if (opts_.mode == ImpedanceMode::Dense) return dense_.trace();
  double t = 0.0;
  for (EdgeId f = 0; f < size(); ++f) t += compute_column(f)[static_cast<Eigen::Index>(f)];
  return t;
}

Eigen::VectorXd TransferImpedance::abs_apply(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != size())
    throw InvalidArgument("vector length does not match the edge count");
  if (opts_.mode == ImpedanceMode::Dense) return dense_abs_ * x;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
  for (EdgeId f = 0; f < size(); ++f) {
    const double xf = x[static_cast<Eigen::Index>(f)];
    if (xf != 0.0) y += compute_column(f).cwiseAbs() * xf;
  }
  return y;
}

Eigen::VectorXd TransferImpedance::abs_column_sums() const {
  if (opts_.mode == ImpedanceMode::Dense) return dense_abs_.colwise().sum().transpose();
  Eigen::VectorXd sums(static_cast<Eigen::Index>(size()));
  for (EdgeId f = 0; f < size(); ++f)
    sums[static_cast<Eigen::Index>(f)] = compute_column(f).lpNorm<1>();
  return sums;
}

double TransferImpedance::max_abs_colsum() const {
  if (size() == 0) return 0.0;
  return abs_column_sums().maxCoeff();
}

SpectralEstimate TransferImpedance::abs_spectral_norm(const PowerIterationOptions& opts) const {
  return spectral_norm_nonneg([this](const Eigen::VectorXd& x) { return abs_apply(x); }, size(),
                              opts);
}

double TransferImpedance::quadratic_form_abs(const EdgeVector& w) const {
  if (w.size() != size()) throw InvalidArgument("weight vector length does not match edge count");
  if ((w.values().array() < 0.0).any()) throw InvalidArgument("weights must be nonnegative");
  return w.values().dot(abs_apply(w.values()));
}

TransferImpedance transfer_impedance(const Graph& g, ImpedanceMode mode) {
  ImpedanceOptions opts;
  opts.mode = mode;
  return TransferImpedance(g, opts);
}

ImpedanceMode auto_mode(const Graph& g, std::size_t dense_cap) {
  return g.n_edges() <= dense_cap ? ImpedanceMode::Dense : ImpedanceMode::Streaming;
}

double abs_impedance_spectral_norm(const Graph& g) {
  return transfer_impedance(g, auto_mode(g)).abs_spectral_norm().value;
}

double abs_impedance_max_colsum(const Graph& g) {
  return transfer_impedance(g, auto_mode(g)).max_abs_colsum();
}

double quadratic_form_abs(const Graph& g, const EdgeVector& w) {
  return transfer_impedance(g, auto_mode(g)).quadratic_form_abs(w);
}

}  // namespace eloc
