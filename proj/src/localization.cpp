#include "eloc/localization.hpp"

#include <algorithm>
#include <cmath>

#include "eloc/electrical.hpp"
#include "eloc/errors.hpp"
#include "eloc/laplacian.hpp"

namespace eloc {

namespace {

void require_weights(const Graph& g, const EdgeVector& w) {
  if (w.size() != g.n_edges())
    throw InvalidArgument("weight vector has " + std::to_string(w.size()) + " entries, graph has " +
                          std::to_string(g.n_edges()) + " edges");
  if ((w.values().array() < 0.0).any()) throw InvalidArgument("weights must be nonnegative");
}

// Columns w_e sqrt(c_e) b_e^{(S)}, one per base edge.
Eigen::MatrixXd scaled_edge_columns(const SchurSystem& sys, const EdgeVector& w) {
  const Graph& g = sys.base();
  const Eigen::MatrixXd& p = sys.probabilities();
  Eigen::MatrixXd A(p.rows(), static_cast<Eigen::Index>(g.n_edges()));
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    const Edge& ed = g.edge(e);
    A.col(static_cast<Eigen::Index>(e)) =
        w[e] * std::sqrt(ed.conductance) *
        (p.col(static_cast<Eigen::Index>(ed.tail)) - p.col(static_cast<Eigen::Index>(ed.head)));
  }
  return A;
}

// Signed matrix of w_e sqrt(c_e) b_e^T L_S+ b_f sqrt(c_f) w_f.
Eigen::MatrixXd signed_form(const SchurSystem& sys, const EdgeVector& w) {
  const Eigen::MatrixXd A = scaled_edge_columns(sys, w);
  const LaplacianSystem lap(sys.laplacian());
  return A.transpose() * lap.pinv_apply_columns(A);
}

}  // namespace

DegreeValue degree(const SchurSystem& sys, VertexId u, const EdgeVector& w) {
  const Graph& g = sys.base();
  require_weights(g, w);
  const auto row = sys.probabilities().row(static_cast<Eigen::Index>(sys.local_index(u)));
  double l1 = 0.0, l2 = 0.0;
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const double q =
        std::abs(row[static_cast<Eigen::Index>(ed.tail)] - row[static_cast<Eigen::Index>(ed.head)]);
    l1 += w[e] * std::sqrt(ed.conductance) * q;
    l2 += ed.conductance * q * q;
  }
  if (l2 <= 0.0) return {0.0, true};
  return {l1 * l1 / l2, false};
}

DegreeValue degree(const Graph& g, const std::vector<VertexId>& retained, VertexId u,
                   const EdgeVector& w) {
  return degree(schur_complement(g, retained), u, w);
}

std::size_t bucket_count(std::size_t s) {
  if (s == 0) throw InvalidArgument("bucket count of an empty set");
  std::size_t t = 0;
  while ((std::size_t{1} << t) < s) ++t;
  return t;
}

double local_energy_bound(std::size_t s, double w_norm_sq) {
  return (6.0 * static_cast<double>(bucket_count(s)) + 6.0) * w_norm_sq;
}

DegreeProfile degree_profile(const SchurSystem& sys, const EdgeVector& w) {
  DegreeProfile out;
  out.vertices = sys.retained();
  out.w_norm_sq = w.values().squaredNorm();
  out.buckets = bucket_count(sys.size());
  out.bound = local_energy_bound(sys.size(), out.w_norm_sq);
  out.min = std::numeric_limits<double>::infinity();
  for (VertexId u : sys.retained()) {
    const double d = degree(sys, u, w).value;
    out.degrees.push_back(d);
    out.sum += d;
    // Values within 1e-12 relative count as ties; the earlier (smaller) id wins.
    if (out.degrees.size() == 1 || d < out.min - 1e-12 * std::max(1.0, std::abs(out.min))) {
      out.min = d;
      out.argmin = u;
    }
  }
  return out;
}

DegreeProfile degree_profile(const Graph& g, const std::vector<VertexId>& retained,
                             const EdgeVector& w) {
  return degree_profile(schur_complement(g, retained), w);
}

double absolute_form(const SchurSystem& sys, const EdgeVector& w) {
  require_weights(sys.base(), w);
  return signed_form(sys, w).cwiseAbs().sum();
}

EliminationTrace run_elimination(const Graph& g, const EdgeVector& w,
                                 const EliminationOptions& opts) {
  require_weights(g, w);
  if (g.n_vertices() < 2) throw InvalidArgument("elimination needs at least two vertices");
  std::vector<VertexId> all(g.n_vertices());
  for (VertexId v = 0; v < all.size(); ++v) all[v] = v;

  EliminationTrace trace;
  trace.w_norm_sq = w.values().squaredNorm();
  trace.values_recorded = !opts.skip_values;

  SchurSystem sys = schur_complement(g, all, opts.schur);
  Eigen::MatrixXd form;
  if (!opts.skip_values) form = signed_form(sys, w);

  for (std::size_t i = 0; sys.size() > 2; ++i) {
    const DegreeProfile profile = degree_profile(sys, w);
    EliminationStep step{};
    step.index = i;
    step.retained = sys.size();
    step.pivot = profile.argmin;
    step.degree = profile.min;

    // x_e = b_e^{(i)}(pivot); the eliminated block contributes x x^T / m_i.
    const auto k = static_cast<Eigen::Index>(sys.local_index(step.pivot));
    const double pivot_diag = sys.laplacian()(k, k);
    const Eigen::VectorXd x = scaled_edge_columns(sys, w).row(k).transpose();
    step.rank_one = x.lpNorm<1>() * x.lpNorm<1>() / pivot_diag;

    SchurSystem next = eliminate_one(sys, step.pivot);
    if (!opts.skip_values) {
      Eigen::MatrixXd next_form = signed_form(next, w);
      step.v_value = form.cwiseAbs().sum();
      step.v_next = next_form.cwiseAbs().sum();
      step.slack = step.v_value - step.v_next - step.degree;
      step.split_error =
          (form - next_form - x * x.transpose() / pivot_diag).cwiseAbs().maxCoeff();
      form = std::move(next_form);
    }
    trace.steps.push_back(step);
    sys = std::move(next);
  }

  trace.terminal.a = sys.retained()[0];
  trace.terminal.b = sys.retained()[1];
  if (!opts.skip_values) trace.terminal.v_value = form.cwiseAbs().sum();
  return trace;
}

double harmonic_bound(std::size_t n, double w_norm_sq) {
  double total = 1.0;
  for (std::size_t s = n; s > 2; --s)
    total += (6.0 * static_cast<double>(bucket_count(s)) + 6.0) / static_cast<double>(s);
  return w_norm_sq * total;
}

Theorem4Result theorem4_check(const Graph& g, const EdgeVector& w) {
  require_weights(g, w);
  std::vector<VertexId> all(g.n_vertices());
  for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
  Theorem4Result out{};
  out.lhs = absolute_form(schur_complement(g, all), w);
  out.cross_check = quadratic_form_abs(g, w);
  out.harmonic_bound = harmonic_bound(g.n_vertices(), w.values().squaredNorm());
  out.ok = out.lhs <= out.harmonic_bound * (1.0 + 1e-9) + 1e-12;
  return out;
}

}  // namespace eloc
