#include "eloc/schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "eloc/errors.hpp"
#include "eloc/laplacian.hpp"

namespace eloc {

namespace {

constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

std::vector<VertexId> normalize_retained(const Graph& g, std::vector<VertexId> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.size() < 2) throw InvalidArgument("retained set needs at least two vertices");
  if (s.back() >= g.n_vertices()) throw InvalidArgument("retained vertex id out of range");
  return s;
}

std::vector<VertexId> complement(std::size_t n, const std::vector<VertexId>& s) {
  std::vector<VertexId> out;
  std::size_t j = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (j < s.size() && s[j] == v) {
      ++j;
      continue;
    }
    out.push_back(v);
  }
  return out;
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m, const std::vector<VertexId>& rows,
                          const std::vector<VertexId>& cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
  return out;
}

// Symmetrizes, prunes tiny conductances and discards the self-loop residue
// so the result is an exact Laplacian.
Eigen::MatrixXd clean_laplacian(Eigen::MatrixXd L, const SchurOptions& opts) {
  L = (0.5 * (L + L.transpose())).eval();
  const Eigen::Index k = L.rows();
  const double scale = std::max(1.0, L.diagonal().cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < k; ++i) {
    const double surplus = L.row(i).sum();
    if (std::abs(surplus) > opts.surplus_tolerance * scale)
      throw NumericalError("Schur complement row " + std::to_string(i) +
                           " has self-loop residue " + std::to_string(surplus));
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      if (i == j) continue;
      const double c = -L(i, j);
      if (c < -opts.prune_threshold * scale)
        throw NumericalError("Schur complement produced a negative conductance");
      if (c < opts.prune_threshold) L(i, j) = 0.0;
    }
  }
  for (Eigen::Index i = 0; i < k; ++i) L(i, i) = L(i, i) - L.row(i).sum();
  return L;
}

struct BlockResult {
  Eigen::MatrixXd schur;
  Eigen::MatrixXd probabilities;
};

BlockResult block_eliminate(const Graph& g, const std::vector<VertexId>& s) {
  if (!g.is_connected()) throw DisconnectedGraphError("Schur complement needs a connected graph");
  const Eigen::MatrixXd L = laplacian_matrix(g);
  const auto c = complement(g.n_vertices(), s);
  const auto ns = static_cast<Eigen::Index>(s.size());
  BlockResult out;
  out.probabilities = Eigen::MatrixXd::Zero(ns, static_cast<Eigen::Index>(g.n_vertices()));
  for (Eigen::Index i = 0; i < ns; ++i)
    out.probabilities(i, static_cast<Eigen::Index>(s[static_cast<std::size_t>(i)])) = 1.0;
  Eigen::MatrixXd P = submatrix(L, s, s);
  if (c.empty()) {
    out.schur = std::move(P);
    return out;
  }
  const Eigen::MatrixXd Q = submatrix(L, s, c);
  const Eigen::MatrixXd R = submatrix(L, c, c);
  Eigen::LLT<Eigen::MatrixXd> llt(R);
  if (llt.info() != Eigen::Success)
    throw NumericalError("eliminated block R is singular; a component avoids the retained set");
  const Eigen::MatrixXd X = llt.solve(Q.transpose());  // R^-1 Q^T
  out.schur = P - Q * X;
  const Eigen::MatrixXd M = -X.transpose();  // -Q R^-1
  for (std::size_t j = 0; j < c.size(); ++j)
    out.probabilities.col(static_cast<Eigen::Index>(c[j])) = M.col(static_cast<Eigen::Index>(j));
  return out;
}

Eigen::MatrixXd identify_probabilities(const Graph& g, const std::vector<VertexId>& s) {
  const std::size_t n = g.n_vertices();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(s.size()),
                                              static_cast<Eigen::Index>(n));
  std::vector<char> in_s(n, 0);
  for (VertexId v : s) in_s[v] = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const VertexId v = s[i];
    // H: vertices outside S \ {v} keep their relative order; s is last.
    std::vector<VertexId> image(n);
    VertexId next = 0;
    for (VertexId x = 0; x < n; ++x)
      if (!in_s[x] || x == v) image[x] = next++;
    const VertexId sink = next;
    for (VertexId x = 0; x < n; ++x)
      if (in_s[x] && x != v) image[x] = sink;
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
      VertexId a = image[e.tail], b = image[e.head];
      if (a != b) edges.push_back(Edge{a, b, e.conductance});
    }
    Graph h(sink + 1, std::move(edges));
    LaplacianSystem sys(h);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sink + 1));
    b[static_cast<Eigen::Index>(image[v])] = 1.0;
    b[static_cast<Eigen::Index>(sink)] = -1.0;
    const Eigen::VectorXd phi = sys.pinv_apply(b);
    const double phi_s = phi[static_cast<Eigen::Index>(sink)];
    const double reff = phi[static_cast<Eigen::Index>(image[v])] - phi_s;
    for (VertexId x = 0; x < n; ++x)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x)) =
          std::abs(phi[static_cast<Eigen::Index>(image[x])] - phi_s) / reff;
  }
  return out;
}

Eigen::MatrixXd walk_probabilities(const Graph& g, const std::vector<VertexId>& s) {
  if (!g.is_connected()) throw DisconnectedGraphError("random-walk oracle needs a connected graph");
  const std::size_t n = g.n_vertices();
  const auto ns = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(ns, static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < ns; ++i)
    out(i, static_cast<Eigen::Index>(s[static_cast<std::size_t>(i)])) = 1.0;
  const auto transient = complement(n, s);
  if (transient.empty()) return out;

  // Transition matrix of the walk that moves along an edge with probability
  // proportional to its conductance.
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (const Edge& e : g.edges()) {
    P(static_cast<Eigen::Index>(e.tail), static_cast<Eigen::Index>(e.head)) += e.conductance;
    P(static_cast<Eigen::Index>(e.head), static_cast<Eigen::Index>(e.tail)) += e.conductance;
  }
  for (Eigen::Index x = 0; x < P.rows(); ++x) P.row(x) /= P.row(x).sum();

  const auto nt = static_cast<Eigen::Index>(transient.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(nt, nt) - submatrix(P, transient, transient);
  Eigen::MatrixXd rhs = submatrix(P, transient, s);  // one-step absorption into each v
  Eigen::MatrixXd h = Eigen::PartialPivLU<Eigen::MatrixXd>(A).solve(rhs);
  for (std::size_t j = 0; j < transient.size(); ++j)
    out.col(static_cast<Eigen::Index>(transient[j])) =
        h.row(static_cast<Eigen::Index>(j)).transpose();
  return out;
}

}  // namespace

SchurSystem::SchurSystem(std::shared_ptr<const Graph> base, std::vector<VertexId> retained,
                         Eigen::MatrixXd laplacian, Eigen::MatrixXd probabilities,
                         SchurOptions opts)
    : base_(std::move(base)),
      retained_(std::move(retained)),
      local_(base_->n_vertices(), kAbsent),
      laplacian_(std::move(laplacian)),
      probabilities_(std::move(probabilities)),
      opts_(opts) {
  for (std::size_t i = 0; i < retained_.size(); ++i) local_.at(retained_[i]) = i;
}

bool SchurSystem::contains(VertexId v) const { return v < local_.size() && local_[v] != kAbsent; }

std::size_t SchurSystem::local_index(VertexId v) const {
  if (!contains(v))
    throw InvalidArgument("vertex " + std::to_string(v) + " is not in the retained set");
  return local_[v];
}

double SchurSystem::probability(VertexId v, VertexId x) const {
  if (x >= base_->n_vertices()) throw InvalidArgument("vertex id out of range");
  return probabilities_(static_cast<Eigen::Index>(local_index(v)), static_cast<Eigen::Index>(x));
}

double SchurSystem::weighted_degree(VertexId v) const {
  const auto i = static_cast<Eigen::Index>(local_index(v));
  // Off-diagonal sum; equals the diagonal because the row sums are zero.
  return laplacian_(i, i) - laplacian_.row(i).sum();
}

Graph SchurSystem::materialize() const {
  std::vector<Edge> edges;
  const Eigen::Index k = laplacian_.rows();
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j)
      if (-laplacian_(i, j) > 0.0)
        edges.push_back(Edge{static_cast<VertexId>(i), static_cast<VertexId>(j), -laplacian_(i, j)});
  return Graph(static_cast<std::size_t>(k), std::move(edges));
}

SchurSystem schur_complement(std::shared_ptr<const Graph> g, std::vector<VertexId> retained,
                             const SchurOptions& opts) {
  retained = normalize_retained(*g, std::move(retained));
  BlockResult block = block_eliminate(*g, retained);
  return SchurSystem(std::move(g), std::move(retained), clean_laplacian(std::move(block.schur), opts),
                     std::move(block.probabilities), opts);
}

SchurSystem schur_complement(const Graph& g, std::vector<VertexId> retained,
                             const SchurOptions& opts) {
  return schur_complement(std::make_shared<const Graph>(g), std::move(retained), opts);
}

SchurSystem eliminate_one(const SchurSystem& sys, VertexId x) {
  if (sys.size() <= 2)
    throw InvalidArgument("cannot eliminate from a two-vertex system (terminal state)");
  const auto k = static_cast<Eigen::Index>(sys.local_index(x));
  const Eigen::MatrixXd& L = sys.laplacian();
  const Eigen::Index n = L.rows();
  const double pivot = L(k, k);
  if (!(pivot > 0.0)) throw NumericalError("pivot vertex has zero weighted degree");

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != k) keep.push_back(i);
  const auto nk = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd next(nk, nk);
  for (Eigen::Index a = 0; a < nk; ++a)
    for (Eigen::Index b = 0; b < nk; ++b)
      next(a, b) = L(keep[a], keep[b]) - L(keep[a], k) * L(k, keep[b]) / pivot;

  std::vector<VertexId> retained;
  for (VertexId v : sys.retained())
    if (v != x) retained.push_back(v);
  BlockResult block = block_eliminate(sys.base(), retained);
  return SchurSystem(sys.base_ptr(), std::move(retained), clean_laplacian(std::move(next), sys.options()),
                     std::move(block.probabilities), sys.options());
}

Eigen::MatrixXd hitting_probabilities(const Graph& g, std::vector<VertexId> retained,
                                      ProbabilityMethod method) {
  retained = normalize_retained(g, std::move(retained));
  switch (method) {
    case ProbabilityMethod::Block:
      return block_eliminate(g, retained).probabilities;
    case ProbabilityMethod::Identify:
      return identify_probabilities(g, retained);
    case ProbabilityMethod::WalkOracle:
      return walk_probabilities(g, retained);
  }
  throw InvalidArgument("unknown probability method");
}

EdgeStats edge_stats(const SchurSystem& sys, VertexId v) {
  const auto i = static_cast<Eigen::Index>(sys.local_index(v));
  const auto row = sys.probabilities().row(i);
  const double floor = 1.0 / static_cast<double>(sys.size());
  EdgeStats out;
  out.q.reserve(sys.base().n_edges());
  out.r.reserve(sys.base().n_edges());
  for (const Edge& e : sys.base().edges()) {
    const double px = row[static_cast<Eigen::Index>(e.tail)];
    const double py = row[static_cast<Eigen::Index>(e.head)];
    out.q.push_back(std::abs(px - py));
    out.r.push_back(std::max({px, py, floor}));
  }
  return out;
}

double check_sum_potentials(const SchurSystem& sys, EdgeId e) {
  const Edge& ed = sys.base().edge(e);
  const double floor = 1.0 / static_cast<double>(sys.size());
  const Eigen::MatrixXd& p = sys.probabilities();
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    total += std::max({p(i, static_cast<Eigen::Index>(ed.tail)),
                       p(i, static_cast<Eigen::Index>(ed.head)), floor});
  return total;
}

InequalityCheck check_norm_energy(const SchurSystem& sys, VertexId v, double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("threshold p must lie in (0, 1)");
  const auto i = static_cast<Eigen::Index>(sys.local_index(v));
  const auto row = sys.probabilities().row(i);
  double low = 0.0, total = 0.0;
  for (const Edge& e : sys.base().edges()) {
    const double px = row[static_cast<Eigen::Index>(e.tail)];
    const double py = row[static_cast<Eigen::Index>(e.head)];
    const double energy = e.conductance * (px - py) * (px - py);
    total += energy;
    if (std::max(px, py) <= p) low += energy;
  }
  return {low, p * total};
}

InequalityCheck check_norm_energy(const Graph& g, const std::vector<VertexId>& retained,
                                  VertexId v, double p) {
  return check_norm_energy(schur_complement(g, retained), v, p);
}

InequalityCheck check_schur_conductance(const SchurSystem& sys, VertexId v) {
  const EdgeStats stats = edge_stats(sys, v);
  double energy = 0.0;
  for (EdgeId e = 0; e < sys.base().n_edges(); ++e)
    energy += sys.base().edge(e).conductance * stats.q[e] * stats.q[e];
  return {sys.weighted_degree(v), energy};
}

InequalityCheck check_schur_conductance(const Graph& g, const std::vector<VertexId>& retained,
                                        VertexId v) {
  return check_schur_conductance(schur_complement(g, retained), v);
}

}  // namespace eloc
