#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "eloc/errors.hpp"
#include "eloc/generators.hpp"
#include "eloc/laplacian.hpp"
#include "eloc/schur.hpp"
#include "oracles.hpp"

using namespace eloc;

namespace {

// P - Q R^-1 Q^T computed with a full-pivot LU on the oracle Laplacian.
Eigen::MatrixXd block_formula(const Graph& g, const std::vector<VertexId>& s) {
  const Eigen::MatrixXd L = oracle::laplacian(g);
  std::vector<VertexId> c;
  for (VertexId v = 0; v < g.n_vertices(); ++v)
    if (std::find(s.begin(), s.end(), v) == s.end()) c.push_back(v);
  auto sub = [&](const std::vector<VertexId>& r, const std::vector<VertexId>& k) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(k.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < k.size(); ++j)
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            L(static_cast<Eigen::Index>(r[i]), static_cast<Eigen::Index>(k[j]));
    return out;
  };
  if (c.empty()) return sub(s, s);
  Eigen::MatrixXd Q = sub(s, c);
  return sub(s, s) - Q * Eigen::FullPivLU<Eigen::MatrixXd>(sub(c, c)).solve(Q.transpose());
}

double find_conductance(const Graph& g, VertexId a, VertexId b) {
  double c = 0.0;
  for (const Edge& e : g.edges())
    if ((e.tail == a && e.head == b) || (e.tail == b && e.head == a)) c += e.conductance;
  return c;
}

struct Instance {
  Graph g;
  std::vector<VertexId> s;
};

std::vector<Instance> random_instances(int count, std::uint64_t seed, std::size_t max_n = 40) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  std::vector<Graph> fixed = {torus(4), hypercube(4), random_regular_expander(32, 4, 5),
                              parallel_paths(4), complete(7), path(9)};
  for (int i = 0; i < count; ++i) {
    Graph g = i % 2 == 0
                  ? fixed[static_cast<std::size_t>(i / 2) % fixed.size()]
                  : oracle::random_connected(std::uniform_int_distribution<std::size_t>(4, max_n)(rng),
                                             std::uniform_int_distribution<std::size_t>(0, 30)(rng), rng());
    const std::size_t k = std::uniform_int_distribution<std::size_t>(2, g.n_vertices())(rng);
    out.push_back({g, oracle::random_subset(g.n_vertices(), k, rng)});
  }
  return out;
}

}  // namespace

TEST(SchurComplement, SeriesRule) {
  SchurSystem sys = schur_complement(path(3), {0, 2});
  Graph h = sys.materialize();
  ASSERT_EQ(h.n_edges(), 1u);
  EXPECT_NEAR(h.edge(0).conductance, 0.5, 1e-14);
}

TEST(SchurComplement, TriangleSeriesParallel) {
  for (auto s : std::vector<std::vector<VertexId>>{{0, 1}, {0, 2}, {1, 2}}) {
    Graph h = schur_complement(triangle(), s).materialize();
    ASSERT_EQ(h.n_edges(), 1u);
    EXPECT_NEAR(h.edge(0).conductance, 1.0 + 1.0 / 2.0, 1e-14);
  }
}

TEST(SchurComplement, FullSetIsUnchanged) {
  Graph g = oracle::random_connected(12, 9, 3);
  std::vector<VertexId> all(12);
  for (VertexId v = 0; v < 12; ++v) all[v] = v;
  SchurSystem sys = schur_complement(g, all);
  EXPECT_LT((sys.laplacian() - oracle::laplacian(g)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((sys.probabilities() - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SchurComplement, RetainedSetValidation) {
  EXPECT_THROW(schur_complement(triangle(), {1}), InvalidArgument);
  EXPECT_THROW(schur_complement(triangle(), {1, 1}), InvalidArgument);
  EXPECT_THROW(schur_complement(triangle(), {1, 7}), InvalidArgument);
  Graph disconnected(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  EXPECT_THROW(schur_complement(disconnected, {0, 1}), DisconnectedGraphError);
}

TEST(SchurComplement, LaplacianInvariantsAndBlockFormula) {
  for (const Instance& inst : random_instances(30, 41)) {
    SchurSystem sys = schur_complement(inst.g, inst.s);
    const Eigen::MatrixXd& L = sys.laplacian();
    EXPECT_LT((L - L.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(L.rowwise().sum().cwiseAbs().maxCoeff(), 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
    EXPECT_LT((L - block_formula(inst.g, inst.s)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(EliminateOne, PathSeries) {
  SchurSystem sys = schur_complement(path(4), {0, 1, 2, 3});
  SchurSystem next = eliminate_one(sys, 1);
  EXPECT_EQ(next.retained(), (std::vector<VertexId>{0, 2, 3}));
  Graph h = next.materialize();
  ASSERT_EQ(h.n_edges(), 2u);
  EXPECT_NEAR(find_conductance(h, 0, 1), 0.5, 1e-14);
  EXPECT_NEAR(find_conductance(h, 1, 2), 1.0, 1e-14);
}

TEST(EliminateOne, Commutativity) {
  Graph g = path(4);
  SchurSystem sys = eliminate_one(eliminate_one(schur_complement(g, {0, 1, 2, 3}), 1), 2);
  SchurSystem direct = schur_complement(g, {0, 3});
  EXPECT_LT((sys.laplacian() - direct.laplacian()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((sys.probabilities() - direct.probabilities()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(EliminateOne, CompleteFourToTriangle) {
  Graph g = complete(4);
  SchurSystem next = eliminate_one(schur_complement(g, {0, 1, 2, 3}), 3);
  Eigen::MatrixXd expected = block_formula(g, {0, 1, 2});
  EXPECT_LT((next.laplacian() - expected).cwiseAbs().maxCoeff(), 1e-10);
  Graph h = next.materialize();
  ASSERT_EQ(h.n_edges(), 3u);
  for (const Edge& e : h.edges()) EXPECT_NEAR(e.conductance, 1.0 + 1.0 / 3.0, 1e-12);
}

TEST(EliminateOne, TerminalStateRejected) {
  SchurSystem sys = schur_complement(triangle(), {0, 1});
  EXPECT_THROW(eliminate_one(sys, 0), InvalidArgument);
  SchurSystem three = schur_complement(triangle(), {0, 1, 2});
  EXPECT_THROW(eliminate_one(eliminate_one(three, 2), 1), InvalidArgument);
}

TEST(EliminateOne, OrderIndependence) {
  std::mt19937_64 rng(77);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Graph g = oracle::random_connected(12, 14, seed);
    std::vector<VertexId> all(12);
    for (VertexId v = 0; v < 12; ++v) all[v] = v;
    std::vector<VertexId> target = oracle::random_subset(12, 4, rng);
    std::vector<VertexId> drop;
    for (VertexId v : all)
      if (std::find(target.begin(), target.end(), v) == target.end()) drop.push_back(v);
    auto run = [&](std::vector<VertexId> order) {
      SchurSystem sys = schur_complement(g, all);
      for (VertexId v : order) sys = eliminate_one(sys, v);
      return sys.laplacian();
    };
    Eigen::MatrixXd a = run(drop);
    std::shuffle(drop.begin(), drop.end(), rng);
    Eigen::MatrixXd b = run(drop);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((a - schur_complement(g, target).laplacian()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(EliminateOne, QuadraticFormPreserved) {
  std::mt19937_64 rng(5);
  for (const Instance& inst : random_instances(12, 99)) {
    SchurSystem sys = schur_complement(inst.g, inst.s);
    LaplacianSystem full(inst.g), reduced(sys.laplacian());
    for (std::size_t i = 0; i + 1 < inst.s.size(); ++i) {
      const VertexId x = inst.s[i], y = inst.s[i + 1];
      const double expected = full.effective_resistance(x, y);
      const double got = reduced.effective_resistance(sys.local_index(x), sys.local_index(y));
      EXPECT_NEAR(got, expected, 1e-9 * std::max(1.0, expected));
    }
  }
}

TEST(HittingProbabilities, GamblersRuin) {
  for (auto method : {ProbabilityMethod::Block, ProbabilityMethod::Identify, ProbabilityMethod::WalkOracle}) {
    Eigen::MatrixXd p = hitting_probabilities(path(4), {0, 3}, method);
    EXPECT_NEAR(p(0, 1), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(p(0, 2), 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(p(1, 1), 1.0 / 3.0, 1e-12);
    // Walk on a path of n vertices absorbed at both ends: 1 - i/(n-1).
    const std::size_t n = 9;
    Eigen::MatrixXd q = hitting_probabilities(path(n), {0, n - 1}, method);
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_NEAR(q(0, static_cast<Eigen::Index>(i)), 1.0 - static_cast<double>(i) / (n - 1.0), 1e-12);
  }
}

TEST(HittingProbabilities, IndicatorOnRetainedSet) {
  Graph g = torus(4);
  std::vector<VertexId> s{1, 5, 10};
  for (auto method : {ProbabilityMethod::Block, ProbabilityMethod::Identify, ProbabilityMethod::WalkOracle}) {
    Eigen::MatrixXd p = hitting_probabilities(g, s, method);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j)
        EXPECT_NEAR(p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s[j])), i == j ? 1.0 : 0.0,
                    1e-14);
  }
}

TEST(HittingProbabilities, TriangleSymmetry) {
  for (auto method : {ProbabilityMethod::Block, ProbabilityMethod::Identify, ProbabilityMethod::WalkOracle})
    EXPECT_NEAR(hitting_probabilities(triangle(), {0, 1}, method)(0, 2), 0.5, 1e-14);
}

TEST(HittingProbabilities, MethodsAgreeAndFormDistributions) {
  for (const Instance& inst : random_instances(24, 123, 64)) {
    Eigen::MatrixXd block = hitting_probabilities(inst.g, inst.s, ProbabilityMethod::Block);
    Eigen::MatrixXd ident = hitting_probabilities(inst.g, inst.s, ProbabilityMethod::Identify);
    Eigen::MatrixXd walk = hitting_probabilities(inst.g, inst.s, ProbabilityMethod::WalkOracle);
    EXPECT_LT((block - ident).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((block - walk).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((block.colwise().sum().array() - 1.0).abs().maxCoeff(), 1e-9);
    EXPECT_GE(block.minCoeff(), -1e-12);
    EXPECT_LE(block.maxCoeff(), 1.0 + 1e-12);
  }
}

TEST(HittingProbabilities, AgreeWithValueIteration) {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = oracle::random_connected(10, 8, seed, 0.5, 2.0);
    std::vector<VertexId> s = oracle::random_subset(10, 3, rng);
    Eigen::MatrixXd expected = oracle::walk_iteration(g, s);
    EXPECT_LT((hitting_probabilities(g, s, ProbabilityMethod::Block) - expected).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(EdgeStats, Examples) {
  SchurSystem sys = schur_complement(path(4), {0, 3});
  EdgeStats st = edge_stats(sys, 0);
  EXPECT_NEAR(st.q[0], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(st.r[0], 1.0, 1e-12);
  EXPECT_NEAR(st.r[2], 0.5, 1e-12);

  SchurSystem tri = schur_complement(triangle(), {0, 1, 2});
  EdgeStats t = edge_stats(tri, 0);
  EXPECT_EQ(t.q[1], 0.0);  // edge {1,2} lies inside S \ {0}
  for (const Instance& inst : random_instances(10, 7)) {
    SchurSystem s = schur_complement(inst.g, inst.s);
    for (VertexId v : inst.s) {
      EdgeStats e = edge_stats(s, v);
      for (EdgeId k = 0; k < inst.g.n_edges(); ++k) {
        EXPECT_GE(e.r[k], 1.0 / static_cast<double>(inst.s.size()));
        EXPECT_LE(e.q[k], 1.0 + 1e-12);
      }
    }
  }
  EXPECT_THROW(edge_stats(sys, 1), InvalidArgument);
}

TEST(SumPotentials, Examples) {
  SchurSystem two = schur_complement(path(4), {0, 3});
  EXPECT_NEAR(check_sum_potentials(two, 1), 4.0 / 3.0, 1e-12);
  // |S| = 2: r_0 + r_3 on edge {0,1} = max(1, 2/3, 1/2) + max(0, 1/3, 1/2).
  EXPECT_NEAR(check_sum_potentials(two, 0), 1.5, 1e-12);

  std::mt19937_64 rng(4);
  Graph t = torus(4);
  for (int trial = 0; trial < 10; ++trial) {
    SchurSystem sys = schur_complement(t, oracle::random_subset(16, 5, rng));
    for (EdgeId e = 0; e < t.n_edges(); ++e) EXPECT_LE(check_sum_potentials(sys, e), 3.0);
  }
}

TEST(NormEnergy, PathExample) {
  InequalityCheck c = check_norm_energy(path(4), {0, 3}, 0, 0.5);
  EXPECT_NEAR(c.lhs, 1.0 / 9.0, 1e-12);
  EXPECT_NEAR(c.rhs, 1.0 / 6.0, 1e-12);
}

TEST(NormEnergy, NearOneAndValidation) {
  InequalityCheck c = check_norm_energy(path(4), {0, 3}, 3, 0.999999);
  EXPECT_LE(c.lhs, c.rhs);
  EXPECT_THROW(check_norm_energy(path(4), {0, 3}, 0, 0.0), InvalidArgument);
  EXPECT_THROW(check_norm_energy(path(4), {0, 3}, 0, 1.0), InvalidArgument);
}

TEST(NormEnergy, TorusSweep) {
  std::mt19937_64 rng(50);
  Graph t = torus(4);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t k = std::uniform_int_distribution<std::size_t>(2, 16)(rng);
    auto s = oracle::random_subset(16, k, rng);
    VertexId v = s[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)];
    InequalityCheck c = check_norm_energy(t, s, v, u(rng));
    EXPECT_LE(c.lhs, c.rhs * (1 + 1e-9) + 1e-15);
  }
}

TEST(SchurConductance, FullSetIsWeightedDegree) {
  Graph g = oracle::random_connected(9, 6, 2);
  std::vector<VertexId> all(9);
  for (VertexId v = 0; v < 9; ++v) all[v] = v;
  for (VertexId v = 0; v < 9; ++v) {
    InequalityCheck c = check_schur_conductance(g, all, v);
    EXPECT_NEAR(c.lhs, g.weighted_degree(v), 1e-12);
    EXPECT_NEAR(c.rhs, g.weighted_degree(v), 1e-12);
  }
}

TEST(SchurConductance, PathSeries) {
  InequalityCheck c = check_schur_conductance(path(4), {0, 3}, 0);
  EXPECT_NEAR(c.lhs, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(c.rhs, 1.0 / 3.0, 1e-12);
}

TEST(SchurConductance, ExpanderSweep) {
  Graph g = random_regular_expander(64, 4, 1);
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    SchurSystem sys = schur_complement(g, oracle::random_subset(64, 8, rng));
    for (VertexId v : sys.retained()) {
      InequalityCheck c = check_schur_conductance(sys, v);
      EXPECT_LE(std::abs(c.lhs - c.rhs), 1e-8 * c.rhs);
    }
  }
}
