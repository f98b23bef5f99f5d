#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "eloc/errors.hpp"
#include "eloc/generators.hpp"
#include "eloc/graph.hpp"
#include "eloc/graph_io.hpp"
#include "oracles.hpp"

using namespace eloc;

TEST(BuildGraph, SingleEdge) {
  Graph g = build_graph({{0, 1, 1.0}});
  EXPECT_EQ(g.n_vertices(), 2u);
  EXPECT_EQ(g.n_edges(), 1u);
}

TEST(BuildGraph, Triangle) {
  Graph g = build_graph({{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  EXPECT_EQ(g.n_vertices(), 3u);
  EXPECT_EQ(g.n_edges(), 3u);
  EXPECT_EQ(g.edge(2).tail, 2u);
  EXPECT_EQ(g.edge(2).head, 0u);
}

TEST(BuildGraph, ParallelEdgesKeptDistinct) {
  Graph g = build_graph({{0, 1, 1}, {0, 1, 2}});
  EXPECT_EQ(g.n_edges(), 2u);
  EXPECT_DOUBLE_EQ(g.weighted_degree(0), 3.0);
}

TEST(BuildGraph, RejectsBadInput) {
  EXPECT_THROW(build_graph({{0, 0, 1.0}}), InvalidArgument);
  EXPECT_THROW(build_graph({{0, 1, 0.0}}), InvalidArgument);
  EXPECT_THROW(build_graph({{0, 1, -2.0}}), InvalidArgument);
  EXPECT_THROW(Graph(2, {{0, 2, 1.0}}), InvalidArgument);
}

TEST(Incidence, PathEdge) {
  Graph g = path(2);
  EdgeVector bx = incidence_apply(g, VertexVector(Eigen::Vector2d(1.0, 0.0)));
  EXPECT_EQ(bx.size(), 1u);
  EXPECT_DOUBLE_EQ(bx[0], 1.0);
}

TEST(Incidence, TransposeTelescopes) {
  Graph g = triangle();
  VertexVector v = incidence_transpose_apply(g, EdgeVector(EdgeRole::Flow, Eigen::Vector3d::Ones()));
  EXPECT_NEAR(v.values().sum(), 0.0, 1e-15);
}

TEST(Incidence, AdjointIdentityOnGrid) {
  // 3x3 grid without wraparound.
  std::vector<Edge> edges;
  for (VertexId r = 0; r < 3; ++r)
    for (VertexId c = 0; c < 3; ++c) {
      if (c + 1 < 3) edges.push_back({r * 3 + c, r * 3 + c + 1, 1.0});
      if (r + 1 < 3) edges.push_back({r * 3 + c, (r + 1) * 3 + c, 1.0});
    }
  Graph g = build_graph(edges);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(9), f(static_cast<Eigen::Index>(g.n_edges()));
    for (auto& v : x) v = nd(rng);
    for (auto& v : f) v = nd(rng);
    const double lhs = incidence_apply(g, VertexVector(x)).values().dot(f);
    const double rhs = x.dot(incidence_transpose_apply(g, EdgeVector(EdgeRole::Flow, f)).values());
    EXPECT_NEAR(lhs, rhs, 1e-12);
  }
}

TEST(Incidence, DimensionMismatch) {
  Graph g = triangle();
  EXPECT_THROW(incidence_apply(g, VertexVector(Eigen::Vector2d::Zero())), InvalidArgument);
  EXPECT_THROW(incidence_transpose_apply(g, EdgeVector(EdgeRole::Flow, Eigen::Vector2d::Zero())),
               InvalidArgument);
}

TEST(Laplacian, AssembledAsBtCB) {
  Graph g = oracle::random_connected(12, 10, 5);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.n_edges()), 12);
  Eigen::VectorXd c(static_cast<Eigen::Index>(g.n_edges()));
  for (EdgeId e = 0; e < g.n_edges(); ++e) {
    B(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(g.edge(e).tail)) = 1.0;
    B(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(g.edge(e).head)) = -1.0;
    c[static_cast<Eigen::Index>(e)] = g.edge(e).conductance;
  }
  Eigen::MatrixXd expected = B.transpose() * c.asDiagonal() * B;
  EXPECT_LT((laplacian_matrix(g) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Generators, Counts) {
  Graph pp = parallel_paths(3);
  EXPECT_EQ(pp.n_vertices(), 8u);
  EXPECT_EQ(pp.n_edges(), 10u);
  Graph t = torus(3);
  EXPECT_EQ(t.n_vertices(), 9u);
  EXPECT_EQ(t.n_edges(), 18u);
  Graph h = hypercube(3);
  EXPECT_EQ(h.n_vertices(), 8u);
  EXPECT_EQ(h.n_edges(), 12u);
  for (std::size_t k = 1; k <= 6; ++k) {
    Graph p = parallel_paths(k);
    EXPECT_EQ(p.n_edges(), k * k + 1);
    EXPECT_EQ(p.n_vertices(), 2 + k * (k - 1));
  }
}

TEST(Generators, ParallelPathsDirectEdgeFirst) {
  Graph g = parallel_paths(4);
  EXPECT_EQ(g.edge(0).tail, 0u);
  EXPECT_EQ(g.edge(0).head, 1u);
}

TEST(Generators, ExpanderIsRegularSimpleAndDeterministic) {
  Graph a = random_regular_expander(64, 4, 11);
  Graph b = random_regular_expander(64, 4, 11);
  EXPECT_EQ(a, b);
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Edge& e : a.edges()) {
    EXPECT_TRUE(seen.insert(std::minmax(e.tail, e.head)).second);
  }
  for (VertexId v = 0; v < 64; ++v) EXPECT_EQ(a.incident(v).size(), 4u);
}

TEST(Generators, AllFamiliesConnectedWithZeroRowSums) {
  std::vector<Graph> gs = {parallel_paths(4), torus(5), hypercube(4), random_regular_expander(32, 4, 2),
                           path(7), complete(6), erdos_renyi(30, 0.15, 4), triangle(), star(5), torus(2)};
  for (const Graph& g : gs) {
    EXPECT_TRUE(g.is_connected());
    const Eigen::MatrixXd L = laplacian_matrix(g);
    EXPECT_LT(L.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
    auto d = oracle::floyd_warshall(g);
    for (VertexId v = 1; v < g.n_vertices(); ++v) EXPECT_LT(d[0][v], g.n_vertices());
  }
}

TEST(Generators, InvalidParameters) {
  EXPECT_THROW(parallel_paths(0), InvalidArgument);
  EXPECT_THROW(torus(1), InvalidArgument);
  EXPECT_THROW(hypercube(0), InvalidArgument);
  EXPECT_THROW(random_regular_expander(7, 3, 1), InvalidArgument);
  EXPECT_THROW(path(1), InvalidArgument);
  EXPECT_THROW(erdos_renyi(10, 0.0, 1), InvalidArgument);
}

TEST(Generators, FamilySpec) {
  EXPECT_EQ(generate_family("family:torus:4"), torus(4));
  EXPECT_EQ(generate_family("torus:4"), torus(4));
  EXPECT_EQ(generate_family("expander:32:4:9"), random_regular_expander(32, 4, 9));
  EXPECT_EQ(generate_family("family:triangle"), triangle());
  EXPECT_EQ(generate_family("edge").n_edges(), 1u);
  EXPECT_THROW(generate_family("torus"), InvalidArgument);
  EXPECT_THROW(generate_family("torus:x"), InvalidArgument);
  EXPECT_THROW(generate_family("moebius:3"), InvalidArgument);
}

TEST(BfsDistance, Basics) {
  EXPECT_EQ(bfs_distance(path(2), 0, 1), 1u);
  EXPECT_EQ(bfs_distance(path(5), 0, 4), 4u);
  EXPECT_EQ(bfs_distance(path(5), 3, 3), 0u);
}

TEST(BfsDistance, TorusAgainstFloydWarshall) {
  Graph g = torus(4);
  auto d = oracle::floyd_warshall(g);
  EXPECT_EQ(d[0][2 * 4 + 2], 4u);
  EXPECT_EQ(bfs_distance(g, 0, 2 * 4 + 2), 4u);
  for (VertexId u = 0; u < 16; ++u)
    for (VertexId v = 0; v < 16; ++v) EXPECT_EQ(bfs_distance(g, u, v), d[u][v]);
}

TEST(BfsDistance, UnreachableIsNotACrash) {
  Graph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  EXPECT_FALSE(bfs_distance(g, 0, 3).has_value());
  EXPECT_FALSE(g.is_connected());
}

TEST(GraphIo, ParseSingleEdgeAndComments) {
  std::istringstream in("# comment\n0 1 1.0\n\n");
  Graph g = parse_graph(in);
  EXPECT_EQ(g.n_vertices(), 2u);
  EXPECT_EQ(g.n_edges(), 1u);
  EXPECT_DOUBLE_EQ(g.edge(0).conductance, 1.0);
}

TEST(GraphIo, ParseErrorsCarryLineNumbers) {
  std::istringstream bad("0 1 1\n0 2\n");
  try {
    parse_graph(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream doubled("0  1 1\n");
  EXPECT_THROW(parse_graph(doubled), ParseError);
  std::istringstream loop("# x\n3 3 1\n");
  try {
    parse_graph(loop);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream negative("0 1 -1\n");
  EXPECT_THROW(parse_graph(negative), ParseError);
  std::istringstream junk("0 1 abc\n");
  EXPECT_THROW(parse_graph(junk), ParseError);
}

TEST(GraphIo, RoundTripPreservesOrderOrientationAndBits) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = oracle::random_connected(15, 12, seed, 1e-3, 1e3);
    std::stringstream buf;
    format_graph(g, buf);
    EXPECT_EQ(parse_graph(buf), g);
  }
  Graph g = build_graph({{1, 0, 0.1}, {2, 1, 1.0 / 3.0}});
  auto path = std::filesystem::temp_directory_path() / "eloc_roundtrip.txt";
  write_graph(g, path);
  EXPECT_EQ(read_graph(path), g);
  std::filesystem::remove(path);
}

TEST(GraphIo, MissingFile) {
  EXPECT_THROW(read_graph("/nonexistent/graph.txt"), IoError);
}
