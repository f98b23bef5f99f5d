#pragma once

#include <cstdint>
#include <string>

#include "eloc/graph.hpp"

namespace eloc {

/// One u-v edge plus k disjoint u-v paths of k edges each. u = 0, v = 1 and
/// the direct edge is edge 0. n = 2 + k(k-1), m = k^2 + 1.
Graph parallel_paths(std::size_t k);

/// n x n grid with wraparound. Vertex (row, col) has id row * n + col; for
/// each vertex the edge to its right neighbour precedes the edge downward.
Graph torus(std::size_t n);

/// d-dimensional hypercube on 2^d vertices.
Graph hypercube(std::size_t d);

/// Random d-regular simple graph built as a union of d random perfect
/// matchings. A matching that repeats an existing edge is redrawn and the
/// whole graph is redrawn until connected. Deterministic for a given seed.
Graph random_regular_expander(std::size_t n, std::size_t d, std::uint64_t seed);

Graph path(std::size_t n);
Graph complete(std::size_t n);

/// G(n, p) conditioned on connectivity by redrawing with the same stream.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Edge list (0,1), (1,2), (2,0).
Graph triangle();

/// Center 0 joined to leaves 1..k.
Graph star(std::size_t k);

/// Parses a family spec such as "torus:8", "expander:64:4:7" or
/// "parallel_paths:3". A leading "family:" is accepted and ignored.
Graph generate_family(const std::string& spec);

}  // namespace eloc
