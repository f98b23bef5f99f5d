#include "eloc/generators.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "eloc/errors.hpp"

namespace eloc {

namespace {

constexpr int kMaxAttempts = 10000;

Edge unit(VertexId a, VertexId b) { return Edge{a, b, 1.0}; }

}  // namespace

Graph parallel_paths(std::size_t k) {
  if (k < 1) throw InvalidArgument("parallel_paths needs k >= 1");
  const VertexId u = 0, v = 1;
  std::vector<Edge> edges{unit(u, v)};
  VertexId next = 2;
  for (std::size_t p = 0; p < k; ++p) {
    VertexId prev = u;
    for (std::size_t s = 0; s + 1 < k; ++s) {
      edges.push_back(unit(prev, next));
      prev = next++;
    }
    edges.push_back(unit(prev, v));
  }
  return Graph(next, std::move(edges));
}

Graph torus(std::size_t n) {
  if (n < 2) throw InvalidArgument("torus needs side length >= 2");
  std::vector<Edge> edges;
  edges.reserve(2 * n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      edges.push_back(unit(r * n + c, r * n + (c + 1) % n));
      edges.push_back(unit(r * n + c, ((r + 1) % n) * n + c));
    }
  }
  return Graph(n * n, std::move(edges));
}

Graph hypercube(std::size_t d) {
  if (d < 1 || d > 24) throw InvalidArgument("hypercube dimension must be in [1, 24]");
  const std::size_t n = std::size_t{1} << d;
  std::vector<Edge> edges;
  for (VertexId v = 0; v < n; ++v)
    for (std::size_t b = 0; b < d; ++b)
      if (!(v & (std::size_t{1} << b))) edges.push_back(unit(v, v | (std::size_t{1} << b)));
  return Graph(n, std::move(edges));
}

Graph random_regular_expander(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw InvalidArgument("expander needs an even vertex count >= 2");
  if (d < 1 || d >= n) throw InvalidArgument("expander degree must be in [1, n)");
  std::mt19937_64 rng(seed);
  std::vector<VertexId> perm(n);
  for (int graph_attempt = 0; graph_attempt < kMaxAttempts; ++graph_attempt) {
    std::set<std::pair<VertexId, VertexId>> present;
    std::vector<Edge> edges;
    bool failed = false;
    for (std::size_t round = 0; round < d && !failed; ++round) {
      bool placed = false;
      for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
        std::iota(perm.begin(), perm.end(), VertexId{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        bool clash = false;
        for (std::size_t i = 0; i < n && !clash; i += 2)
          clash = present.count(std::minmax(perm[i], perm[i + 1])) > 0;
        if (clash) continue;
        for (std::size_t i = 0; i < n; i += 2) {
          auto [a, b] = std::minmax(perm[i], perm[i + 1]);
          present.emplace(a, b);
          edges.push_back(unit(a, b));
        }
        placed = true;
      }
      failed = !placed;
    }
    if (failed) continue;
    Graph g(n, std::move(edges));
    if (g.is_connected()) return g;
  }
  throw InvalidArgument("could not draw a connected simple " + std::to_string(d) +
                        "-regular graph on " + std::to_string(n) + " vertices");
}

Graph path(std::size_t n) {
  if (n < 2) throw InvalidArgument("path needs n >= 2");
  std::vector<Edge> edges;
  for (VertexId i = 0; i + 1 < n; ++i) edges.push_back(unit(i, i + 1));
  return Graph(n, std::move(edges));
}

Graph complete(std::size_t n) {
  if (n < 2) throw InvalidArgument("complete needs n >= 2");
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) edges.push_back(unit(i, j));
  return Graph(n, std::move(edges));
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("erdos_renyi needs n >= 2");
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("erdos_renyi needs p in (0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Edge> edges;
    for (VertexId i = 0; i < n; ++i)
      for (VertexId j = i + 1; j < n; ++j)
        if (coin(rng)) edges.push_back(unit(i, j));
    Graph g(n, std::move(edges));
    if (g.is_connected()) return g;
  }
  throw InvalidArgument("G(n, p) stayed disconnected; increase p");
}

Graph triangle() { return build_graph({unit(0, 1), unit(1, 2), unit(2, 0)}); }

Graph star(std::size_t k) {
  if (k < 1) throw InvalidArgument("star needs k >= 1");
  std::vector<Edge> edges;
  for (VertexId i = 1; i <= k; ++i) edges.push_back(unit(0, i));
  return Graph(k + 1, std::move(edges));
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_uint(const std::string& s, const std::string& spec) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("bad integer '" + s + "' in family spec '" + spec + "'");
  return v;
}

double parse_real(const std::string& s, const std::string& spec) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("bad number '" + s + "' in family spec '" + spec + "'");
  return v;
}

}  // namespace

Graph generate_family(const std::string& spec) {
  std::string body = spec;
  if (body.rfind("family:", 0) == 0) body = body.substr(7);
  auto parts = split(body, ':');
  const std::string& name = parts[0];
  const std::size_t nargs = parts.size() - 1;
  auto arg = [&](std::size_t i) { return parse_uint(parts[i + 1], spec); };
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (nargs < lo || nargs > hi)
      throw InvalidArgument("family '" + name + "' takes " + std::to_string(lo) +
                            (lo == hi ? "" : "-" + std::to_string(hi)) + " parameter(s): '" +
                            spec + "'");
  };

  if (name == "edge") {
    need(0, 0);
    return path(2);
  }
  if (name == "triangle") {
    need(0, 0);
    return triangle();
  }
  if (name == "parallel_paths") {
    need(1, 1);
    return parallel_paths(arg(0));
  }
  if (name == "torus") {
    need(1, 1);
    return torus(arg(0));
  }
  if (name == "hypercube") {
    need(1, 1);
    return hypercube(arg(0));
  }
  if (name == "expander" || name == "random_regular_expander") {
    need(2, 3);
    return random_regular_expander(arg(0), arg(1), nargs == 3 ? arg(2) : 1);
  }
  if (name == "path") {
    need(1, 1);
    return path(arg(0));
  }
  if (name == "complete") {
    need(1, 1);
    return complete(arg(0));
  }
  if (name == "star") {
    need(1, 1);
    return star(arg(0));
  }
  if (name == "erdos_renyi" || name == "er") {
    need(2, 3);
    return erdos_renyi(arg(0), parse_real(parts[2], spec), nargs == 3 ? arg(2) : 1);
  }
  throw InvalidArgument("unknown graph family '" + name + "'");
}

}  // namespace eloc
