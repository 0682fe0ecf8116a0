#include "cheeger/generators.hpp"

#include <random>

namespace cheeger {

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph hypercube_graph(int d) {
  if (d < 2 || d > 20) throw GraphError("hypercube dimension must be in [2, 20]");
  int n = 1 << d;
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < d; ++b) {
      int w = v ^ (1 << b);
      if (v < w) edges.emplace_back(v, w);
    }
  return Graph(n, std::move(edges));
}

Graph star_graph(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, std::move(edges));
}

Graph gnp_graph(int n, double p, std::uint64_t seed, int max_tries) {
  if (p < 0.0 || p > 1.0) throw GraphError("edge probability must be in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) edges.emplace_back(i, j);
    try {
      return Graph(n, std::move(edges));
    } catch (const GraphError&) {
      if (n < 3) throw;
    }
  }
  throw GraphError("gnp: no connected sample within retry budget");
}

} // namespace cheeger
