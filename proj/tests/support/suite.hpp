#pragma once

#include <string>
#include <vector>

#include "cheeger/generators.hpp"
#include "cheeger/graph.hpp"

namespace cheeger::test_support {

struct NamedGraph {
  std::string name;
  Graph graph;
};

inline Graph petersen_graph() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, std::move(edges));
}

/// Two K4s joined by a single edge; a textbook bottleneck.
inline Graph barbell_graph() {
  std::vector<Edge> edges;
  for (int side = 0; side < 2; ++side)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) edges.emplace_back(4 * side + i, 4 * side + j);
  edges.emplace_back(3, 4);
  return Graph(8, std::move(edges));
}

/// Graphs with n <= 14 used by the property and acceptance checks.
inline std::vector<NamedGraph> small_suite() {
  std::vector<NamedGraph> out;
  for (int n = 4; n <= 7; ++n) out.push_back({"K" + std::to_string(n), complete_graph(n)});
  for (int n = 5; n <= 10; ++n) out.push_back({"C" + std::to_string(n), cycle_graph(n)});
  for (int n = 4; n <= 7; ++n) out.push_back({"P" + std::to_string(n), path_graph(n)});
  out.push_back({"star5", star_graph(5)});
  out.push_back({"Q3", hypercube_graph(3)});
  out.push_back({"petersen", petersen_graph()});
  out.push_back({"barbell", barbell_graph()});
  const double ps[] = {0.25, 0.4, 0.6};
  for (int i = 0; i < 9; ++i) {
    int n = 6 + i;
    out.push_back({"gnp" + std::to_string(n), gnp_graph(n, ps[i % 3], 7000 + static_cast<std::uint64_t>(i))});
  }
  return out;
}

} // namespace cheeger::test_support
