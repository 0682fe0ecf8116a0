#pragma once

#include <cstdint>

#include "cheeger/graph.hpp"

namespace cheeger {

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
/// d-dimensional hypercube Q_d on 2^d vertices.
Graph hypercube_graph(int d);
/// Star K_{1,leaves}; vertex 0 is the center.
Graph star_graph(int leaves);

/// G(n, p) resampled until connected, at most max_tries times.
Graph gnp_graph(int n, double p, std::uint64_t seed, int max_tries = 1000);

} // namespace cheeger
