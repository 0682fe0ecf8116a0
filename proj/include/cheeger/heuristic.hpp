#pragma once

#include <cstdint>
#include <vector>

#include "cheeger/graph.hpp"
#include "cheeger/rational.hpp"

namespace cheeger {

/// Simulated annealing schedule for fixed-size bisections.
struct SaParams {
  /// Starting temperature; 0 selects k^2 * 2m / C(n,2).
  double initial_temperature = 0.0;
  /// Trials per cycle start at n and grow by this factor after every cycle.
  double trial_growth = 1.15;
  double cooling = 0.7;
  /// Stop once the temperature drops below this fraction of the start.
  double floor_ratio = 1e-3;
  /// Stop after this many cycles without a new best.
  int idle_cycles = 3;
  std::uint64_t seed = 0;
};

struct BisectionCandidate {
  VertexSubset subset;
  long long cut = 0;
};

/// Best k-subset found by swap-move annealing, polished by local_search_swap.
BisectionCandidate sa_bisection(const Graph& g, int k, const SaParams& params, int restart = 0);

/// Steepest descent over single in/out swaps. The size of s is preserved.
BisectionCandidate local_search_swap(const Graph& g, VertexSubset s);

struct UpperBounds {
  /// Entry k-1 holds cut/k for the best subset of size k.
  std::vector<Rational> per_k;
  std::vector<VertexSubset> witnesses;
  Rational best;
  VertexSubset best_witness;
};

/// Runs sa_bisection `restarts` times for each k and keeps the best per k.
UpperBounds heuristic_upper_bounds(const Graph& g, const SaParams& params = {}, int restarts = 1);

/// Improves an existing table in place with further annealing runs; entries never get worse.
void refine_upper_bounds(const Graph& g, UpperBounds& bounds, const SaParams& params, int restarts,
                         int first_restart);

} // namespace cheeger
