#pragma once

#include <utility>

#include "cheeger/graph.hpp"
#include "cheeger/rational.hpp"
#include "cheeger/transforms.hpp"

namespace cheeger {

/// Enumeration limit for the brute-force routines below.
inline constexpr int kDefaultEnumerationGuard = 24;

struct ExpansionResult {
  Rational value;
  VertexSubset witness;
};

struct BisectionResult {
  long long cut = 0;
  VertexSubset witness;
};

/// Exact h(G) by enumerating every S with 1 <= |S| <= floor(n/2).
/// Ties go to the lexicographically smallest membership vector.
ExpansionResult brute_force_h(const Graph& g, int guard = kDefaultEnumerationGuard);

/// Exact min |dS| over |S| = k.
BisectionResult brute_force_bisection(const Graph& g, int k, int guard = kDefaultEnumerationGuard);

/// Exact global minimum cut over nonempty proper S.
long long brute_force_mincut(const Graph& g, int guard = kDefaultEnumerationGuard);

struct MaxCutResult {
  Wide value = 0;
  /// side[0] == 0; ties go to the first optimum in Gray-code order.
  std::vector<std::uint8_t> side;
};

/// Exact max-cut by enumerating all bipartitions with vertex 0 fixed.
MaxCutResult brute_force_maxcut(const MaxCutInstance& inst, int guard = 30);

} // namespace cheeger
