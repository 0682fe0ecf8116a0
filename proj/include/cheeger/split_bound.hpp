#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cheeger/graph.hpp"
#include "cheeger/heuristic.hpp"
#include "cheeger/maxcut.hpp"
#include "cheeger/rational.hpp"
#include "cheeger/report.hpp"

namespace cheeger {

/// Processing order of the sizes that survive pre-elimination. Only the
/// default is meant for production; the others exist to test order independence.
enum class CandidateOrder { kAscendingUpper, kDescendingSize, kShuffled };

struct SplitOptions {
  SaParams sa;
  int initial_restarts = 1;
  /// Extra annealing runs per surviving size before the exact phase.
  int rerun_restarts = 30;
  MaxCutOptions maxcut;
  CandidateOrder order = CandidateOrder::kAscendingUpper;
  std::uint64_t order_seed = 0;
};

struct BoundsTable {
  std::vector<KRow> rows;  // rows[k-1]
  Rational best;
  VertexSubset best_witness;
  double elapsed_ms = 0.0;

  int candidates() const;
};

/// Cheap SDP lower bounds and annealing upper bounds for every size, then
/// elimination of each k with lower_k >= u*.
BoundsTable pre_eliminate(const Graph& g, const SplitOptions& options = {});

/// Exact h(G) by solving the remaining sizes as max-cut problems, in
/// ascending order of their upper bounds, each with the injected bound
/// offset - ceil(u* k).
SolveReport split_and_bound(const Graph& g, const SplitOptions& options = {});

struct VerifyResult {
  bool valid = false;
  /// False when a limit stopped the run before either answer was proven.
  bool decided = true;
  /// A subset with ratio below the tested value when not valid.
  std::optional<VertexSubset> certificate;
  SolveReport report;
};

/// Decides whether h(G) >= upsilon by running the method with u* = upsilon.
/// u* only moves when an actual subset beats it.
VerifyResult verify_lower_bound(const Graph& g, const Rational& upsilon, const SplitOptions& options = {});

} // namespace cheeger
