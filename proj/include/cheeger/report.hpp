#pragma once

#include <string>
#include <vector>

#include "cheeger/graph.hpp"
#include "cheeger/rational.hpp"

namespace cheeger {

enum class KStatus {
  kPending,
  kEliminatedPre,     // cheap lower bound already reaches the global upper bound
  kEliminatedRoot,    // the root relaxation of the max-cut instance closed it
  kEliminatedUpdate,  // removed after the global upper bound improved
  kSolved,            // the exact phase found a better subset of this size
  kBoundStop,         // branch and bound proved nothing better exists
  kLimit,
};

std::string to_string(KStatus status);

/// Per-size bookkeeping of the split-and-bound method.
struct KRow {
  int k = 0;
  Rational lower;
  Rational upper;
  VertexSubset witness;
  KStatus status = KStatus::kPending;
  /// Global upper bound at the moment the status was decided.
  Rational threshold;
  double sdp_value = 0.0;
  bool spectral_fallback = false;
  long long bnb_nodes = 0;
};

struct DinkelbachStep {
  Rational gamma;
  long long q = 0;
  int denominator = 0;  // |S| of the minimiser
  VertexSubset minimizer;
  long long bnb_nodes = 0;
  double ms = 0.0;
};

enum class SolveStatus { kSolved, kLimit };

std::string to_string(SolveStatus status);

struct SolveReport {
  std::string method;
  SolveStatus status = SolveStatus::kSolved;
  /// Best ratio found; h(G) when solved.
  Rational value;
  /// Proven lower bound on h(G); equals value when solved.
  Rational lower_bound;
  VertexSubset witness;
  int candidates = 0;      // sizes left after pre-elimination
  int solved_in_root = 0;  // sizes closed by a root relaxation
  long long bnb_nodes = 0;
  int iterations = 0;
  double pre_elimination_ms = 0.0;
  double total_ms = 0.0;
  std::vector<KRow> table;
  std::vector<DinkelbachStep> trace;
};

} // namespace cheeger
