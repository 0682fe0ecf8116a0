#pragma once

#include <optional>

#include "cheeger/graph.hpp"
#include "cheeger/heuristic.hpp"
#include "cheeger/maxcut.hpp"
#include "cheeger/rational.hpp"
#include "cheeger/report.hpp"

namespace cheeger {

struct QEvaluation {
  /// min over 1 <= |S| <= n/2 of gamma_d cut(S) - gamma_n |S|; exact when status is optimal.
  /// After a limit: the best feasible value seen, or LLONG_MAX with an empty minimizer.
  long long value = 0;
  VertexSubset minimizer;
  /// Proven lower bound on the minimum (equals value when optimal).
  long long lower = 0;
  long long bnb_nodes = 0;
  BnbStatus status = BnbStatus::kOptimal;
};

/// Exact Q(gamma) through the penalised max-cut instance. Injected lower bounds
/// in `options` are ignored since the true minimiser is needed.
QEvaluation evaluate_q(const Graph& g, const Rational& gamma, const MaxCutOptions& options = {});

struct DinkelbachOptions {
  SaParams sa;
  int restarts = 1;
  MaxCutOptions maxcut;
  /// Start from this subset's ratio instead of the annealing bound.
  std::optional<VertexSubset> start;
};

/// Newton iteration gamma <- cut(S)/|S| for the minimiser S of Q(gamma),
/// starting from an attained ratio, until Q(gamma) = 0.
SolveReport dinkelbach_solve(const Graph& g, const DinkelbachOptions& options = {});

} // namespace cheeger
