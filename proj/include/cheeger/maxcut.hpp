#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cheeger/transforms.hpp"

namespace cheeger {

/// Upper bound on max-cut from max 1/4 <L_w, X> s.t. diag X = e, X psd, with
/// triangle inequalities handled by Lagrangian multipliers.
struct MaxCutBound {
  /// Valid for any multipliers: computed from a dual-feasible shift, never from the primal value.
  double upper = 0.0;
  /// Base relaxation value (no triangle multipliers).
  double base = 0.0;
  /// Primal matrix from the best evaluation.
  Eigen::MatrixXd x;
  int triangles = 0;
  int evaluations = 0;
};

MaxCutBound maxcut_sdp_bound(const MaxCutInstance& inst, int cut_rounds);

/// Largest integer not exceeding the bound after a small safety margin for rounding error.
long long integer_bound(double upper, const MaxCutInstance& inst);

struct RoundedCut {
  std::vector<std::uint8_t> side;  // side[0] == 0
  long long value = 0;
};

/// Best of `trials` random hyperplane roundings of a Gram factorisation of X.
RoundedCut gw_round(const Eigen::MatrixXd& x, const MaxCutInstance& inst, int trials, std::uint64_t seed);

/// Instance left after fixing some vertices. assignment[v] is -1 (free) or the side of v;
/// vertex 0 must be fixed to side 0. Fixed vertices merge into the anchor, so
/// cut(original) = constant + cut(reduced) with reduced vertex i+1 = free_vertices[i].
struct Contraction {
  MaxCutInstance reduced;
  Wide constant = 0;
  std::vector<int> free_vertices;
};

Contraction contract(const MaxCutInstance& inst, const std::vector<std::int8_t>& assignment);

enum class BnbStatus { kOptimal, kBoundStop, kLimit };

std::string to_string(BnbStatus status);

struct BnbStats {
  long long nodes = 0;
  double root_bound = 0.0;
  /// Best proven upper bound on the max-cut (equals value when optimal).
  long long upper_bound = 0;
  int max_depth = 0;
  BnbStatus status = BnbStatus::kOptimal;
  double elapsed_ms = 0.0;
};

struct MaxCutOptions {
  /// Only cuts strictly better than this are of interest; see BnbStatus::kBoundStop.
  std::optional<long long> initial_lb;
  long long node_limit = 1000000;
  double time_limit_seconds = 3600.0;
  int workers = 1;
  std::uint64_t seed = 0;
  int gw_trials = 30;
  int cut_rounds_root = 40;
  int cut_rounds_node = 12;
  /// Nodes with at most this many free vertices are solved by enumeration.
  int enumerate_below = 6;
  /// CSV rows "node,depth,bound,incumbent" when set.
  std::ostream* trace = nullptr;
};

/// value/side: with status kOptimal the maximum cut. With an initial lower bound,
/// kBoundStop means no cut beats it; value is then that bound and side is empty.
/// With kLimit the best cut found so far (side may be empty).
struct MaxCutSolution {
  long long value = 0;
  std::vector<std::uint8_t> side;
  BnbStats stats;
};

MaxCutSolution solve_maxcut(const MaxCutInstance& inst, const MaxCutOptions& options = {});

} // namespace cheeger
