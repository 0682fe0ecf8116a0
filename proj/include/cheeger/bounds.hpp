#pragma once

#include "cheeger/graph.hpp"
#include "cheeger/rational.hpp"
#include "cheeger/sdp.hpp"

namespace cheeger {

/// Guard subtracted before rounding an SDP bisection value up to an integer.
inline constexpr double kCeilingGuard = 1e-6;

/// lambda_2(L) / 2, a lower bound on h(G).
double spectral_bound(const Graph& g);

struct GlobalBoundOptions {
  int max_rounds = 5;
  int cuts_per_round = 500;
  double violation_tolerance = 1e-6;
  sdp::Settings sdp;
};

struct GlobalBound {
  double value = 0.0;
  int rounds = 0;
  int cuts = 0;
  sdp::Status status = sdp::Status::kOptimal;
};

/// min <L, X> s.t. tr X = 1, 1 <= <J, X> <= n/2, X psd.
/// With use_bqp_cuts the upper limit becomes floor(n/2) and violated boolean
/// quadric inequalities are added in rounds; the best certified value is kept.
GlobalBound global_sdp_bound(const Graph& g, bool use_bqp_cuts, const GlobalBoundOptions& options = {});

struct BisectionBound {
  /// Certified value of the bisection SDP.
  double sdp_value = 0.0;
  /// ceil(sdp_value - guard) / k.
  Rational lower;
  sdp::Status status = sdp::Status::kOptimal;
  /// Set when the SDP failed and the spectral k(n-k)lambda_2/n bound was used.
  bool fallback = false;
};

/// Lower bound on h_k from the squared-cardinality SDP over [1 x^T; x X] psd,
/// tr X = k, <J, X> = k^2, diag X = x. The face {Y : Y (-k, e) = 0} that every
/// feasible point lies on is projected out before solving.
BisectionBound cheap_bisection_bound(const Graph& g, int k, const sdp::Settings& settings = {});

/// Assembles the bisection SDP in its original (n+1)-dimensional form.
sdp::Problem bisection_sdp(const Graph& g, int k);

} // namespace cheeger
