#include "cheeger/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "cheeger/log.hpp"

namespace cheeger {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<sdp::Entry> dense_entries(const MatrixXd& a) {
  std::vector<sdp::Entry> out;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j)
      if (a(i, j) != 0.0) out.push_back({i, j, a(i, j)});
  return out;
}

std::vector<sdp::Entry> all_ones(int n) {
  std::vector<sdp::Entry> out;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.push_back({i, j, 1.0});
  return out;
}

std::vector<sdp::Entry> trace_entries(int n) {
  std::vector<sdp::Entry> out;
  for (int i = 0; i < n; ++i) out.push_back({i, i, 1.0});
  return out;
}

// A single boolean quadric inequality sum coef * X_ab <= 1 or <= 0.
struct BqpCut {
  std::vector<std::tuple<int, int, double>> terms;
  double rhs;
  double violation;
};

std::vector<sdp::Entry> to_entries(const BqpCut& cut) {
  std::vector<sdp::Entry> out;
  for (auto [a, b, coef] : cut.terms) {
    int i = std::min(a, b);
    int j = std::max(a, b);
    // Off-diagonal entries are mirrored by the kernel, so halve them.
    out.push_back({i, j, i == j ? coef : 0.5 * coef});
  }
  return out;
}

std::vector<BqpCut> separate_bqp(const MatrixXd& x, double tol) {
  const int n = static_cast<int>(x.rows());
  std::vector<BqpCut> found;
  auto consider = [&](std::vector<std::tuple<int, int, double>> terms, double rhs) {
    double lhs = 0.0;
    for (auto [a, b, coef] : terms) lhs += coef * x(a, b);
    if (lhs - rhs > tol) found.push_back({std::move(terms), rhs, lhs - rhs});
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (i < j) {
        consider({{i, j, -1.0}}, 0.0);                            // X_ij >= 0
        consider({{i, i, 1.0}, {j, j, 1.0}, {i, j, -1.0}}, 1.0);  // X_ii + X_jj - X_ij <= 1
      }
      consider({{i, j, 1.0}, {i, i, -1.0}}, 0.0);  // X_ij <= X_ii
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        if (l == i || l == j) continue;
        consider({{i, l, 1.0}, {j, l, 1.0}, {i, j, -1.0}, {l, l, -1.0}}, 0.0);
        if (l > j)
          consider({{i, i, 1.0}, {j, j, 1.0}, {l, l, 1.0}, {i, j, -1.0}, {i, l, -1.0}, {j, l, -1.0}}, 1.0);
      }
  std::sort(found.begin(), found.end(), [](const BqpCut& a, const BqpCut& b) { return a.violation > b.violation; });
  return found;
}

double spectral_lambda2(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(g.laplacian(), Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(1);
}

} // namespace

double spectral_bound(const Graph& g) { return spectral_lambda2(g) / 2.0; }

GlobalBound global_sdp_bound(const Graph& g, bool use_bqp_cuts, const GlobalBoundOptions& options) {
  const int n = g.num_vertices();
  const double upper = use_bqp_cuts ? static_cast<double>(n / 2) : n / 2.0;
  sdp::Problem problem(n);
  problem.objective() = g.laplacian();
  problem.set_trace_bound(1.0);
  problem.add_equality(trace_entries(n), 1.0);
  // |X_ij| <= tr X = 1, so <J, X> <= n and every BQP slack stays below 4.
  problem.add_greater_equal(all_ones(n), 1.0, static_cast<double>(n));
  problem.add_less_equal(all_ones(n), upper, upper);

  GlobalBound result;
  result.value = -std::numeric_limits<double>::infinity();
  const int rounds = use_bqp_cuts ? options.max_rounds + 1 : 1;
  for (int round = 0; round < rounds; ++round) {
    auto sol = sdp::solve(problem, options.sdp);
    result.status = sol.status;
    result.value = std::max(result.value, sol.certified_lower_bound);
    result.rounds = round + 1;
    if (!use_bqp_cuts || round + 1 == rounds) break;
    auto cuts = separate_bqp(sol.x, options.violation_tolerance);
    if (cuts.empty()) break;
    const int take = std::min(static_cast<int>(cuts.size()), options.cuts_per_round);
    for (int c = 0; c < take; ++c) problem.add_less_equal(to_entries(cuts[static_cast<std::size_t>(c)]), cuts[static_cast<std::size_t>(c)].rhs, 4.0);
    result.cuts += take;
  }
  return result;
}

sdp::Problem bisection_sdp(const Graph& g, int k) {
  const int n = g.num_vertices();
  sdp::Problem problem(n + 1);
  problem.objective().bottomRightCorner(n, n) = g.laplacian();
  problem.set_trace_bound(1.0 + k);
  problem.add_equality({{0, 0, 1.0}}, 1.0);
  std::vector<sdp::Entry> trace;
  std::vector<sdp::Entry> ones;
  for (int i = 1; i <= n; ++i) {
    trace.push_back({i, i, 1.0});
    for (int j = i; j <= n; ++j) ones.push_back({i, j, 1.0});
  }
  problem.add_equality(std::move(trace), static_cast<double>(k));
  problem.add_equality(std::move(ones), static_cast<double>(k) * k);
  for (int i = 1; i <= n; ++i) problem.add_equality({{i, i, 1.0}, {0, i, -0.5}}, 0.0);
  return problem;
}

BisectionBound cheap_bisection_bound(const Graph& g, int k, const sdp::Settings& settings) {
  const int n = g.num_vertices();
  if (k < 1 || k > n / 2) throw GraphError("bisection size out of range: " + std::to_string(k));

  // Orthonormal basis of the complement of (-k, e).
  VectorXd normal(n + 1);
  normal(0) = -static_cast<double>(k);
  normal.tail(n).setOnes();
  Eigen::HouseholderQR<MatrixXd> qr(normal);
  MatrixXd q = qr.householderQ() * MatrixXd::Identity(n + 1, n + 1);
  MatrixXd basis = q.rightCols(n);

  MatrixXd lifted_objective = MatrixXd::Zero(n + 1, n + 1);
  lifted_objective.bottomRightCorner(n, n) = g.laplacian();

  sdp::Problem reduced(n);
  reduced.objective() = basis.transpose() * lifted_objective * basis;
  reduced.set_trace_bound(1.0 + k);
  {
    MatrixXd a = basis.row(0).transpose() * basis.row(0);
    reduced.add_equality(dense_entries(a), 1.0);
  }
  // tr X = k and <J, X> = k^2 hold on the face automatically.
  for (int i = 1; i <= n; ++i) {
    MatrixXd a = basis.row(i).transpose() * basis.row(i);
    MatrixXd cross = basis.row(0).transpose() * basis.row(i);
    a -= 0.5 * (cross + cross.transpose());
    reduced.add_equality(dense_entries(a), 0.0);
  }

  auto sol = sdp::solve(reduced, settings);
  BisectionBound out;
  out.status = sol.status;
  out.sdp_value = std::max(0.0, sol.certified_lower_bound);
  if (sol.status == sdp::Status::kNumericalFailure || !std::isfinite(sol.certified_lower_bound)) {
    out.fallback = true;
    log::warn("bisection SDP for k = " + std::to_string(k) + " failed; using the spectral bound");
    double spectral = spectral_lambda2(g) * k * (n - k) / static_cast<double>(n);
    out.sdp_value = std::max(std::isfinite(sol.certified_lower_bound) ? sol.certified_lower_bound : 0.0, spectral);
    out.sdp_value = std::max(0.0, out.sdp_value);
  }
  out.lower = Rational(static_cast<std::int64_t>(std::ceil(out.sdp_value - kCeilingGuard)), k);
  return out;
}

} // namespace cheeger
