#include "cheeger/dinkelbach.hpp"

#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "cheeger/log.hpp"
#include "cheeger/transforms.hpp"

namespace cheeger {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); }

} // namespace

QEvaluation evaluate_q(const Graph& g, const Rational& gamma, const MaxCutOptions& options) {
  if (gamma < Rational(0)) throw std::invalid_argument("gamma must be nonnegative");
  auto inst = dinkelbach_to_maxcut(g, gamma.num(), gamma.den());
  if (inst.max_abs_weight() > Wide(std::numeric_limits<std::int64_t>::max()) ||
      inst.offset > Wide(std::numeric_limits<std::int64_t>::max()))
    log::warn("instance for gamma " + gamma.to_string() + " has weights beyond 2^63");

  MaxCutOptions exact = options;
  exact.initial_lb.reset();
  auto result = solve_maxcut(inst, exact);

  QEvaluation out;
  out.bnb_nodes = result.stats.nodes;
  out.status = result.stats.status;
  out.lower = static_cast<long long>(inst.offset - result.stats.upper_bound);
  if (result.side.empty()) {
    if (out.status == BnbStatus::kOptimal) throw std::logic_error("max-cut solver returned no cut");
    out.value = std::numeric_limits<long long>::max();
    return out;
  }
  out.value = static_cast<long long>(inst.offset - result.value);
  out.minimizer = decode_cut(inst, result.side);
  if (out.status != BnbStatus::kOptimal) {
    // A stopped run may hold an incumbent that still pays a penalty; report the
    // true objective of a feasible one and drop the rest.
    if (in_feasible_range(g, out.minimizer)) {
      out.value = gamma.den() * cut_value(g, out.minimizer) - gamma.num() * out.minimizer.size();
    } else {
      out.minimizer = VertexSubset();
      out.value = std::numeric_limits<long long>::max();
    }
    return out;
  }
  // Re-validate the decoded subset against the original objective.
  if (!in_feasible_range(g, out.minimizer))
    throw std::logic_error("decoded minimiser of Q has size " + std::to_string(out.minimizer.size()));
  const long long direct = gamma.den() * cut_value(g, out.minimizer) - gamma.num() * out.minimizer.size();
  if (direct != out.value) throw std::logic_error("decoded minimiser does not reproduce Q");
  if (out.status == BnbStatus::kOptimal) out.lower = out.value;
  return out;
}

SolveReport dinkelbach_solve(const Graph& g, const DinkelbachOptions& options) {
  const auto start = Clock::now();
  SolveReport report;
  report.method = "dinkelbach";

  VertexSubset current;
  if (options.start) {
    if (!in_feasible_range(g, *options.start)) throw std::invalid_argument("start subset must have 1 <= |S| <= n/2");
    current = *options.start;
  } else {
    current = heuristic_upper_bounds(g, options.sa, options.restarts).best_witness;
  }
  Rational gamma(cut_value(g, current), current.size());
  report.pre_elimination_ms = ms_since(start);

  for (;;) {
    const auto step_start = Clock::now();
    auto q = evaluate_q(g, gamma, options.maxcut);
    report.bnb_nodes += q.bnb_nodes;
    report.value = gamma;
    report.witness = current;

    if (q.status != BnbStatus::kOptimal) {
      // P has slopes <= -1, so h >= gamma + P(gamma) >= gamma + lower / gamma_d.
      report.status = SolveStatus::kLimit;
      Rational bound = gamma + Rational(q.lower, gamma.den());
      report.lower_bound = bound > Rational(0) ? bound : Rational(0);
      break;
    }
    report.trace.push_back({gamma, q.value, q.minimizer.size(), q.minimizer, q.bnb_nodes, ms_since(step_start)});
    log::info("gamma " + gamma.to_string() + " Q " + std::to_string(q.value));

    if (q.value > 0) throw std::logic_error("Q is positive at an attained ratio");
    if (q.value == 0) {
      report.lower_bound = gamma;
      break;
    }
    Rational next(cut_value(g, q.minimizer), q.minimizer.size());
    if (!(next < gamma)) throw std::logic_error("Newton step did not decrease gamma");
    const auto& steps = report.trace;
    if (steps.size() >= 2 && steps.back().denominator > steps[steps.size() - 2].denominator)
      throw std::logic_error("minimiser sizes increased along the iteration");
    ++report.iterations;
    if (report.iterations > g.num_vertices() / 2) throw std::logic_error("iteration count exceeds n/2");
    gamma = next;
    current = q.minimizer;
  }
  report.candidates = 0;
  report.total_ms = ms_since(start);
  return report;
}

} // namespace cheeger
