#include "cheeger/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

namespace cheeger {
namespace {

void check_k(const Graph& g, int k) {
  if (k < 1 || k > g.num_vertices() / 2)
    throw GraphError("subset size " + std::to_string(k) + " outside [1, n/2]");
}

void check_params(const SaParams& p) {
  if (!(p.cooling > 0.0 && p.cooling < 1.0)) throw std::invalid_argument("cooling factor must lie in (0,1)");
  if (!(p.trial_growth >= 1.0)) throw std::invalid_argument("trial growth must be >= 1");
  if (!(p.floor_ratio > 0.0)) throw std::invalid_argument("temperature floor must be positive");
  if (p.initial_temperature < 0.0) throw std::invalid_argument("initial temperature must be >= 0");
  if (p.idle_cycles < 1) throw std::invalid_argument("idle cycle count must be >= 1");
}

// Swap state: members of S and of V\S in two arrays, plus for every vertex the
// number of neighbours inside S.
class SwapState {
public:
  SwapState(const Graph& g, const VertexSubset& s) : g_(g), where_(static_cast<std::size_t>(g.num_vertices())) {
    const int n = g.num_vertices();
    inside_count_.assign(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) {
      auto& side = s.contains(v) ? in_ : out_;
      where_[static_cast<std::size_t>(v)] = static_cast<int>(side.size());
      side.push_back(v);
    }
    for (Vertex v : in_)
      for (Vertex w : g.neighbors(v)) ++inside_count_[static_cast<std::size_t>(w)];
    for (Vertex v : in_) cut_ += g.degree(v) - inside_count_[static_cast<std::size_t>(v)];
  }

  long long cut() const { return cut_; }
  const std::vector<Vertex>& in() const { return in_; }
  const std::vector<Vertex>& out() const { return out_; }

  /// Change in cut when u (in S) and w (outside) trade places.
  long long delta(Vertex u, Vertex w) const {
    const int din_u = inside_count_[static_cast<std::size_t>(u)];
    const int din_w = inside_count_[static_cast<std::size_t>(w)];
    return (2LL * din_u - g_.degree(u)) + (g_.degree(w) - 2LL * din_w) + (g_.adjacent(u, w) ? 2 : 0);
  }

  void swap(Vertex u, Vertex w, long long d) {
    for (Vertex x : g_.neighbors(u)) --inside_count_[static_cast<std::size_t>(x)];
    for (Vertex x : g_.neighbors(w)) ++inside_count_[static_cast<std::size_t>(x)];
    const auto iu = static_cast<std::size_t>(where_[static_cast<std::size_t>(u)]);
    const auto iw = static_cast<std::size_t>(where_[static_cast<std::size_t>(w)]);
    in_[iu] = w;
    out_[iw] = u;
    std::swap(where_[static_cast<std::size_t>(u)], where_[static_cast<std::size_t>(w)]);
    cut_ += d;
  }

  VertexSubset subset() const { return VertexSubset(g_.num_vertices(), in_); }

private:
  const Graph& g_;
  std::vector<int> where_;
  std::vector<int> inside_count_;
  std::vector<Vertex> in_, out_;
  long long cut_ = 0;
};

bool better(const BisectionCandidate& a, const BisectionCandidate& b) {
  return a.cut < b.cut || (a.cut == b.cut && b.subset < a.subset);
}

} // namespace

BisectionCandidate local_search_swap(const Graph& g, VertexSubset s) {
  if (s.universe() != g.num_vertices()) throw GraphError("subset universe does not match graph");
  if (s.empty() || s.size() == g.num_vertices()) throw GraphError("subset must be nonempty and proper");
  SwapState state(g, s);
  for (;;) {
    long long best = 0;
    Vertex bu = -1, bw = -1;
    for (Vertex u : state.in())
      for (Vertex w : state.out()) {
        long long d = state.delta(u, w);
        if (d < best || (d == best && d < 0 && (u < bu || (u == bu && w < bw)))) {
          best = d;
          bu = u;
          bw = w;
        }
      }
    if (bu < 0) break;
    state.swap(bu, bw, best);
  }
  return {state.subset(), state.cut()};
}

BisectionCandidate sa_bisection(const Graph& g, int k, const SaParams& params, int restart) {
  check_k(g, k);
  check_params(params);
  const int n = g.num_vertices();

  std::seed_seq seq{params.seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(restart)};
  std::mt19937_64 rng(seq);

  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  SwapState state(g, VertexSubset(n, std::span<const Vertex>(order.data(), static_cast<std::size_t>(k))));

  double t0 = params.initial_temperature;
  if (t0 == 0.0) t0 = static_cast<double>(k) * k * 2.0 * g.num_edges() / (0.5 * n * (n - 1));
  const double floor = t0 * params.floor_ratio;

  BisectionCandidate best{state.subset(), state.cut()};
  std::uniform_int_distribution<int> pick_in(0, k - 1), pick_out(0, n - k - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double trials = n;
  int idle = 0;
  for (double t = t0; t >= floor && idle < params.idle_cycles; t *= params.cooling) {
    bool improved = false;
    const long long count = std::llround(trials);
    for (long long step = 0; step < count; ++step) {
      Vertex u = state.in()[static_cast<std::size_t>(pick_in(rng))];
      Vertex w = state.out()[static_cast<std::size_t>(pick_out(rng))];
      long long d = state.delta(u, w);
      if (d <= 0 || unit(rng) < std::exp(-static_cast<double>(d) / t)) {
        state.swap(u, w, d);
        if (state.cut() < best.cut) {
          best = {state.subset(), state.cut()};
          improved = true;
        }
      }
    }
    idle = improved ? 0 : idle + 1;
    trials *= params.trial_growth;
  }
  return local_search_swap(g, best.subset);
}

void refine_upper_bounds(const Graph& g, UpperBounds& bounds, const SaParams& params, int restarts,
                         int first_restart) {
  const int half = g.num_vertices() / 2;
  bounds.per_k.resize(static_cast<std::size_t>(half));
  bounds.witnesses.resize(static_cast<std::size_t>(half));
  for (int k = 1; k <= half; ++k) {
    auto idx = static_cast<std::size_t>(k - 1);
    std::optional<BisectionCandidate> best;
    if (bounds.witnesses[idx].size() == k) best = BisectionCandidate{bounds.witnesses[idx], cut_value(g, bounds.witnesses[idx])};
    for (int r = first_restart; r < first_restart + restarts; ++r) {
      auto found = sa_bisection(g, k, params, r);
      if (!best || better(found, *best)) best = std::move(found);
    }
    bounds.per_k[idx] = Rational(best->cut, k);
    bounds.witnesses[idx] = best->subset;
  }
  std::size_t arg = 0;
  for (std::size_t i = 1; i < bounds.per_k.size(); ++i)
    if (bounds.per_k[i] < bounds.per_k[arg]) arg = i;
  bounds.best = bounds.per_k[arg];
  bounds.best_witness = bounds.witnesses[arg];
}

UpperBounds heuristic_upper_bounds(const Graph& g, const SaParams& params, int restarts) {
  if (restarts < 1) throw std::invalid_argument("restart count must be >= 1");
  UpperBounds bounds;
  refine_upper_bounds(g, bounds, params, restarts, 0);
  return bounds;
}

} // namespace cheeger
