#include "cheeger/maxcut.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <queue>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace cheeger {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// ---------------------------------------------------------------------------
// max <C, X> s.t. diag X = e, X psd. Dual: min e^T y s.t. Diag(y) - C psd.
// Primal-dual interior point with the HKM direction; the Schur complement
// for the diagonal constraints is the Hadamard product Z^-1 o X.

struct DiagonalSdp {
  MatrixXd x;
  VectorXd y;
  double upper = 0.0;  // certified: e^T y + N max(0, lambda_max(C - Diag y))
};

double max_step(const MatrixXd& m, const MatrixXd& dm) {
  Eigen::LLT<MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return 0.0;
  MatrixXd l_inv_dm = llt.matrixL().solve(dm);
  MatrixXd scaled = llt.matrixL().solve(l_inv_dm.transpose());
  scaled = 0.5 * (scaled + scaled.transpose()).eval();
  double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(scaled, Eigen::EigenvaluesOnly).eigenvalues()(0);
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

double certified_upper(const MatrixXd& c, const VectorXd& y) {
  MatrixXd shifted = c;
  shifted.diagonal() -= y;
  double lmax = Eigen::SelfAdjointEigenSolver<MatrixXd>(shifted, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  return y.sum() + static_cast<double>(c.rows()) * std::max(0.0, lmax);
}

DiagonalSdp solve_diagonal_sdp(const MatrixXd& c_in) {
  const auto n = c_in.rows();
  DiagonalSdp out;
  const double s = c_in.cwiseAbs().maxCoeff();
  if (n == 0 || s == 0.0) {
    out.x = MatrixXd::Identity(n, n);
    out.y = VectorXd::Zero(n);
    return out;
  }
  const MatrixXd c = c_in / s;
  MatrixXd x = MatrixXd::Identity(n, n);
  VectorXd y = c.cwiseAbs().rowwise().sum().array() + 1.0;
  auto dual_slack = [&](const VectorXd& yy) {
    MatrixXd z = -c;
    z.diagonal() += yy;
    return z;
  };
  MatrixXd z = dual_slack(y);
  const VectorXd ones = VectorXd::Ones(n);

  for (int iter = 0; iter < 80; ++iter) {
    const double gap = (z.cwiseProduct(x)).sum();
    const double dobj = y.sum();
    if (gap <= 1e-8 * (1.0 + std::abs(dobj))) break;
    Eigen::LLT<MatrixXd> zllt(z);
    if (zllt.info() != Eigen::Success) break;
    const MatrixXd zinv = zllt.solve(MatrixXd::Identity(n, n));
    Eigen::LLT<MatrixXd> schur(zinv.cwiseProduct(x));
    if (schur.info() != Eigen::Success) break;

    auto direction = [&](double mu, VectorXd& dy, MatrixXd& dx) {
      dy = schur.solve(mu * zinv.diagonal() - ones);
      MatrixXd t = mu * zinv - x - zinv * dy.asDiagonal() * x;
      dx = 0.5 * (t + t.transpose());
    };
    VectorXd dy;
    MatrixXd dx;
    direction(0.0, dy, dx);
    MatrixXd dz = dy.asDiagonal();
    double ap = std::min(1.0, 0.95 * max_step(x, dx));
    double ad = std::min(1.0, 0.95 * max_step(z, dz));
    const double gap_aff = ((z + ad * dz).cwiseProduct(x + ap * dx)).sum();
    const double sigma = std::clamp(std::pow(gap_aff / gap, 3.0), 0.0, 1.0);
    direction(sigma * gap / static_cast<double>(n), dy, dx);
    dz = dy.asDiagonal();
    ap = std::min(1.0, 0.95 * max_step(x, dx));
    ad = std::min(1.0, 0.95 * max_step(z, dz));
    if (ap <= 0.0 && ad <= 0.0) break;
    x += ap * dx;
    y += ad * dy;
    z = dual_slack(y);
  }
  out.x = x;
  out.y = y * s;
  out.upper = s * certified_upper(c, y);
  return out;
}

// ---------------------------------------------------------------------------
// Triangle inequalities a X_ij + b X_ik + c X_jk >= -1 with (a,b,c) one of
// (+,+,+), (+,-,-), (-,+,-), (-,-,+).

constexpr std::int8_t kSigns[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};

struct Triangle {
  int i, j, k;  // i < j < k
  int type;
  double multiplier;
};

std::uint64_t triangle_key(int i, int j, int k, int type) {
  return (((static_cast<std::uint64_t>(i) * 4096 + static_cast<std::uint64_t>(j)) * 4096 + static_cast<std::uint64_t>(k)) << 2) |
         static_cast<std::uint64_t>(type);
}

double triangle_value(const MatrixXd& x, const Triangle& t) {
  const auto& s = kSigns[t.type];
  return s[0] * x(t.i, t.j) + s[1] * x(t.i, t.k) + s[2] * x(t.j, t.k);
}

void add_triangle_term(MatrixXd& c, const Triangle& t) {
  const auto& s = kSigns[t.type];
  const double h = 0.5 * t.multiplier;
  c(t.i, t.j) += h * s[0];
  c(t.j, t.i) += h * s[0];
  c(t.i, t.k) += h * s[1];
  c(t.k, t.i) += h * s[1];
  c(t.j, t.k) += h * s[2];
  c(t.k, t.j) += h * s[2];
}

MatrixXd quarter_laplacian(const MatrixXd& w) {
  MatrixXd c = -w;
  c.diagonal() = w.rowwise().sum();
  return 0.25 * c;
}

struct BoundState {
  double upper = std::numeric_limits<double>::infinity();
  double base = 0.0;
  MatrixXd x;
  int evaluations = 0;
};

// Minimises the Lagrangian dual over the triangle multipliers with Polyak steps
// aimed at `target`; stops early once the bound drops to the target.
BoundState triangle_bound(const MatrixXd& w, std::vector<Triangle>& tri, int rounds, double target) {
  const int n = static_cast<int>(w.rows());
  const MatrixXd base_c = quarter_laplacian(w);
  BoundState state;

  auto evaluate = [&](double& value, MatrixXd& x) {
    MatrixXd c = base_c;
    double constant = 0.0;
    for (const auto& t : tri) {
      if (t.multiplier == 0.0) continue;
      add_triangle_term(c, t);
      constant += t.multiplier;
    }
    auto sol = solve_diagonal_sdp(c);
    value = constant + sol.upper;
    x = std::move(sol.x);
    ++state.evaluations;
  };

  double value;
  MatrixXd x;
  evaluate(value, x);
  state.upper = value;
  state.x = x;
  state.base = value;
  if (n < 3) return state;

  std::unordered_set<std::uint64_t> present;
  for (const auto& t : tri) present.insert(triangle_key(t.i, t.j, t.k, t.type));
  double theta = 1.0;
  int stale = 0;
  const std::size_t max_new = static_cast<std::size_t>(2 * n + 20);
  // Progress check every few rounds: give up when the cuts barely move the bound.
  constexpr int kWindow = 4;
  double window_start = state.upper;

  for (int round = 0; round < rounds && state.upper > target; ++round) {
    // Separation on the current primal matrix.
    std::vector<std::pair<double, Triangle>> violated;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          for (int type = 0; type < 4; ++type) {
            Triangle t{i, j, k, type, 0.0};
            double v = -1.0 - triangle_value(x, t);
            if (v > 1e-4 && !present.count(triangle_key(i, j, k, type))) violated.emplace_back(v, t);
          }
    if (violated.size() > max_new) {
      std::partial_sort(violated.begin(), violated.begin() + static_cast<std::ptrdiff_t>(max_new), violated.end(),
                        [](const auto& a, const auto& b) { return a.first > b.first; });
      violated.resize(max_new);
    }
    for (const auto& [v, t] : violated) {
      tri.push_back(t);
      present.insert(triangle_key(t.i, t.j, t.k, t.type));
    }

    // Subgradient 1 + <T, X>; only coordinates that can move count.
    std::vector<double> grad(tri.size());
    double norm2 = 0.0;
    for (std::size_t t = 0; t < tri.size(); ++t) {
      grad[t] = 1.0 + triangle_value(x, tri[t]);
      if (tri[t].multiplier > 0.0 || grad[t] < 0.0) norm2 += grad[t] * grad[t];
    }
    if (norm2 < 1e-12) break;
    const double step = theta * (value - target) / norm2;
    for (std::size_t t = 0; t < tri.size(); ++t) tri[t].multiplier = std::max(0.0, tri[t].multiplier - step * grad[t]);

    // Drop inactive, satisfied inequalities.
    std::vector<Triangle> kept;
    kept.reserve(tri.size());
    for (std::size_t t = 0; t < tri.size(); ++t) {
      if (tri[t].multiplier == 0.0 && grad[t] > 0.0)
        present.erase(triangle_key(tri[t].i, tri[t].j, tri[t].k, tri[t].type));
      else
        kept.push_back(tri[t]);
    }
    tri.swap(kept);

    evaluate(value, x);
    if (value < state.upper - 1e-9 * (1.0 + std::abs(state.upper))) {
      state.upper = value;
      state.x = x;
      stale = 0;
    } else if (++stale >= 3) {
      theta *= 0.5;
      stale = 0;
      if (theta < 1e-3) break;
    }
    if ((round + 1) % kWindow == 0) {
      if (window_start - state.upper < 0.02 * (window_start - target)) break;
      window_start = state.upper;
    }
  }
  return state;
}

// ---------------------------------------------------------------------------

struct Weights {
  int n = 0;
  std::vector<long long> w;
  long long at(int i, int j) const { return w[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
};

Weights checked_weights(const MaxCutInstance& inst) {
  Weights out;
  out.n = inst.size;
  out.w.resize(inst.weights.size());
  Wide total = 0;
  for (std::size_t i = 0; i < inst.weights.size(); ++i) {
    Wide v = inst.weights[i];
    total += v < 0 ? -v : v;
    if (total > (Wide(1) << 61)) throw std::overflow_error("instance weights too large for the max-cut solver");
    out.w[i] = static_cast<long long>(v);
  }
  return out;
}

MatrixXd to_double(const MaxCutInstance& inst) {
  MatrixXd w(inst.size, inst.size);
  for (int i = 0; i < inst.size; ++i)
    for (int j = 0; j < inst.size; ++j) w(i, j) = static_cast<double>(inst.weight(i, j));
  return w;
}

long long cut_of(const Weights& w, const std::vector<std::uint8_t>& side) {
  long long total = 0;
  for (int i = 0; i < w.n; ++i)
    for (int j = i + 1; j < w.n; ++j)
      if (side[static_cast<std::size_t>(i)] != side[static_cast<std::size_t>(j)]) total += w.at(i, j);
  return total;
}

// Flip single vertices (never the anchor) while that strictly improves the cut.
long long one_opt(const Weights& w, std::vector<std::uint8_t>& side, long long value) {
  std::vector<long long> gain(static_cast<std::size_t>(w.n), 0);
  for (int v = 1; v < w.n; ++v)
    for (int u = 0; u < w.n; ++u)
      if (u != v) gain[static_cast<std::size_t>(v)] += side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)] ? w.at(u, v) : -w.at(u, v);
  for (;;) {
    int best = -1;
    for (int v = 1; v < w.n; ++v)
      if (gain[static_cast<std::size_t>(v)] > 0 && (best < 0 || gain[static_cast<std::size_t>(v)] > gain[static_cast<std::size_t>(best)])) best = v;
    if (best < 0) return value;
    value += gain[static_cast<std::size_t>(best)];
    side[static_cast<std::size_t>(best)] ^= 1;
    gain[static_cast<std::size_t>(best)] = -gain[static_cast<std::size_t>(best)];
    for (int u = 1; u < w.n; ++u) {
      if (u == best) continue;
      // u's relation to best flipped.
      gain[static_cast<std::size_t>(u)] += side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(best)] ? 2 * w.at(u, best) : -2 * w.at(u, best);
    }
  }
}

RoundedCut round_hyperplanes(const MatrixXd& x, const Weights& w, int trials, std::uint64_t seed) {
  const int n = w.n;
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (x + x.transpose()));
  MatrixXd factor = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RoundedCut best;
  best.side.assign(static_cast<std::size_t>(n), 0);
  best.value = cut_of(w, best.side);
  std::vector<std::uint8_t> side(static_cast<std::size_t>(n));
  for (int trial = 0; trial < trials; ++trial) {
    VectorXd r(n);
    for (int i = 0; i < n; ++i) r(i) = normal(rng);
    VectorXd proj = factor * r;
    for (int i = 0; i < n; ++i) side[static_cast<std::size_t>(i)] = proj(i) < 0.0;
    if (side[0])
      for (auto& bit : side) bit ^= 1;
    long long value = cut_of(w, side);
    if (trial == 0 || value > best.value) best = {side, value};
  }
  return best;
}

RoundedCut enumerate_cuts(const Weights& w) {
  RoundedCut best;
  best.side.assign(static_cast<std::size_t>(w.n), 0);
  best.value = 0;
  if (w.n <= 1) return best;
  std::vector<std::uint8_t> side(static_cast<std::size_t>(w.n), 0);
  long long value = 0;
  const std::uint64_t steps = 1ULL << (w.n - 1);
  for (std::uint64_t step = 1; step < steps; ++step) {
    const int v = 1 + __builtin_ctzll(step);
    for (int u = 0; u < w.n; ++u)
      if (u != v) value += side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)] ? w.at(u, v) : -w.at(u, v);
    side[static_cast<std::size_t>(v)] ^= 1;
    if (value > best.value) best = {side, value};
  }
  return best;
}

double margin_for(const MaxCutInstance& inst) {
  double total = 0.0;
  for (Wide v : inst.weights) total += std::abs(static_cast<double>(v));
  return 1e-9 * total + 1e-6;
}

} // namespace

std::string to_string(BnbStatus status) {
  switch (status) {
    case BnbStatus::kOptimal: return "optimal";
    case BnbStatus::kBoundStop: return "bound-stop";
    case BnbStatus::kLimit: return "limit";
  }
  return "unknown";
}

long long integer_bound(double upper, const MaxCutInstance& inst) {
  return static_cast<long long>(std::floor(upper + margin_for(inst)));
}

MaxCutBound maxcut_sdp_bound(const MaxCutInstance& inst, int cut_rounds) {
  auto w = checked_weights(inst);
  MaxCutBound out;
  if (inst.size <= 1) {
    out.x = MatrixXd::Identity(inst.size, inst.size);
    return out;
  }
  std::vector<Triangle> tri;
  auto first = triangle_bound(to_double(inst), tri, 0, -std::numeric_limits<double>::infinity());
  out.base = first.upper;
  out.upper = first.upper;
  out.x = first.x;
  out.evaluations = first.evaluations;
  if (cut_rounds > 0) {
    auto guess = round_hyperplanes(first.x, w, 50, 1);
    long long lower = one_opt(w, guess.side, guess.value);
    auto refined = triangle_bound(to_double(inst), tri, cut_rounds, static_cast<double>(lower));
    if (refined.upper < out.upper) {
      out.upper = refined.upper;
      out.x = refined.x;
    }
    out.evaluations += refined.evaluations;
  }
  out.triangles = static_cast<int>(tri.size());
  return out;
}

RoundedCut gw_round(const MatrixXd& x, const MaxCutInstance& inst, int trials, std::uint64_t seed) {
  if (x.rows() != inst.size || x.cols() != inst.size) throw std::invalid_argument("matrix does not match instance");
  if (trials < 1) throw std::invalid_argument("at least one rounding trial is needed");
  return round_hyperplanes(x, checked_weights(inst), trials, seed);
}

Contraction contract(const MaxCutInstance& inst, const std::vector<std::int8_t>& assignment) {
  if (static_cast<int>(assignment.size()) != inst.size) throw std::invalid_argument("assignment has wrong length");
  if (inst.size == 0 || assignment[0] != 0) throw std::invalid_argument("the anchor must be fixed to side 0");
  Contraction out;
  for (int v = 1; v < inst.size; ++v)
    if (assignment[static_cast<std::size_t>(v)] < 0) out.free_vertices.push_back(v);
  const int r = static_cast<int>(out.free_vertices.size());
  out.reduced = MaxCutInstance(r + 1);
  out.reduced.scale = inst.scale;
  for (int i = 0; i < inst.size; ++i) {
    if (assignment[static_cast<std::size_t>(i)] < 0) continue;
    for (int j = i + 1; j < inst.size; ++j)
      if (assignment[static_cast<std::size_t>(j)] >= 0 && assignment[static_cast<std::size_t>(i)] != assignment[static_cast<std::size_t>(j)])
        out.constant += inst.weight(i, j);
  }
  for (int a = 0; a < r; ++a) {
    const int j = out.free_vertices[static_cast<std::size_t>(a)];
    Wide same = 0, opposite = 0;
    for (int u = 0; u < inst.size; ++u) {
      if (assignment[static_cast<std::size_t>(u)] == 0) same += inst.weight(u, j);
      else if (assignment[static_cast<std::size_t>(u)] == 1) opposite += inst.weight(u, j);
    }
    out.reduced.set_weight(0, a + 1, same - opposite);
    out.constant += opposite;
    for (int b = a + 1; b < r; ++b) out.reduced.set_weight(a + 1, b + 1, inst.weight(j, out.free_vertices[static_cast<std::size_t>(b)]));
  }
  return out;
}

namespace {

struct Node {
  std::vector<std::int8_t> assignment;
  long long bound = 0;
  int depth = 0;
  long long id = 0;
  std::vector<Triangle> multipliers;  // in original vertex labels
};

struct NodeOrder {
  bool operator()(const std::shared_ptr<Node>& a, const std::shared_ptr<Node>& b) const {
    if (a->bound != b->bound) return a->bound < b->bound;
    if (a->depth != b->depth) return a->depth < b->depth;
    return a->id > b->id;
  }
};

class Search {
public:
  Search(const MaxCutInstance& inst, const MaxCutOptions& options)
      : inst_(inst), options_(options), weights_(checked_weights(inst)), start_(std::chrono::steady_clock::now()) {
    if (options.workers < 1) throw std::invalid_argument("worker count must be >= 1");
    if (options.node_limit < 1) throw std::invalid_argument("node limit must be >= 1");
    incumbent_ = options.initial_lb ? *options.initial_lb : std::numeric_limits<long long>::min();
  }

  MaxCutSolution run() {
    auto root = std::make_shared<Node>();
    root->assignment.assign(static_cast<std::size_t>(inst_.size), -1);
    if (inst_.size > 0) root->assignment[0] = 0;
    root->bound = std::numeric_limits<long long>::max();
    queue_.push(root);
    if (options_.trace) *options_.trace << "node,depth,bound,incumbent\n";

    if (options_.workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < options_.workers; ++i) pool.emplace_back([this] { work(); });
      for (auto& t : pool) t.join();
    }

    MaxCutSolution out;
    out.stats.nodes = nodes_;
    out.stats.root_bound = root_bound_;
    out.stats.max_depth = max_depth_;
    out.stats.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    out.value = incumbent_;
    out.side = best_side_;
    long long open_bound = std::numeric_limits<long long>::min();
    while (!queue_.empty()) {
      open_bound = std::max(open_bound, queue_.top()->bound);
      queue_.pop();
    }
    if (limit_hit_) {
      out.stats.status = BnbStatus::kLimit;
      out.stats.upper_bound = std::max(open_bound, incumbent_);
    } else {
      out.stats.status = best_side_.empty() ? BnbStatus::kBoundStop : BnbStatus::kOptimal;
      out.stats.upper_bound = incumbent_;
    }
    if (inst_.size == 0) out.stats.status = BnbStatus::kOptimal;
    return out;
  }

private:
  void work() {
    std::unique_lock lock(mutex_);
    for (;;) {
      cv_.wait(lock, [&] { return !queue_.empty() || active_ == 0 || limit_hit_; });
      if (limit_hit_ || (queue_.empty() && active_ == 0)) {
        cv_.notify_all();
        return;
      }
      auto node = queue_.top();
      queue_.pop();
      if (node->bound <= incumbent_) continue;
      const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (nodes_ >= options_.node_limit || elapsed > options_.time_limit_seconds) {
        queue_.push(node);
        limit_hit_ = true;
        cv_.notify_all();
        return;
      }
      ++nodes_;
      const long long id = nodes_;
      const long long snapshot = incumbent_;
      ++active_;
      lock.unlock();

      Outcome outcome = process(*node, snapshot, id);

      lock.lock();
      --active_;
      if (outcome.found && outcome.value > incumbent_) {
        incumbent_ = outcome.value;
        best_side_ = std::move(outcome.side);
      }
      if (id == 1) root_bound_ = outcome.continuous_bound;
      max_depth_ = std::max(max_depth_, node->depth);
      for (auto& child : outcome.children)
        if (child->bound > incumbent_) {
          child->id = ++child_ids_;
          queue_.push(std::move(child));
        }
      if (options_.trace)
        *options_.trace << id << ',' << node->depth << ',' << outcome.bound << ','
                        << (incumbent_ == std::numeric_limits<long long>::min() ? std::string("") : std::to_string(incumbent_)) << '\n';
      cv_.notify_all();
    }
  }

  struct Outcome {
    bool found = false;
    long long value = 0;
    std::vector<std::uint8_t> side;
    long long bound = 0;
    double continuous_bound = 0.0;
    std::vector<std::shared_ptr<Node>> children;
  };

  std::vector<std::uint8_t> expand(const Contraction& c, const Node& node, const std::vector<std::uint8_t>& reduced_side) const {
    std::vector<std::uint8_t> side(static_cast<std::size_t>(inst_.size));
    for (int v = 0; v < inst_.size; ++v)
      side[static_cast<std::size_t>(v)] = node.assignment[static_cast<std::size_t>(v)] >= 0 ? static_cast<std::uint8_t>(node.assignment[static_cast<std::size_t>(v)]) : 0;
    for (std::size_t a = 0; a < c.free_vertices.size(); ++a)
      side[static_cast<std::size_t>(c.free_vertices[a])] = reduced_side[a + 1] != reduced_side[0];
    return side;
  }

  Outcome process(const Node& node, long long incumbent, long long id) {
    Outcome out;
    auto c = contract(inst_, node.assignment);
    const long long constant = static_cast<long long>(c.constant);
    const int free = static_cast<int>(c.free_vertices.size());
    const Weights reduced = checked_weights(c.reduced);

    if (free <= std::max(0, options_.enumerate_below)) {
      auto best = enumerate_cuts(reduced);
      out.found = true;
      out.value = constant + best.value;
      out.side = expand(c, node, best.side);
      out.bound = out.value;
      out.continuous_bound = static_cast<double>(out.value);
      return out;
    }

    // Warm start: keep multipliers whose vertices are all free or the anchor.
    std::vector<int> position(static_cast<std::size_t>(inst_.size), -1);
    position[0] = 0;
    for (int a = 0; a < free; ++a) position[static_cast<std::size_t>(c.free_vertices[static_cast<std::size_t>(a)])] = a + 1;
    std::vector<Triangle> tri;
    for (const auto& t : node.multipliers) {
      int i = position[static_cast<std::size_t>(t.i)], j = position[static_cast<std::size_t>(t.j)], k = position[static_cast<std::size_t>(t.k)];
      if (i >= 0 && j >= 0 && k >= 0) tri.push_back({i, j, k, t.type, t.multiplier});
    }

    const double margin = margin_for(c.reduced);
    const bool have_incumbent = incumbent != std::numeric_limits<long long>::min();
    const MatrixXd w = to_double(c.reduced);
    const int rounds = node.depth == 0 ? options_.cut_rounds_root : options_.cut_rounds_node;

    // A first evaluation gives the primal matrix for rounding; the incumbent it
    // produces sharpens the target of the multiplier search.
    auto state = triangle_bound(w, tri, 0, 0.0);
    auto rounded = round_hyperplanes(state.x, reduced, options_.gw_trials, options_.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(id));
    rounded.value = one_opt(reduced, rounded.side, rounded.value);
    long long local_best = constant + rounded.value;
    out.found = true;
    out.value = local_best;
    out.side = expand(c, node, rounded.side);
    const long long goal = std::max(local_best, have_incumbent ? incumbent : local_best);

    if (rounds > 0 && static_cast<double>(constant) + state.upper + margin >= static_cast<double>(goal) + 1.0) {
      const double target = static_cast<double>(goal + 1 - constant) - margin - 1e-3;
      auto refined = triangle_bound(w, tri, rounds, target);
      if (refined.upper < state.upper) {
        state.upper = refined.upper;
        state.x = refined.x;
        auto again = round_hyperplanes(state.x, reduced, options_.gw_trials, options_.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(id) + 1);
        again.value = one_opt(reduced, again.side, again.value);
        if (constant + again.value > out.value) {
          out.value = constant + again.value;
          out.side = expand(c, node, again.side);
        }
      }
    }
    out.continuous_bound = static_cast<double>(constant) + state.upper;
    out.bound = std::min(node.bound, constant + static_cast<long long>(std::floor(state.upper + margin)));
    const long long best_known = std::max(out.value, have_incumbent ? incumbent : out.value);
    if (out.bound <= best_known) return out;

    // Branch on the free vertex least correlated with the anchor.
    int pick = 1;
    for (int a = 2; a <= free; ++a)
      if (std::abs(state.x(0, a)) < std::abs(state.x(0, pick))) pick = a;
    const int vertex = c.free_vertices[static_cast<std::size_t>(pick - 1)];

    std::vector<Triangle> original;
    for (const auto& t : tri) {
      if (t.multiplier <= 0.0) continue;
      auto label = [&](int a) { return a == 0 ? 0 : c.free_vertices[static_cast<std::size_t>(a - 1)]; };
      original.push_back({label(t.i), label(t.j), label(t.k), t.type, t.multiplier});
    }
    for (std::int8_t side : {0, 1}) {
      auto child = std::make_shared<Node>();
      child->assignment = node.assignment;
      child->assignment[static_cast<std::size_t>(vertex)] = side;
      child->bound = out.bound;
      child->depth = node.depth + 1;
      child->multipliers = original;
      out.children.push_back(std::move(child));
    }
    return out;
  }

  const MaxCutInstance& inst_;
  const MaxCutOptions& options_;
  Weights weights_;
  std::chrono::steady_clock::time_point start_;

  std::mutex mutex_;
  std::condition_variable cv_;
  std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>, NodeOrder> queue_;
  int active_ = 0;
  long long nodes_ = 0;
  long long child_ids_ = 0;
  long long incumbent_;
  std::vector<std::uint8_t> best_side_;
  double root_bound_ = 0.0;
  int max_depth_ = 0;
  bool limit_hit_ = false;
};

} // namespace

MaxCutSolution solve_maxcut(const MaxCutInstance& inst, const MaxCutOptions& options) {
  Search search(inst, options);
  return search.run();
}

} // namespace cheeger
