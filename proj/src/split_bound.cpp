#include "cheeger/split_bound.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cheeger/bounds.hpp"
#include "cheeger/transforms.hpp"

namespace cheeger {

std::string to_string(KStatus status) {
  switch (status) {
    case KStatus::kPending: return "pending";
    case KStatus::kEliminatedPre: return "eliminated-pre";
    case KStatus::kEliminatedRoot: return "eliminated-root";
    case KStatus::kEliminatedUpdate: return "eliminated-update";
    case KStatus::kSolved: return "solved";
    case KStatus::kBoundStop: return "bound-stop";
    case KStatus::kLimit: return "limit";
  }
  return "unknown";
}

std::string to_string(SolveStatus status) { return status == SolveStatus::kSolved ? "solved" : "limit"; }

int BoundsTable::candidates() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const KRow& r) { return r.status == KStatus::kPending; }));
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); }

std::vector<KRow> per_k_bounds(const Graph& g, const SplitOptions& options) {
  auto upper = heuristic_upper_bounds(g, options.sa, options.initial_restarts);
  std::vector<KRow> rows;
  for (int k = 1; k <= g.num_vertices() / 2; ++k) {
    auto cheap = cheap_bisection_bound(g, k);
    KRow row;
    row.k = k;
    row.lower = cheap.lower;
    row.sdp_value = cheap.sdp_value;
    row.spectral_fallback = cheap.fallback;
    row.upper = upper.per_k[static_cast<std::size_t>(k - 1)];
    row.witness = upper.witnesses[static_cast<std::size_t>(k - 1)];
    rows.push_back(std::move(row));
  }
  return rows;
}

// Shared driver. In verification mode u* starts at upsilon and the run stops
// at the first subset that beats it.
class SplitAndBound {
public:
  SplitAndBound(const Graph& g, const SplitOptions& options, std::optional<Rational> upsilon)
      : g_(g), options_(options), upsilon_(upsilon) {}

  SolveReport run() {
    const auto start = Clock::now();
    report_.method = "split-bound";
    auto& rows = report_.table;
    rows = per_k_bounds(g_, options_);

    if (upsilon_) {
      best_ = *upsilon_;
    } else {
      best_ = rows.front().upper;
      witness_ = rows.front().witness;
    }
    for (auto& r : rows)
      if (offer(r.upper, r.witness) && refuted()) return finish(start);
    eliminate(KStatus::kEliminatedPre);
    report_.pre_elimination_ms = ms_since(start);
    report_.candidates = count_pending();

    if (report_.candidates > 0 && options_.rerun_restarts > 0) {
      for (auto& r : rows) {
        if (r.status != KStatus::kPending) continue;
        for (int rep = 0; rep < options_.rerun_restarts; ++rep) {
          auto found = sa_bisection(g_, r.k, options_.sa, options_.initial_restarts + rep);
          Rational ratio(found.cut, r.k);
          if (ratio < r.upper) {
            r.upper = ratio;
            r.witness = found.subset;
          }
        }
        if (offer(r.upper, r.witness) && refuted()) return finish(start);
      }
      eliminate(KStatus::kEliminatedUpdate);
    }

    for (int k : processing_order()) {
      KRow& r = rows[static_cast<std::size_t>(k - 1)];
      if (r.status != KStatus::kPending) continue;
      if (r.lower >= best_) {
        r.status = KStatus::kEliminatedUpdate;
        r.threshold = best_;
        continue;
      }
      solve_size(r);
      if (refuted()) return finish(start);
    }
    return finish(start);
  }

  bool refuted() const { return upsilon_ && best_ < *upsilon_; }
  const VertexSubset& witness() const { return witness_; }

private:
  bool offer(const Rational& ratio, const VertexSubset& s) {
    if (!(ratio < best_)) return false;
    best_ = ratio;
    witness_ = s;
    return true;
  }

  void eliminate(KStatus status) {
    for (auto& r : report_.table)
      if (r.status == KStatus::kPending && r.lower >= best_) {
        r.status = status;
        r.threshold = best_;
      }
  }

  int count_pending() const {
    return static_cast<int>(std::count_if(report_.table.begin(), report_.table.end(),
                                          [](const KRow& r) { return r.status == KStatus::kPending; }));
  }

  std::vector<int> processing_order() const {
    std::vector<int> ks;
    for (const auto& r : report_.table)
      if (r.status == KStatus::kPending) ks.push_back(r.k);
    const auto& rows = report_.table;
    switch (options_.order) {
      case CandidateOrder::kAscendingUpper:
        std::stable_sort(ks.begin(), ks.end(), [&](int a, int b) {
          return rows[static_cast<std::size_t>(a - 1)].upper < rows[static_cast<std::size_t>(b - 1)].upper;
        });
        break;
      case CandidateOrder::kDescendingSize:
        std::reverse(ks.begin(), ks.end());
        break;
      case CandidateOrder::kShuffled: {
        std::mt19937_64 rng(options_.order_seed);
        std::shuffle(ks.begin(), ks.end(), rng);
        break;
      }
    }
    return ks;
  }

  void solve_size(KRow& r) {
    const int k = r.k;
    const long long upper_cut = cut_value(g_, r.witness);
    auto inst = bisection_to_maxcut(g_, k, upper_cut);
    // Only cuts below u* k matter: max-cut must exceed offset - ceil(u* k).
    const std::int64_t cap = (best_ * Rational(k)).ceil();
    MaxCutOptions mc = options_.maxcut;
    mc.initial_lb = static_cast<long long>(inst.offset - cap);
    auto result = solve_maxcut(inst, mc);
    r.bnb_nodes = result.stats.nodes;
    r.threshold = best_;
    report_.bnb_nodes += result.stats.nodes;
    if (result.stats.nodes <= 1 && result.stats.status != BnbStatus::kLimit) ++report_.solved_in_root;

    switch (result.stats.status) {
      case BnbStatus::kOptimal: {
        auto s = decode_cut(inst, result.side);
        const long long cut = static_cast<long long>(inst.offset - result.value);
        if (s.size() != k || cut_value(g_, s) != cut)
          throw std::logic_error("decoded bisection does not match the max-cut value");
        Rational ratio(cut, k);
        if (!(ratio < best_)) throw std::logic_error("exact phase returned a subset that does not improve u*");
        r.upper = ratio;
        r.witness = s;
        r.status = KStatus::kSolved;
        offer(ratio, s);
        eliminate(KStatus::kEliminatedUpdate);
        break;
      }
      case BnbStatus::kBoundStop:
        r.status = result.stats.nodes <= 1 ? KStatus::kEliminatedRoot : KStatus::kBoundStop;
        break;
      case BnbStatus::kLimit: {
        r.status = KStatus::kLimit;
        report_.status = SolveStatus::kLimit;
        // max-cut <= upper_bound gives a lower bound on the k-bisection.
        Rational proven(static_cast<std::int64_t>(inst.offset - result.stats.upper_bound), k);
        if (proven > r.lower) r.lower = proven;
        break;
      }
    }
  }

  SolveReport finish(Clock::time_point start) {
    report_.value = best_;
    report_.witness = witness_;
    report_.lower_bound = best_;
    for (const auto& r : report_.table)
      if (r.status == KStatus::kLimit || r.status == KStatus::kPending)
        report_.lower_bound = std::min(report_.lower_bound, r.lower);
    if (refuted()) report_.lower_bound = Rational(0);
    report_.total_ms = ms_since(start);
    return report_;
  }

  const Graph& g_;
  const SplitOptions& options_;
  std::optional<Rational> upsilon_;
  SolveReport report_;
  Rational best_;
  VertexSubset witness_;
};

} // namespace

BoundsTable pre_eliminate(const Graph& g, const SplitOptions& options) {
  const auto start = Clock::now();
  BoundsTable table;
  table.rows = per_k_bounds(g, options);
  table.best = table.rows.front().upper;
  table.best_witness = table.rows.front().witness;
  for (const auto& r : table.rows)
    if (r.upper < table.best) {
      table.best = r.upper;
      table.best_witness = r.witness;
    }
  for (auto& r : table.rows) {
    if (r.lower >= table.best) r.status = KStatus::kEliminatedPre;
    r.threshold = table.best;
  }
  table.elapsed_ms = ms_since(start);
  return table;
}

SolveReport split_and_bound(const Graph& g, const SplitOptions& options) {
  return SplitAndBound(g, options, std::nullopt).run();
}

VerifyResult verify_lower_bound(const Graph& g, const Rational& upsilon, const SplitOptions& options) {
  if (upsilon < Rational(0)) throw std::invalid_argument("lower bound to verify must be nonnegative");
  VerifyResult out;
  if (upsilon == Rational(0)) {
    out.valid = true;  // connected graphs have h > 0
    out.report.method = "verify";
    return out;
  }
  SplitAndBound driver(g, options, upsilon);
  out.report = driver.run();
  out.report.method = "verify";
  if (driver.refuted()) {
    out.valid = false;
    out.certificate = driver.witness();
  } else {
    out.decided = out.report.status == SolveStatus::kSolved;
    out.valid = out.decided;
  }
  return out;
}

} // namespace cheeger
