#include <gtest/gtest.h>

#include "cheeger/generators.hpp"
#include "cheeger/oracle.hpp"
#include "cheeger/split_bound.hpp"
#include "support/suite.hpp"

using namespace cheeger;

namespace {

const KRow& row(const BoundsTable& table, int k) { return table.rows[static_cast<std::size_t>(k - 1)]; }

bool eliminated(KStatus s) {
  return s == KStatus::kEliminatedPre || s == KStatus::kEliminatedRoot || s == KStatus::kEliminatedUpdate ||
         s == KStatus::kBoundStop;
}

} // namespace

TEST(PreEliminate, CompleteGraph) {
  auto table = pre_eliminate(complete_graph(4));
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(row(table, 1).lower, Rational(3));
  EXPECT_EQ(row(table, 2).lower, Rational(2));
  EXPECT_EQ(table.best, Rational(2));
  EXPECT_EQ(table.candidates(), 0);
  for (const auto& r : table.rows) EXPECT_EQ(r.status, KStatus::kEliminatedPre);
}

TEST(PreEliminate, SixCycle) {
  auto table = pre_eliminate(cycle_graph(6));
  EXPECT_EQ(table.best, Rational(2, 3));
  EXPECT_EQ(row(table, 1).status, KStatus::kEliminatedPre);
  EXPECT_GE(row(table, 1).lower, Rational(2, 3));
  for (const auto& r : table.rows) EXPECT_LE(r.lower, r.upper);
}

TEST(PreEliminate, StarHasTightBounds) {
  auto table = pre_eliminate(star_graph(5));
  ASSERT_EQ(table.rows.size(), 3u);
  for (const auto& r : table.rows) {
    EXPECT_EQ(r.lower, Rational(1)) << r.k;
    EXPECT_EQ(r.upper, Rational(1)) << r.k;
  }
}

TEST(SplitAndBound, Examples) {
  auto c6 = split_and_bound(cycle_graph(6));
  EXPECT_EQ(c6.status, SolveStatus::kSolved);
  EXPECT_EQ(c6.value, Rational(2, 3));
  EXPECT_EQ(c6.witness.size(), 3);
  EXPECT_EQ(cut_value(cycle_graph(6), c6.witness), 2);

  auto q4 = split_and_bound(hypercube_graph(4));
  EXPECT_EQ(q4.value, Rational(1));
  EXPECT_EQ(Rational(cut_value(hypercube_graph(4), q4.witness), q4.witness.size()), Rational(1));
}

TEST(SplitAndBound, MatchesOracleOnRandomGraphs) {
  const double ps[] = {0.2, 0.4, 0.6};
  for (int i = 0; i < 20; ++i) {
    int n = 6 + i % 11;
    auto g = gnp_graph(n, ps[i % 3], 1000 + static_cast<std::uint64_t>(i));
    auto report = split_and_bound(g);
    auto exact = brute_force_h(g);
    ASSERT_EQ(report.status, SolveStatus::kSolved) << i;
    EXPECT_EQ(report.value, exact.value) << "graph " << i;
    EXPECT_EQ(Rational(cut_value(g, report.witness), report.witness.size()), report.value);
    EXPECT_TRUE(in_feasible_range(g, report.witness));
  }
}

TEST(SplitAndBound, EliminationIsSound) {
  for (const auto& [name, g] : test_support::small_suite()) {
    auto report = split_and_bound(g);
    ASSERT_EQ(report.status, SolveStatus::kSolved) << name;
    EXPECT_EQ(report.value, brute_force_h(g).value) << name;
    for (const auto& r : report.table) {
      Rational hk(brute_force_bisection(g, r.k).cut, r.k);
      EXPECT_LE(r.lower, hk) << name << " k=" << r.k;
      EXPECT_GE(r.upper, hk) << name << " k=" << r.k;
      if (eliminated(r.status)) {
        EXPECT_GE(hk, report.value) << name << " k=" << r.k;
        EXPECT_GE(hk, r.threshold) << name << " k=" << r.k;
      }
    }
  }
}

TEST(SplitAndBound, OrderDoesNotChangeTheAnswer) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto g = gnp_graph(12, 0.3, 60 + seed);
    SplitOptions forward, backward, shuffled;
    backward.order = CandidateOrder::kDescendingSize;
    shuffled.order = CandidateOrder::kShuffled;
    shuffled.order_seed = seed;
    // Skip the heuristic rerun so that real work is left for the exact phase.
    for (auto* o : {&forward, &backward, &shuffled}) o->rerun_restarts = 0;
    auto a = split_and_bound(g, forward), b = split_and_bound(g, backward), c = split_and_bound(g, shuffled);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.value, c.value);
  }
}

TEST(SplitAndBound, ExactPhaseRecoversFromPoorHeuristic) {
  // A single annealing step at a tiny temperature leaves poor upper bounds.
  SplitOptions weak;
  weak.sa.initial_temperature = 1e-9;
  weak.sa.idle_cycles = 1;
  weak.rerun_restarts = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = gnp_graph(14, 0.25, 90 + seed);
    EXPECT_EQ(split_and_bound(g, weak).value, brute_force_h(g).value);
  }
}

TEST(VerifyLowerBound, Examples) {
  auto c6 = cycle_graph(6);
  EXPECT_TRUE(verify_lower_bound(c6, Rational(2, 3)).valid);
  auto refuted = verify_lower_bound(c6, Rational(7, 10));
  EXPECT_FALSE(refuted.valid);
  ASSERT_TRUE(refuted.certificate.has_value());
  EXPECT_LT(Rational(cut_value(c6, *refuted.certificate), refuted.certificate->size()), Rational(7, 10));
  EXPECT_TRUE(verify_lower_bound(c6, Rational(0)).valid);
  EXPECT_THROW(verify_lower_bound(c6, Rational(-1)), std::invalid_argument);
}

TEST(VerifyLowerBound, AroundTheOptimum) {
  for (const auto& [name, g] : test_support::small_suite()) {
    auto h = brute_force_h(g).value;
    EXPECT_TRUE(verify_lower_bound(g, h).valid) << name;
    EXPECT_TRUE(verify_lower_bound(g, h - Rational(1, 100)).valid) << name;
    auto above = verify_lower_bound(g, h + Rational(1, 100));
    EXPECT_FALSE(above.valid) << name;
    ASSERT_TRUE(above.certificate.has_value()) << name;
    EXPECT_LT(Rational(cut_value(g, *above.certificate), above.certificate->size()), h + Rational(1, 100)) << name;
  }
}

TEST(VerifyLowerBound, WeakHeuristicStillFindsCertificate) {
  SplitOptions weak;
  weak.sa.initial_temperature = 1e-9;
  weak.sa.idle_cycles = 1;
  weak.rerun_restarts = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = gnp_graph(13, 0.3, 150 + seed);
    auto h = brute_force_h(g).value;
    EXPECT_FALSE(verify_lower_bound(g, h + Rational(1, 100), weak).valid);
    EXPECT_TRUE(verify_lower_bound(g, h, weak).valid);
  }
}

TEST(SplitAndBound, NodeLimitBracketsTheOptimum) {
  // Long cycles with a weak heuristic leave sizes the root cannot close.
  SplitOptions options;
  options.sa.initial_temperature = 1e-9;
  options.sa.idle_cycles = 1;
  options.rerun_restarts = 0;
  options.maxcut.node_limit = 1;
  int limited = 0;
  for (int n : {20, 30}) {
    auto g = cycle_graph(n);
    const Rational h(2, n / 2);
    auto report = split_and_bound(g, options);
    EXPECT_LE(report.lower_bound, h);
    EXPECT_GE(report.value, h);
    EXPECT_EQ(Rational(cut_value(g, report.witness), report.witness.size()), report.value);
    for (const auto& r : report.table) {
      const Rational hk(2, r.k);
      if (r.status == KStatus::kLimit) EXPECT_LE(r.lower, hk) << "k = " << r.k;
    }
    limited += report.status == SolveStatus::kLimit;
  }
  EXPECT_EQ(limited, 2);
}
