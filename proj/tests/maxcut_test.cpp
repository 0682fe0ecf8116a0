#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "cheeger/generators.hpp"
#include "cheeger/maxcut.hpp"
#include "cheeger/oracle.hpp"
#include "cheeger/transforms.hpp"

using namespace cheeger;

namespace {

MaxCutInstance unit_instance(const Graph& g) {
  MaxCutInstance inst(g.num_vertices());
  for (auto [u, v] : g.edges()) inst.set_weight(u, v, 1);
  return inst;
}

MaxCutInstance random_instance(int size, int lo, int hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> w(lo, hi);
  MaxCutInstance inst(size);
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) inst.set_weight(i, j, w(rng));
  return inst;
}

} // namespace

TEST(MaxCutBound, SingleEdge) {
  MaxCutInstance edge(2);
  edge.set_weight(0, 1, 1);
  EXPECT_NEAR(maxcut_sdp_bound(edge, 0).upper, 1.0, 1e-6);
}

TEST(MaxCutBound, FiveCycle) {
  auto c5 = unit_instance(cycle_graph(5));
  auto base = maxcut_sdp_bound(c5, 0);
  EXPECT_NEAR(base.upper, 2.5 * (1.0 + std::cos(M_PI / 5.0)), 1e-4);
  EXPECT_GE(base.upper, 4.0);
  auto cut = maxcut_sdp_bound(c5, 30);
  EXPECT_GE(cut.upper, 4.0 - 1e-9);
  EXPECT_LE(cut.upper, 4.1);
}

TEST(MaxCutBound, CompleteGraphRoundsToOptimum) {
  auto bound = maxcut_sdp_bound(unit_instance(complete_graph(4)), 0);
  EXPECT_GE(bound.upper, 4.0 - 1e-9);
  EXPECT_EQ(integer_bound(bound.upper, unit_instance(complete_graph(4))), 4);
}

TEST(MaxCutBound, NeverBelowOptimumOnRandomInstances) {
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = random_instance(4 + trial % 9, -10, 10, 500 + static_cast<std::uint64_t>(trial));
    auto exact = brute_force_maxcut(inst).value;
    for (int rounds : {0, 10}) {
      auto bound = maxcut_sdp_bound(inst, rounds);
      EXPECT_GE(integer_bound(bound.upper, inst), static_cast<long long>(exact)) << trial;
    }
  }
}

TEST(GwRound, RankOneRecoversCut) {
  std::vector<std::uint8_t> side{0, 1, 1, 0, 1};
  Eigen::VectorXd s(5);
  for (int i = 0; i < 5; ++i) s(i) = side[static_cast<std::size_t>(i)] ? -1.0 : 1.0;
  auto inst = random_instance(5, -3, 7, 1);
  auto rounded = gw_round(s * s.transpose(), inst, 10, 3);
  EXPECT_EQ(rounded.side, side);
  EXPECT_EQ(rounded.value, static_cast<long long>(inst.cut_weight(side)));
}

TEST(GwRound, FiveCycleFindsOptimum) {
  auto c5 = unit_instance(cycle_graph(5));
  auto bound = maxcut_sdp_bound(c5, 0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) EXPECT_EQ(gw_round(bound.x, c5, 100, seed).value, 4);
}

TEST(GwRound, NeverExceedsOptimum) {
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = random_instance(9, -5, 10, 900 + static_cast<std::uint64_t>(trial));
    auto exact = brute_force_maxcut(inst).value;
    auto rounded = gw_round(Eigen::MatrixXd::Identity(9, 9), inst, 20, static_cast<std::uint64_t>(trial));
    EXPECT_LE(rounded.value, static_cast<long long>(exact));
    EXPECT_TRUE(inst.cut_weight(rounded.side) == rounded.value);
  }
}

TEST(Contraction, ChildrenPartitionTheParent) {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    auto inst = random_instance(8, -6, 9, seed);
    auto exact = brute_force_maxcut(inst).value;
    std::vector<std::int8_t> assignment(8, -1);
    assignment[0] = 0;
    Wide best_child = std::numeric_limits<long long>::min();
    for (std::int8_t side : {0, 1}) {
      assignment[3] = side;
      auto child = contract(inst, assignment);
      EXPECT_EQ(child.reduced.size, 7);
      best_child = std::max(best_child, child.constant + brute_force_maxcut(child.reduced).value);
      // Fixing a second vertex keeps the identity.
      Wide best_grandchild = std::numeric_limits<long long>::min();
      for (std::int8_t second : {0, 1}) {
        auto deeper = assignment;
        deeper[6] = second;
        auto grandchild = contract(inst, deeper);
        best_grandchild = std::max(best_grandchild, grandchild.constant + brute_force_maxcut(grandchild.reduced).value);
      }
      EXPECT_TRUE(best_grandchild == child.constant + brute_force_maxcut(child.reduced).value);
    }
    EXPECT_TRUE(best_child == exact);
  }
}

TEST(Contraction, ChildBoundDoesNotExceedParent) {
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    auto inst = random_instance(10, -4, 8, seed);
    double parent = maxcut_sdp_bound(inst, 0).upper;
    std::vector<std::int8_t> assignment(10, -1);
    assignment[0] = 0;
    for (std::int8_t side : {0, 1}) {
      assignment[5] = side;
      auto child = contract(inst, assignment);
      double bound = static_cast<double>(child.constant) + maxcut_sdp_bound(child.reduced, 0).upper;
      EXPECT_LE(bound, parent + 1e-5 * (1.0 + std::abs(parent)));
    }
  }
}

TEST(SolveMaxCut, Examples) {
  auto p3 = bisection_to_maxcut(path_graph(3), 1, 1);
  auto result = solve_maxcut(p3);
  EXPECT_EQ(result.stats.status, BnbStatus::kOptimal);
  EXPECT_EQ(result.value, 19);
  int anchor_side = 0;
  for (auto bit : result.side) anchor_side += bit == result.side[0];
  EXPECT_EQ(anchor_side, 2);

  auto c5 = unit_instance(cycle_graph(5));
  EXPECT_EQ(solve_maxcut(c5).value, 4);

  MaxCutOptions early;
  early.initial_lb = 4;
  auto stopped = solve_maxcut(c5, early);
  EXPECT_EQ(stopped.stats.status, BnbStatus::kBoundStop);
  EXPECT_TRUE(stopped.side.empty());
  EXPECT_EQ(stopped.value, 4);

  early.initial_lb = 3;
  auto improved = solve_maxcut(c5, early);
  EXPECT_EQ(improved.stats.status, BnbStatus::kOptimal);
  EXPECT_EQ(improved.value, 4);
}

TEST(SolveMaxCut, MatchesEnumerationOnRandomInstances) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    int size = 3 + static_cast<int>(rng() % 12);
    auto inst = random_instance(size, -10, 10, rng());
    auto exact = brute_force_maxcut(inst);
    MaxCutOptions options;
    options.enumerate_below = trial % 2 == 0 ? 0 : 6;  // half the runs branch all the way down
    auto result = solve_maxcut(inst, options);
    ASSERT_EQ(result.stats.status, BnbStatus::kOptimal) << trial;
    EXPECT_EQ(result.value, static_cast<long long>(exact.value)) << trial;
    EXPECT_TRUE(inst.cut_weight(result.side) == result.value) << trial;
  }
}

TEST(SolveMaxCut, BisectionAndDinkelbachInstances) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto g = gnp_graph(10, 0.4, 40 + seed);
    for (int k = 1; k <= 5; ++k) {
      auto exact = brute_force_bisection(g, k);
      auto inst = bisection_to_maxcut(g, k, exact.cut + 3);
      auto result = solve_maxcut(inst);
      ASSERT_EQ(result.stats.status, BnbStatus::kOptimal);
      EXPECT_TRUE(inst.offset - result.value == exact.cut);
      EXPECT_EQ(decode_cut(inst, result.side).size(), k);
    }
    auto inst = dinkelbach_to_maxcut(g, 1, 2);
    auto result = solve_maxcut(inst);
    EXPECT_TRUE(inst.offset - result.value == inst.offset - brute_force_maxcut(inst).value);
  }
}

TEST(SolveMaxCut, DeterministicAndWorkerIndependent) {
  auto inst = dinkelbach_to_maxcut(gnp_graph(12, 0.35, 8), 2, 3);
  MaxCutOptions options;
  options.enumerate_below = 3;
  auto a = solve_maxcut(inst, options);
  auto b = solve_maxcut(inst, options);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.side, b.side);
  EXPECT_EQ(a.stats.nodes, b.stats.nodes);
  options.workers = 3;
  auto c = solve_maxcut(inst, options);
  EXPECT_EQ(c.stats.status, BnbStatus::kOptimal);
  EXPECT_EQ(c.value, a.value);
}

TEST(SolveMaxCut, NodeLimitReportsLimit) {
  auto inst = random_instance(14, -10, 10, 3);
  MaxCutOptions options;
  options.node_limit = 1;
  options.enumerate_below = 0;
  options.cut_rounds_root = 0;
  auto result = solve_maxcut(inst, options);
  if (result.stats.nodes < 2 && result.stats.status == BnbStatus::kOptimal) GTEST_SKIP() << "solved at the root";
  EXPECT_EQ(result.stats.status, BnbStatus::kLimit);
  EXPECT_GE(result.stats.upper_bound, result.value);
}

TEST(SolveMaxCut, TraceHasOneRowPerNode) {
  std::ostringstream trace;
  MaxCutOptions options;
  options.trace = &trace;
  options.enumerate_below = 0;
  auto result = solve_maxcut(unit_instance(cycle_graph(7)), options);
  std::istringstream lines(trace.str());
  std::string line;
  long long rows = -1;  // header
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, result.stats.nodes);
}

TEST(SolveMaxCut, RejectsHugeWeights) {
  MaxCutInstance inst(3);
  inst.set_weight(0, 1, Wide(1) << 70);
  EXPECT_THROW(solve_maxcut(inst), std::overflow_error);
}
