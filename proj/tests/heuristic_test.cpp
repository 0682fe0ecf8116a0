#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "cheeger/generators.hpp"
#include "cheeger/heuristic.hpp"
#include "cheeger/oracle.hpp"
#include "support/suite.hpp"

using namespace cheeger;

TEST(SaBisection, Examples) {
  SaParams params;
  EXPECT_EQ(sa_bisection(complete_graph(5), 2, params).cut, 6);
  EXPECT_EQ(sa_bisection(hypercube_graph(3), 4, params).cut, 4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    params.seed = seed;
    auto best = sa_bisection(cycle_graph(6), 3, params);
    EXPECT_EQ(best.cut, 2) << "seed " << seed;
    EXPECT_EQ(best.subset.size(), 3);
  }
}

TEST(SaBisection, FeasibleAndNeverBelowOptimum) {
  for (const auto& [name, g] : test_support::small_suite()) {
    for (int k = 1; k <= g.num_vertices() / 2; ++k) {
      auto found = sa_bisection(g, k, SaParams{});
      EXPECT_EQ(found.subset.size(), k) << name;
      EXPECT_EQ(found.cut, cut_value(g, found.subset)) << name;
      EXPECT_GE(found.cut, brute_force_bisection(g, k).cut) << name << " k=" << k;
    }
  }
}

TEST(SaBisection, DeterministicForFixedSeed) {
  auto g = gnp_graph(14, 0.3, 5);
  SaParams params;
  params.seed = 99;
  auto a = sa_bisection(g, 5, params);
  auto b = sa_bisection(g, 5, params);
  EXPECT_EQ(a.cut, b.cut);
  EXPECT_EQ(a.subset, b.subset);
}

TEST(SaBisection, RejectsBadInput) {
  EXPECT_THROW(sa_bisection(cycle_graph(6), 0, SaParams{}), GraphError);
  EXPECT_THROW(sa_bisection(cycle_graph(6), 4, SaParams{}), GraphError);
  SaParams bad;
  bad.cooling = 1.0;
  EXPECT_THROW(sa_bisection(cycle_graph(6), 2, bad), std::invalid_argument);
}

TEST(LocalSearchSwap, Examples) {
  auto c6 = cycle_graph(6);
  std::vector<Vertex> alternating{0, 2, 4};
  auto improved = local_search_swap(c6, VertexSubset(6, alternating));
  EXPECT_EQ(improved.cut, 2);
  EXPECT_EQ(improved.subset.size(), 3);

  std::vector<Vertex> arc{0, 1, 2};
  auto fixed = local_search_swap(c6, VertexSubset(6, arc));
  EXPECT_EQ(fixed.subset, VertexSubset(6, arc));

  std::vector<Vertex> pair{1, 3};
  auto k4 = local_search_swap(complete_graph(4), VertexSubset(4, pair));
  EXPECT_EQ(k4.cut, 4);
  EXPECT_EQ(k4.subset, VertexSubset(4, pair));
}

TEST(LocalSearchSwap, NeverIncreasesCut) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = gnp_graph(12, 0.35, 300 + static_cast<std::uint64_t>(trial));
    int k = 1 + trial % 6;
    std::vector<Vertex> all(12);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    VertexSubset start(12, std::span<const Vertex>(all.data(), static_cast<std::size_t>(k)));
    auto result = local_search_swap(g, start);
    EXPECT_EQ(result.subset.size(), k);
    EXPECT_LE(result.cut, cut_value(g, start));
    EXPECT_EQ(result.cut, cut_value(g, result.subset));
  }
}

TEST(HeuristicUpperBounds, Examples) {
  auto k4 = heuristic_upper_bounds(complete_graph(4));
  ASSERT_EQ(k4.per_k.size(), 2u);
  EXPECT_EQ(k4.per_k[0], Rational(3));
  EXPECT_EQ(k4.per_k[1], Rational(2));
  EXPECT_EQ(k4.best, Rational(2));
  EXPECT_EQ(heuristic_upper_bounds(cycle_graph(6)).best, Rational(2, 3));
  auto p5 = heuristic_upper_bounds(path_graph(5));
  EXPECT_EQ(p5.best, Rational(1, 2));
  EXPECT_EQ(cut_value(path_graph(5), p5.best_witness), 1);
}

TEST(HeuristicUpperBounds, ValidOnSuite) {
  for (const auto& [name, g] : test_support::small_suite()) {
    auto ub = heuristic_upper_bounds(g);
    Rational smallest = ub.per_k.front();
    for (int k = 1; k <= g.num_vertices() / 2; ++k) {
      Rational exact(brute_force_bisection(g, k).cut, k);
      EXPECT_GE(ub.per_k[static_cast<std::size_t>(k - 1)], exact) << name << " k=" << k;
      EXPECT_EQ(ub.witnesses[static_cast<std::size_t>(k - 1)].size(), k);
      smallest = std::min(smallest, ub.per_k[static_cast<std::size_t>(k - 1)]);
    }
    EXPECT_EQ(ub.best, smallest);
    EXPECT_EQ(Rational(cut_value(g, ub.best_witness), ub.best_witness.size()), ub.best);
  }
}
