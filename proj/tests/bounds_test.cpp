#include <cmath>

#include <gtest/gtest.h>

#include "cheeger/bounds.hpp"
#include "cheeger/generators.hpp"
#include "cheeger/oracle.hpp"
#include "support/suite.hpp"

using namespace cheeger;

namespace {

double lambda2_over_two(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.laplacian());
  return eig.eigenvalues()(1) / 2.0;
}

} // namespace

TEST(SpectralBound, KnownValues) {
  EXPECT_NEAR(spectral_bound(complete_graph(4)), 2.0, 1e-12);
  EXPECT_NEAR(spectral_bound(cycle_graph(6)), 0.5, 1e-12);
}

TEST(GlobalSdpBound, EqualsHalfAlgebraicConnectivity) {
  EXPECT_NEAR(global_sdp_bound(complete_graph(4), false).value, 2.0, 1e-5);
  EXPECT_NEAR(global_sdp_bound(cycle_graph(6), false).value, 0.5, 1e-5);
  for (const auto& [name, g] : test_support::small_suite()) {
    auto bound = global_sdp_bound(g, false);
    EXPECT_EQ(bound.status, sdp::Status::kOptimal) << name;
    EXPECT_NEAR(bound.value, lambda2_over_two(g), 1e-5) << name;
  }
}

TEST(GlobalSdpBound, CutsNeverWeakenAndStayValid) {
  for (const auto& g : {cycle_graph(7), path_graph(6), test_support::barbell_graph(), gnp_graph(9, 0.4, 21)}) {
    double plain = global_sdp_bound(g, false).value;
    auto cut = global_sdp_bound(g, true);
    EXPECT_GE(cut.value, plain - 1e-6);
    EXPECT_LE(cut.value, brute_force_h(g).value.to_double() + 1e-6);
  }
}

TEST(CheapBisectionBound, Examples) {
  auto k5 = cheap_bisection_bound(complete_graph(5), 2);
  EXPECT_EQ(k5.lower, Rational(3));
  EXPECT_NEAR(k5.sdp_value, 6.0, 1e-5);

  auto c6_3 = cheap_bisection_bound(cycle_graph(6), 3);
  EXPECT_EQ(static_cast<long long>(std::ceil(c6_3.sdp_value - kCeilingGuard)), 2);

  // Writing X = xx^T + D forces D e = 0 and tr D = 5/6, so the optimum is
  // lambda2 * 5/6 = 5/6 and the rounded bound is 1, not the true h_1 = 2.
  // k = 1 is still eliminated for C6 because 1 > h(C6) = 2/3.
  auto c6_1 = cheap_bisection_bound(cycle_graph(6), 1);
  EXPECT_NEAR(c6_1.sdp_value, 5.0 / 6.0, 1e-5);
  EXPECT_EQ(c6_1.lower, Rational(1));

  auto p4 = cheap_bisection_bound(path_graph(4), 2);
  EXPECT_LE(p4.lower, Rational(1, 2));
  EXPECT_FALSE(p4.fallback);

  EXPECT_THROW(cheap_bisection_bound(cycle_graph(6), 4), GraphError);
}

TEST(CheapBisectionBound, MatchesUnreducedFormulation) {
  // The projected problem must reproduce the original SDP value.
  for (const auto& g : {cycle_graph(7), test_support::petersen_graph(), gnp_graph(8, 0.5, 3)}) {
    for (int k = 1; k <= g.num_vertices() / 2; ++k) {
      auto reduced = cheap_bisection_bound(g, k);
      auto full = sdp::solve(bisection_sdp(g, k));
      EXPECT_NEAR(reduced.sdp_value, full.primal_objective, 1e-3 * (1.0 + std::abs(full.primal_objective)));
    }
  }
}

TEST(CheapBisectionBound, NeverExceedsBisection) {
  for (const auto& [name, g] : test_support::small_suite()) {
    for (int k = 1; k <= g.num_vertices() / 2; ++k) {
      auto bound = cheap_bisection_bound(g, k);
      auto exact = brute_force_bisection(g, k);
      EXPECT_LE(bound.lower, Rational(exact.cut, k)) << name << " k=" << k;
      EXPECT_FALSE(bound.fallback) << name << " k=" << k;
    }
  }
}
