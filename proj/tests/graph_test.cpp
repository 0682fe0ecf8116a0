#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "cheeger/generators.hpp"
#include "cheeger/graph.hpp"
#include "cheeger/graph_io.hpp"
#include "cheeger/oracle.hpp"
#include "cheeger/rational.hpp"

using namespace cheeger;

namespace {

Graph parse(const std::string& text, GraphFormat format = GraphFormat::kEdgeList) {
  std::istringstream in(text);
  return load_graph(in, format);
}

VertexSubset subset(int n, std::initializer_list<Vertex> vs) {
  std::vector<Vertex> v(vs);
  return VertexSubset(n, v);
}

} // namespace

TEST(Rational, NormalisesAndCompares) {
  Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_LT(Rational(2, 3), Rational(7, 10));
  EXPECT_EQ(Rational(2, 3) + Rational(1, 3), Rational(1));
  EXPECT_EQ(Rational(7, 3).ceil(), 3);
  EXPECT_EQ(Rational(6, 3).ceil(), 2);
  EXPECT_EQ(Rational(-7, 3).floor(), -3);
  EXPECT_EQ(Rational::parse("0.7"), Rational(7, 10));
  EXPECT_EQ(Rational::parse("2/3"), Rational(2, 3));
  EXPECT_EQ(Rational::parse("4"), Rational(4));
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(LoadGraph, CompleteGraphEdgeList) {
  auto g = parse("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
  EXPECT_EQ(g.num_vertices(), 4);
  EXPECT_EQ(g.num_edges(), 6);
}

TEST(LoadGraph, PathWithCommentsAndCrlf) {
  auto g = parse("# a path\r\n3 2\r\n1 2\r\n2 3\r\n");
  EXPECT_EQ(g.num_edges(), 2);
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_FALSE(g.adjacent(0, 2));
}

TEST(LoadGraph, Dimacs) {
  auto g = parse("c cycle\np edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n", GraphFormat::kDimacs);
  EXPECT_EQ(g.num_edges(), 4);
  EXPECT_EQ(g.degree(3), 2);
}

TEST(LoadGraph, Errors) {
  EXPECT_THROW(parse("4 2\n1 2\n3 4\n"), GraphError);
  EXPECT_THROW(parse("3 3\n1 2\n2 3\n3 3\n"), GraphError);
  EXPECT_THROW(parse("3 3\n1 2\n2 3\n2 1\n"), GraphError);
  EXPECT_THROW(parse("2 1\n1 2\n"), GraphError);
  try {
    parse("3 2\n1 2\n2 x\n");
    FAIL() << "expected parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse("3 3\n1 2\n2 3\n"), ParseError);
  EXPECT_THROW(parse("3 2\n1 2\n2 4\n"), ParseError);
}

TEST(CutValue, Examples) {
  EXPECT_EQ(cut_value(complete_graph(4), subset(4, {0, 1})), 4);
  EXPECT_EQ(cut_value(cycle_graph(6), subset(6, {0, 1, 2})), 2);
  EXPECT_EQ(cut_value(path_graph(4), subset(4, {0})), 1);
  EXPECT_THROW(cut_value(path_graph(4), VertexSubset(4)), GraphError);
  EXPECT_THROW(cut_value(path_graph(4), subset(4, {0, 1, 2, 3})), GraphError);
}

TEST(Laplacian, PathAndRowSums) {
  Eigen::MatrixXd expected(3, 3);
  expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  EXPECT_EQ(path_graph(3).laplacian(), expected);
  auto g = gnp_graph(12, 0.4, 3);
  Eigen::VectorXd rows = g.laplacian() * Eigen::VectorXd::Ones(12);
  EXPECT_LT(rows.norm(), 1e-12);
}

TEST(Laplacian, CycleSpectrum) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cycle_graph(4).laplacian());
  Eigen::Vector4d expected(0, 2, 2, 4);
  EXPECT_LT((eig.eigenvalues() - expected).norm(), 1e-12);
}

TEST(Generators, Families) {
  EXPECT_EQ(complete_graph(4).num_edges(), 6);
  auto q3 = hypercube_graph(3);
  EXPECT_EQ(q3.num_vertices(), 8);
  EXPECT_EQ(q3.num_edges(), 12);
  EXPECT_EQ(q3.min_degree(), 3);
  EXPECT_EQ(q3.max_degree(), 3);
  auto a = gnp_graph(10, 0.4, 1);
  auto b = gnp_graph(10, 0.4, 1);
  EXPECT_EQ(a.edges(), b.edges());
  EXPECT_THROW(gnp_graph(10, 0.0, 1, 5), GraphError);
}

TEST(BruteForce, Expansion) {
  EXPECT_EQ(brute_force_h(complete_graph(4)).value, Rational(2));
  auto c6 = brute_force_h(cycle_graph(6));
  EXPECT_EQ(c6.value, Rational(2, 3));
  EXPECT_EQ(c6.witness.size(), 3);
  EXPECT_EQ(brute_force_h(star_graph(5)).value, Rational(1));
}

TEST(BruteForce, TieBreakIsLexicographic) {
  // Every 3-arc of C6 is optimal; the smallest membership vector is {3,4,5}.
  auto c6 = brute_force_h(cycle_graph(6));
  EXPECT_EQ(c6.witness, subset(6, {3, 4, 5}));
}

TEST(BruteForce, Bisection) {
  EXPECT_EQ(brute_force_bisection(complete_graph(5), 2).cut, 6);
  EXPECT_EQ(brute_force_bisection(cycle_graph(6), 3).cut, 2);
  EXPECT_EQ(brute_force_bisection(hypercube_graph(3), 4).cut, 4);
  EXPECT_THROW(brute_force_bisection(cycle_graph(6), 4), GraphError);
  EXPECT_THROW(brute_force_bisection(cycle_graph(6), 0), GraphError);
}

TEST(BruteForce, Mincut) {
  EXPECT_EQ(brute_force_mincut(cycle_graph(6)), 2);
  EXPECT_EQ(brute_force_mincut(path_graph(4)), 1);
  EXPECT_EQ(brute_force_mincut(complete_graph(4)), 3);
  EXPECT_THROW(brute_force_mincut(cycle_graph(25)), GraphError);
}

TEST(GraphProperties, CutMatchesLaplacianAndIsSymmetric) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = gnp_graph(9 + trial % 5, 0.35, 100 + trial);
    auto lap = g.laplacian();
    const int n = g.num_vertices();
    std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << n) - 2);
    for (int rep = 0; rep < 10; ++rep) {
      auto s = VertexSubset::from_mask(n, pick(rng));
      long long cut = cut_value(g, s);
      EXPECT_DOUBLE_EQ(static_cast<double>(cut), quadratic_form(lap, s));
      EXPECT_EQ(cut, cut_value(g, s.complement()));
    }
  }
}

TEST(GraphProperties, ExpansionIsMinOverSizesAndRelabelInvariant) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = gnp_graph(8 + trial % 4, 0.4, 40 + trial);
    auto h = brute_force_h(g).value;
    Rational best(1000000);
    for (int k = 1; k <= g.num_vertices() / 2; ++k)
      best = std::min(best, Rational(brute_force_bisection(g, k).cut, k));
    EXPECT_EQ(h, best);

    std::vector<Vertex> perm(static_cast<std::size_t>(g.num_vertices()));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(brute_force_h(g.relabeled(perm)).value, h);
  }
}
