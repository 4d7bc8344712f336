#include <gtest/gtest.h>

#include "lcpg/generators.hpp"
#include "lcpg/oracle.hpp"

using namespace lcpg;
using namespace lcpg::oracle;

namespace {

VertexMask set_of(std::initializer_list<std::size_t> one_based) {
  VertexMask s = 0;
  for (auto v : one_based) s |= bit(v - 1);
  return s;
}

}  // namespace

TEST(Oracle, SetPredicatesOnPath) {
  const Graph p3 = path_graph(3);
  EXPECT_TRUE(is_independent(p3, set_of({1, 3})));
  EXPECT_TRUE(is_maximal_independent(p3, set_of({1, 3})));
  EXPECT_TRUE(is_dominating(p3, set_of({1, 3})));
  EXPECT_TRUE(is_independent(p3, set_of({1})));
  EXPECT_FALSE(is_maximal_independent(p3, set_of({1})));
  EXPECT_FALSE(is_dominating(p3, set_of({1})));
  EXPECT_FALSE(is_independent(p3, set_of({1, 2})));
  EXPECT_TRUE(is_maximal_independent(cycle_graph(5), set_of({1, 3})));
}

TEST(Oracle, MaximalSets) {
  auto sets = maximal_independent_sets(path_graph(3));
  std::sort(sets.begin(), sets.end());
  EXPECT_EQ(sets, (std::vector<VertexMask>{set_of({2}), set_of({1, 3})}));

  const auto c8 = maximal_independent_sets(cycle_graph(8));
  EXPECT_NE(std::find(c8.begin(), c8.end(), set_of({1, 3, 6})), c8.end());
  EXPECT_TRUE(std::any_of(c8.begin(), c8.end(), [](VertexMask s) { return popcount(s) == 4; }));

  auto k4 = maximal_independent_sets(complete_graph(4));
  std::sort(k4.begin(), k4.end());
  EXPECT_EQ(k4, (std::vector<VertexMask>{1, 2, 4, 8}));
}

TEST(Oracle, AlphaBeta) {
  EXPECT_EQ(alpha_brute(cycle_graph(8)), 4);
  EXPECT_EQ(beta_brute(cycle_graph(8)), 3);
  EXPECT_EQ(alpha_brute(petersen_graph()), 4);
  EXPECT_EQ(beta_brute(petersen_graph()), 3);
  EXPECT_EQ(alpha_brute(complete_graph(1)), 1);
  VertexWeights w{{3, 1, 3}};
  EXPECT_DOUBLE_EQ(alpha_weighted_brute(path_graph(3), w), 6.0);
}

TEST(Oracle, WellCovered) {
  EXPECT_TRUE(is_well_covered(cycle_graph(5)));
  EXPECT_FALSE(is_well_covered(path_graph(3)));
  EXPECT_TRUE(is_well_covered(path_graph(4)));
  EXPECT_TRUE(is_very_well_covered(path_graph(4)));
  EXPECT_FALSE(is_very_well_covered(cycle_graph(5)));
}

TEST(Oracle, BronKerboschMatchesNaiveScan) {
  Rng rng(3);
  for (int k = 0; k < 150; ++k) {
    const auto n = 1 + static_cast<std::size_t>(rng.below(12));
    const Graph g = gen_erdos_renyi(n, rng.uniform01(), rng.next());
    auto fast = maximal_independent_sets(g);
    auto slow = maximal_independent_sets_naive(g);
    std::sort(fast.begin(), fast.end());
    std::sort(slow.begin(), slow.end());
    ASSERT_EQ(fast, slow);
  }
}

TEST(Oracle, WeightedAlphaTwoRoutes) {
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const auto n = 1 + static_cast<std::size_t>(rng.below(11));
    const Graph g = gen_erdos_renyi(n, rng.uniform01(), rng.next());
    const auto w = random_weights(n, rng);
    EXPECT_DOUBLE_EQ(alpha_weighted_brute(g, w), alpha_weighted_exhaustive(g, w));
  }
}

TEST(Oracle, StructuralProperties) {
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    const auto n = 1 + static_cast<std::size_t>(rng.below(10));
    const Graph g = gen_erdos_renyi(n, rng.uniform01(), rng.next());
    for (auto s : maximal_independent_sets(g)) ASSERT_TRUE(is_dominating(g, s));
    const int a = alpha_brute(g), b = beta_brute(g);
    EXPECT_GE(a, b);
    EXPECT_EQ(a == b, is_well_covered(g));
  }
}

TEST(Oracle, RegularBetaLowerBound) {
  for (const Graph& g : {cycle_graph(4), cycle_graph(5), cycle_graph(8), complete_graph(4), petersen_graph()}) {
    ASSERT_TRUE(g.is_regular());
    EXPECT_GE(beta_brute(g), static_cast<double>(g.size()) / (g.degree(0) + 1));
  }
}

TEST(Oracle, VeryWellCoveredForestsHaveHalfSizeSets) {
  Rng rng(9);
  int seen = 0;
  for (int k = 0; k < 400; ++k) {
    const auto n = 2 + static_cast<std::size_t>(rng.below(11));
    const Graph g = random_forest(n, rng);
    if (has_isolated_vertex(g) || !is_well_covered(g)) continue;
    ++seen;
    for (auto s : maximal_independent_sets(g)) EXPECT_EQ(2 * static_cast<std::size_t>(popcount(s)), n);
  }
  EXPECT_GT(seen, 0);
}

TEST(Oracle, SizeLimit) { EXPECT_THROW(alpha_brute(empty_graph(30)), LimitError); }
