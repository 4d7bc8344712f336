#include <gtest/gtest.h>

#include "lcpg/generators.hpp"
#include "lcpg/lcp.hpp"
#include "lcpg/lp.hpp"
#include "lcpg/oracle.hpp"
#include "lcpg/polytope.hpp"

using namespace lcpg;

namespace {

Eigen::VectorXd ones(std::size_t n) { return Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)); }

LinearProgram closed_neighborhood_lp(const Graph& g, RowType type) {
  const auto n = static_cast<Eigen::Index>(g.size());
  LinearProgram lp = LinearProgram::with_variables(n);
  lp.objective = ones(g.size());
  lp.sense = type == RowType::less_equal ? Sense::maximize : Sense::minimize;
  const Eigen::MatrixXd m = g.adjacency_matrix() + Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) lp.add_row(m.row(i).transpose(), type, 1.0);
  return lp;
}

std::vector<int> bits(VertexMask s, std::size_t n) {
  std::vector<int> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<int>((s >> i) & 1U);
  return x;
}

}  // namespace

TEST(Lp, ClosedNeighborhoodProgramsOnC8) {
  const auto up = lp_solve(closed_neighborhood_lp(cycle_graph(8), RowType::less_equal));
  ASSERT_TRUE(up.optimal());
  EXPECT_NEAR(up.value, 8.0 / 3.0, 1e-9);
  const auto down = lp_solve(closed_neighborhood_lp(cycle_graph(8), RowType::greater_equal));
  ASSERT_TRUE(down.optimal());
  EXPECT_NEAR(down.value, 8.0 / 3.0, 1e-9);
}

TEST(Lp, TrivialBound) {
  LinearProgram lp = LinearProgram::with_variables(1);
  lp.objective(0) = 1.0;
  lp.add_row(Eigen::VectorXd::Ones(1), RowType::less_equal, 1.0);
  const auto r = lp_solve(lp);
  ASSERT_TRUE(r.optimal());
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(Lp, InfeasibleAndUnbounded) {
  LinearProgram lp = LinearProgram::with_variables(1);
  lp.objective(0) = 1.0;
  lp.add_row(Eigen::VectorXd::Ones(1), RowType::greater_equal, 2.0);
  lp.add_row(Eigen::VectorXd::Ones(1), RowType::less_equal, 1.0);
  EXPECT_EQ(lp_solve(lp).status, LpStatus::infeasible);
  LinearProgram free = LinearProgram::with_variables(1);
  free.objective(0) = 1.0;
  free.upper(0) = std::numeric_limits<double>::infinity();
  EXPECT_EQ(lp_solve(free).status, LpStatus::unbounded);
}

TEST(Lp, StrongDualityOnRandomPrograms) {
  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    const auto n = 1 + static_cast<Eigen::Index>(rng.below(6));
    const auto m = 1 + static_cast<Eigen::Index>(rng.below(6));
    LinearProgram lp = LinearProgram::with_variables(n);
    for (Eigen::Index j = 0; j < n; ++j) lp.objective(j) = rng.uniform01() * 4 - 2;
    lp.sense = rng.bernoulli(0.5) ? Sense::maximize : Sense::minimize;
    for (Eigen::Index i = 0; i < m; ++i) {
      Eigen::VectorXd a(n);
      for (Eigen::Index j = 0; j < n; ++j) a(j) = std::round(rng.uniform01() * 6 - 3);
      lp.add_row(a, rng.bernoulli(0.5) ? RowType::less_equal : RowType::greater_equal, std::round(rng.uniform01() * 4 - 2));
    }
    const auto r = lp_solve(lp);
    if (!r.optimal()) continue;
    EXPECT_NEAR(r.value, r.dual_value, 1e-7 * (1.0 + std::abs(r.value)));
  }
}

TEST(Lp, DegenerateProgramTerminates) {
  // Many redundant tight rows at the optimum.
  LinearProgram lp = LinearProgram::with_variables(3);
  lp.objective << 1, 1, 1;
  for (int k = 0; k < 12; ++k) {
    Eigen::VectorXd a(3);
    a << 1 + k % 3, 1 + (k + 1) % 3, 1 + (k + 2) % 3;
    lp.add_row(a, RowType::less_equal, 6.0);
  }
  const auto r = lp_solve(lp);
  ASSERT_TRUE(r.optimal());
  EXPECT_NEAR(r.value, 3.0, 1e-9);
}

TEST(Polytope, FracShape) {
  const auto k2 = frac_polytope(complete_graph(2));
  EXPECT_EQ(k2.kind, "frac");
  Eigen::Vector2d corner(1, 0), mid(0.5, 0.5), bad(1, 1);
  EXPECT_TRUE(k2.contains(Eigen::Vector2d::Zero(), 1e-12));
  EXPECT_TRUE(k2.contains(corner, 1e-12));
  EXPECT_TRUE(k2.contains(mid, 1e-12));
  EXPECT_FALSE(k2.contains(bad, 1e-9));
  EXPECT_TRUE(frac_polytope(cycle_graph(5)).contains(Eigen::VectorXd::Constant(5, 0.5), 1e-12));
  const auto cube = frac_polytope(empty_graph(3));
  EXPECT_EQ(cube.F.rows(), 0);
  EXPECT_EQ(binary_points(cube).size(), 8u);
}

TEST(Polytope, StableSetsInsideFrac) {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    const Graph g = gen_erdos_renyi(1 + rng.below(9), rng.uniform01(), rng.next());
    const auto p = frac_polytope(g);
    for (VertexMask s = 0; s < bit(g.size()); ++s) {
      if (oracle::is_independent(g, s)) ASSERT_TRUE(contains_integral_point(p, bits(s, g.size())));
    }
  }
}

TEST(Polytope, MaxisLatticeIsMaximalSets) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * (n - 1) / 2)); ++code) {
      const Graph g = graph_from_code(n, code);
      auto pts = binary_points(maxis_polytope(g));
      auto lcp = integer_solutions(lcp_from_graph(g));
      auto mis = oracle::maximal_independent_sets(g);
      std::sort(pts.begin(), pts.end());
      std::sort(lcp.begin(), lcp.end());
      std::sort(mis.begin(), mis.end());
      ASSERT_EQ(pts, mis);
      ASSERT_EQ(lcp, mis);
    }
  }
}

TEST(Ilp, Examples) {
  EXPECT_EQ(alpha_via_ilp(cycle_graph(8)).value, 4);
  EXPECT_EQ(alpha_via_ilp(petersen_graph()).value, 4);
  EXPECT_EQ(alpha_via_ilp(complete_graph(1)).value, 1);
  EXPECT_EQ(beta_via_ilp(cycle_graph(8)).value, 3);
  EXPECT_EQ(beta_via_ilp(star_graph(4)).value, 1);
  EXPECT_EQ(beta_via_ilp(path_graph(4)).value, 2);
  const auto r = alpha_via_ilp(petersen_graph());
  EXPECT_GT(r.node_count, 0u);
  EXPECT_TRUE(contains_integral_point(maxis_polytope(petersen_graph()), r.incumbent));
}

TEST(Ilp, AgreesWithEdgeFormulationAndOracle) {
  Rng rng(6);
  for (int k = 0; k < 100; ++k) {
    const Graph g = gen_erdos_renyi(1 + rng.below(12), rng.uniform01(), rng.next());
    const int a = oracle::alpha_brute(g);
    EXPECT_EQ(alpha_via_ilp(g).value, a);
    EXPECT_EQ(alpha_via_ilp(g, IlpFormulation::edge).value, a);
    EXPECT_EQ(beta_via_ilp(g).value, oracle::beta_brute(g));
  }
}

TEST(Milp, Examples) {
  const auto c8 = milp_reformulate_graph(cycle_graph(8));
  EXPECT_NEAR(lcp_optimize_via_milp(c8, ones(8), Sense::minimize).value, 8.0 / 3.0, 1e-7);
  const auto p3 = milp_reformulate_graph(path_graph(3));
  EXPECT_NEAR(lcp_optimize_via_milp(p3, ones(3), Sense::maximize).value, 2.0, 1e-7);
  const auto k3 = milp_reformulate_graph(complete_graph(3));
  EXPECT_NEAR(lcp_optimize_via_milp(k3, ones(3), Sense::maximize).value, 1.0, 1e-7);
}

TEST(Milp, BigMFromDegrees) {
  const Graph g = star_graph(3);
  const auto m = milp_reformulate_graph(g);
  EXPECT_EQ(m.r, ones(4));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(m.r_prime(static_cast<Eigen::Index>(i)), g.degree(i));
}

TEST(Milp, AgreesWithEnumeration) {
  Rng rng(12);
  for (int k = 0; k < 30; ++k) {
    const Graph g = gen_erdos_renyi(1 + rng.below(9), rng.uniform01(), rng.next());
    const Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(random_weights(g.size(), rng).values.data(),
                                                                static_cast<Eigen::Index>(g.size()));
    const SolutionSet sol(lcp_from_graph(g));
    const auto model = milp_reformulate_graph(g);
    for (Sense s : {Sense::maximize, Sense::minimize}) {
      const auto cc = cross_check_milp(model, sol, c, s);
      EXPECT_FALSE(cc.bounds_suspect) << cc.milp_value << " vs " << cc.enumeration_value;
    }
  }
}
