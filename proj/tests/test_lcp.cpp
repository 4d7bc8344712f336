#include <gtest/gtest.h>

#include "lcpg/generators.hpp"
#include "lcpg/lcp.hpp"
#include "lcpg/oracle.hpp"

using namespace lcpg;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Eigen::VectorXd ones(std::size_t n) { return Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)); }

std::vector<VertexMask> supports(const LcpInstance& inst) {
  std::vector<VertexMask> out;
  for (const auto& f : enumerate_solution_faces(inst)) out.push_back(f.pattern);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Lcp, GraphInstances) {
  const auto k2 = lcp_from_graph(complete_graph(2));
  EXPECT_EQ(k2.M, Eigen::MatrixXd::Ones(2, 2));
  EXPECT_EQ(k2.q, vec({-1, -1}));
  const auto k1 = lcp_from_graph(complete_graph(1));
  EXPECT_EQ(k1.M, Eigen::MatrixXd::Ones(1, 1));
  const auto faces = enumerate_solution_faces(k1);
  ASSERT_EQ(faces.size(), 1u);
  EXPECT_NEAR(faces[0].point(0), 1.0, 1e-12);
  Eigen::MatrixXd m3(3, 3);
  m3 << 1, 1, 0, 1, 1, 1, 0, 1, 1;
  EXPECT_EQ(lcp_from_graph(path_graph(3)).M, m3);
  EXPECT_EQ(lcp_from_graph(path_graph(3)).provenance, Provenance::graph);
}

TEST(Lcp, QpKkt) {
  const Eigen::MatrixXd none(0, 1);
  const Eigen::VectorXd empty(0);
  const auto a = lcp_from_qp(Eigen::MatrixXd::Constant(1, 1, 2.0), vec({-2}), none, empty);
  EXPECT_TRUE(check_solution(a, vec({1})).ok());
  EXPECT_FALSE(check_solution(a, vec({0})).ok());
  EnumerationOptions box;
  box.upper = vec({10});
  const auto fa = enumerate_solution_faces(a, box);
  ASSERT_EQ(fa.size(), 1u);
  EXPECT_NEAR(fa[0].point(0), 1.0, 1e-9);

  const auto b = lcp_from_qp(Eigen::MatrixXd::Zero(1, 1), vec({1}), none, empty);
  EXPECT_TRUE(check_solution(b, vec({0})).ok());

  // min x^2 - 4x s.t. -x >= -1: the bound is active with multiplier 2.
  const auto c = lcp_from_qp(Eigen::MatrixXd::Constant(1, 1, 2.0), vec({-4}), Eigen::MatrixXd::Constant(1, 1, -1.0),
                             vec({-1}));
  EXPECT_EQ(c.provenance, Provenance::qp);
  EXPECT_TRUE(check_solution(c, vec({1, 2})).ok());
  EnumerationOptions box2;
  box2.upper = vec({10, 10});
  const auto fc = enumerate_solution_faces(c, box2);
  ASSERT_EQ(fc.size(), 1u);
  EXPECT_NEAR(fc[0].point(0), 1.0, 1e-9);
  EXPECT_NEAR(fc[0].point(1), 2.0, 1e-9);
}

TEST(Lcp, Bimatrix) {
  const Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);
  const auto g = lcp_from_bimatrix(one, one);
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1, 0;
  EXPECT_EQ(g.M, m);
  EXPECT_EQ(g.q, vec({-1, -1}));
  EXPECT_TRUE(check_solution(g, vec({1, 1})).ok());
  EnumerationOptions box;
  box.upper = vec({10, 10});
  EXPECT_EQ(enumerate_solution_faces(g, box).size(), 1u);

  const auto h = lcp_from_bimatrix(Eigen::MatrixXd::Constant(1, 1, 2.0), Eigen::MatrixXd::Constant(1, 1, 3.0));
  EXPECT_TRUE(check_solution(h, vec({1.0 / 3.0, 0.5})).ok());
  Eigen::MatrixXd z(1, 2);
  z << 1, 0;
  EXPECT_THROW(lcp_from_bimatrix(z, Eigen::MatrixXd::Ones(1, 2)), InputError);
}

TEST(Lcp, NashNormalization) {
  const auto [u, v] = nash_from_lcp_solution(vec({1.0 / 3.0, 0.5}), 1, 1);
  EXPECT_DOUBLE_EQ(u(0), 1.0);
  EXPECT_DOUBLE_EQ(v(0), 1.0);
  const auto [a, b] = nash_from_lcp_solution(vec({1, 1}), 1, 1);
  EXPECT_DOUBLE_EQ(a(0) + b(0), 2.0);
  EXPECT_THROW(nash_from_lcp_solution(vec({0, 0}), 1, 1), InputError);
}

TEST(Lcp, CheckSolution) {
  EXPECT_TRUE(check_solution(lcp_from_graph(cycle_graph(4)), ones(4) / 3.0).ok());
  EXPECT_TRUE(check_solution(lcp_from_graph(path_graph(3)), vec({0, 1, 0})).ok());
  const auto zero = check_solution(lcp_from_graph(path_graph(3)), Eigen::VectorXd::Zero(3));
  EXPECT_FALSE(zero.ok());
  EXPECT_TRUE(zero.nonnegative);
  EXPECT_FALSE(zero.residual_nonnegative);
}

TEST(Lcp, FacesOfSmallGraphs) {
  EXPECT_EQ(supports(lcp_from_graph(complete_graph(2))), (std::vector<VertexMask>{1, 2, 3}));
  const auto faces = enumerate_solution_faces(lcp_from_graph(empty_graph(2)));
  ASSERT_EQ(faces.size(), 1u);
  EXPECT_EQ(faces[0].pattern, 3u);
  EXPECT_TRUE(faces[0].point.isApprox(ones(2)));
}

TEST(Lcp, OptimizeOverSol) {
  EXPECT_NEAR(optimize_over_sol(lcp_from_graph(complete_graph(3)), ones(3), Sense::maximize).value, 1.0, 1e-9);
  const auto m = optimize_over_sol(lcp_from_graph(cycle_graph(8)), ones(8), Sense::minimize);
  EXPECT_NEAR(m.value, 8.0 / 3.0, 1e-9);
  EXPECT_TRUE(check_solution(lcp_from_graph(cycle_graph(8)), m.witness).ok());
  const auto p3 = lcp_from_graph(path_graph(3));
  EXPECT_NEAR(optimize_over_sol(p3, ones(3), Sense::maximize).value, 2.0, 1e-9);
  EXPECT_NEAR(optimize_over_sol(p3, ones(3), Sense::minimize).value, 1.0, 1e-9);
  EXPECT_NEAR(optimize_over_sol(p3, vec({3, 1, 3}), Sense::maximize).value, 6.0, 1e-9);
}

TEST(Lcp, IntegerSolutions) {
  auto p3 = integer_solutions(lcp_from_graph(path_graph(3)));
  std::sort(p3.begin(), p3.end());
  EXPECT_EQ(p3, (std::vector<VertexMask>{2, 5}));
  auto k3 = integer_solutions(lcp_from_graph(complete_graph(3)));
  std::sort(k3.begin(), k3.end());
  EXPECT_EQ(k3, (std::vector<VertexMask>{1, 2, 4}));
  const auto c5 = integer_solutions(lcp_from_graph(cycle_graph(5)));
  EXPECT_EQ(c5.size(), 5u);
  for (auto s : c5) EXPECT_EQ(popcount(s), 2);
}

TEST(Lcp, ForestSupport) {
  const auto p3 = lcp_from_graph(path_graph(3));
  const auto a = forest_support_structure(path_graph(3), make_solution(p3, vec({0, 1, 0})));
  EXPECT_EQ(a.singles, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(a.pairs.empty());
  const auto k2 = lcp_from_graph(complete_graph(2));
  const auto b = forest_support_structure(complete_graph(2), make_solution(k2, vec({0.4, 0.6})));
  EXPECT_TRUE(b.singles.empty());
  ASSERT_EQ(b.pairs.size(), 1u);
  EXPECT_EQ(b.pairs[0], Edge(0, 1));
  const auto c8 = lcp_from_graph(cycle_graph(8));
  EXPECT_THROW(forest_support_structure(cycle_graph(8), make_solution(c8, ones(8) / 3.0)), InputError);
}

TEST(Lcp, ResidualRanges) {
  const auto k3 = w_residual_range(lcp_from_graph(complete_graph(3)));
  EXPECT_TRUE(k3.w_unique);
  for (const auto& [lo, hi] : k3.ranges) {
    EXPECT_NEAR(lo, 0.0, 1e-9);
    EXPECT_NEAR(hi, 0.0, 1e-9);
  }
  const auto p3 = w_residual_range(lcp_from_graph(path_graph(3)));
  EXPECT_FALSE(p3.w_unique);
  EXPECT_NEAR(p3.ranges[1].first, 0.0, 1e-9);
  EXPECT_NEAR(p3.ranges[1].second, 1.0, 1e-9);
  EXPECT_FALSE(w_residual_range(lcp_from_graph(cycle_graph(5))).w_unique);
}

TEST(Lcp, RejectsOversizedAndMalformed) {
  EXPECT_THROW(SolutionSet(lcp_from_graph(empty_graph(23))), LimitError);
  LcpInstance bad;
  bad.M = Eigen::MatrixXd::Ones(2, 3);
  bad.q = Eigen::VectorXd::Ones(2);
  EXPECT_THROW(SolutionSet{bad}, InputError);
}

// Lemma-level properties of SOL(G) over random graphs.
class LcpProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(LcpProperties, StructureOfSolutions) {
  Rng rng(GetParam());
  for (int k = 0; k < 25; ++k) {
    const auto n = 1 + static_cast<std::size_t>(rng.below(8));
    const Graph g = gen_erdos_renyi(n, rng.uniform01(), rng.next());
    const auto inst = lcp_from_graph(g);
    EXPECT_FALSE(check_solution(inst, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))).ok());
    const SolutionSet sol(inst);
    const double beta = oracle::beta_brute(g);
    EXPECT_LE(sol.optimize(ones(n), Sense::minimize).value, beta + 1e-9);
    const auto mis = oracle::maximal_independent_sets(g);
    for (const auto& f : sol.faces()) {
      ASSERT_TRUE(check_solution(inst, f.point).ok());
      EXPECT_GE(f.point.minCoeff(), -1e-9);
      EXPECT_LE(f.point.maxCoeff(), 1.0 + 1e-9);
      const VertexMask s = support_of(f.point);
      EXPECT_TRUE(oracle::is_dominating(g, s));
      // Restricted to its support, x solves the induced LCP with full support.
      const auto verts = mask_to_list(s);
      Eigen::VectorXd xs(static_cast<Eigen::Index>(verts.size()));
      for (std::size_t a = 0; a < verts.size(); ++a) xs(static_cast<Eigen::Index>(a)) = f.point(static_cast<Eigen::Index>(verts[a]));
      const auto sub = lcp_from_graph(induced_subgraph(g, verts));
      EXPECT_TRUE(check_solution(sub, xs).ok());
      EXPECT_GT(xs.minCoeff(), 1e-7);
      for (auto m : mis) {
        if ((m & ~s) == 0) EXPECT_LE(f.point.sum(), popcount(m) + 1e-9);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, LcpProperties, ::testing::Values(1u, 2u, 3u, 4u));

TEST(Lcp, DisjointUnionSupportsFactor) {
  Rng rng(21);
  for (int k = 0; k < 20; ++k) {
    const Graph a = gen_erdos_renyi(1 + rng.below(4), 0.5, rng.next());
    const Graph b = gen_erdos_renyi(1 + rng.below(4), 0.5, rng.next());
    const Graph u = disjoint_union(a, b);
    const auto sa = supports(lcp_from_graph(a)), sb = supports(lcp_from_graph(b));
    std::vector<VertexMask> prod;
    for (auto x : sa) {
      for (auto y : sb) prod.push_back(x | (y << a.size()));
    }
    std::sort(prod.begin(), prod.end());
    EXPECT_EQ(supports(lcp_from_graph(u)), prod);
  }
}

TEST(Lcp, CompleteGraphFacesFormSimplex) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const SolutionSet sol(lcp_from_graph(complete_graph(n)));
    EXPECT_TRUE(sol.pattern_feasible(full_mask(n)));
    for (const auto& f : sol.faces()) EXPECT_NEAR(f.point.sum(), 1.0, 1e-9);
    EXPECT_EQ(sol.faces().size(), (std::size_t{1} << n) - 1);
  }
}
