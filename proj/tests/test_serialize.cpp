#include <gtest/gtest.h>

#include "lcpg/generators.hpp"
#include "lcpg/lcp.hpp"
#include "lcpg/lift.hpp"
#include "lcpg/polytope.hpp"
#include "lcpg/run_report.hpp"
#include "lcpg/serialize.hpp"

using namespace lcpg;

TEST(Serialize, MatrixIsRowMajor) {
  Eigen::MatrixXd m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  EXPECT_EQ(to_json(m), json::parse("[[1,2,3],[4,5,6]]"));
  EXPECT_EQ(matrix_from_json(to_json(m), "m"), m);
  EXPECT_THROW(matrix_from_json(json::parse("[[1,2],[3]]"), "m"), InputError);
  EXPECT_EQ(matrix_from_json(json::array(), "m", 4).cols(), 4);
}

TEST(Serialize, GraphRoundTrip) {
  const Graph g = petersen_graph();
  const auto j = graph_to_json(g);
  EXPECT_EQ(j.at("n"), 10);
  EXPECT_EQ(j.at("edges").size(), 15u);
  EXPECT_EQ(graph_from_json(j), g);
  EXPECT_THROW(graph_from_json(json::parse(R"({"n":2,"edges":[[1,3]]})")), InputError);
}

TEST(Serialize, LcpRoundTrip) {
  const auto inst = lcp_from_graph(cycle_graph(5));
  const auto back = lcp_from_json(lcp_to_json(inst));
  EXPECT_EQ(back.M, inst.M);
  EXPECT_EQ(back.q, inst.q);
  EXPECT_EQ(back.provenance, inst.provenance);
  EXPECT_THROW(lcp_from_json(json::parse(R"({"M":[[1,0],[0,1]],"q":[1]})")), InputError);
  EXPECT_THROW(lcp_from_json(json::parse(R"({"q":[1]})")), InputError);
}

TEST(Serialize, FaceRoundTrip) {
  const SolutionSet sol(lcp_from_graph(path_graph(3)));
  for (const auto& f : sol.faces()) {
    const auto back = face_from_json(face_to_json(f));
    EXPECT_EQ(back.pattern, f.pattern);
    EXPECT_EQ(back.point, f.point);
    EXPECT_EQ(back.full_support, f.full_support);
  }
  EXPECT_THROW(support_from_json(json::parse("[0]"), 3), InputError);
  EXPECT_THROW(support_from_json(json::parse("[4]"), 3), InputError);
}

TEST(Serialize, PolytopeRoundTrip) {
  const auto p = maxis_polytope(star_graph(3));
  const auto back = polytope_from_json(polytope_to_json(p));
  EXPECT_EQ(back.F, p.F);
  EXPECT_EQ(back.b, p.b);
  EXPECT_EQ(back.u, p.u);
  EXPECT_EQ(back.kind, p.kind);
  const auto empty = frac_polytope(empty_graph(3));
  EXPECT_EQ(polytope_from_json(polytope_to_json(empty)).F.cols(), 3);
}

TEST(Serialize, IlpRoundTrip) {
  const auto r = alpha_via_ilp(petersen_graph());
  const auto back = ilp_from_json(ilp_to_json(r));
  EXPECT_EQ(back.value, r.value);
  EXPECT_EQ(back.incumbent, r.incumbent);
  EXPECT_EQ(back.node_count, r.node_count);
  EXPECT_EQ(back.gap, r.gap);
}

TEST(Serialize, ThetaRoundTrip) {
  const auto r = theta_star(path_graph(4));
  const auto back = theta_from_json(theta_to_json(r));
  EXPECT_EQ(back.variant, r.variant);
  EXPECT_EQ(back.value, r.value);
  EXPECT_EQ(back.gap, r.gap);
  EXPECT_EQ(back.iterations, r.iterations);
  EXPECT_EQ(back.witness, r.witness);
  EXPECT_EQ(back.converged, r.converged);
  EXPECT_EQ(back.max_edge_entry, r.max_edge_entry);
}

TEST(Serialize, RunReportRoundTrip) {
  RunReport r;
  r.command = "verify";
  r.input = "seed=3";
  r.quantity = "thm1";
  r.values = {{"alpha-equals-max-over-sol", true}, {"x", {0.5, 0.25}}};
  r.witnesses = {{"set", {1, 3}}};
  r.tolerances = {{"compare", 1e-6}};
  r.stats = {{"faces", 12}};
  r.wall_time = 0.125;
  r.properties.push_back({"a", true, 10, nullptr, 0.5});
  r.properties.push_back({"b", false, 3, {{"graph", {{"n", 2}}}}, 0.25});
  r.exit_code = exit_verification;
  EXPECT_EQ(parse_report(emit(r)), r);
  EXPECT_EQ(parse_report(emit(r, -1)), r);
  EXPECT_FALSE(r.all_passed());
}

TEST(Serialize, MalformedReports) {
  EXPECT_THROW(parse_report("{not json"), InputError);
  EXPECT_THROW(parse_report("[1,2]"), InputError);
  EXPECT_THROW(parse_report(""), InputError);
}
