#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "lcpg/run_report.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LCPG_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, InvariantHumanOutput) {
  auto r = run("alpha --named cycle:8");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("alpha = 4  [lcp-enum]"), std::string::npos) << r.out;
  r = run("m --named cycle:8");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("m = 2.666667"), std::string::npos) << r.out;
  r = run("beta --named petersen --method ilp");
  EXPECT_NE(r.out.find("beta = 3"), std::string::npos) << r.out;
}

TEST(Cli, JsonRoundTrip) {
  const auto r = run("alpha --er 10,0.4 --seed 5 --cross-check --json");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto rep = lcpg::parse_report(r.out);
  EXPECT_EQ(rep.command, "alpha");
  EXPECT_EQ(rep.input, "er:10,0.4,seed=5");
  EXPECT_EQ(rep.exit_code, 0);
  ASSERT_EQ(rep.properties.size(), 1u);
  EXPECT_EQ(rep.properties[0].name, "methods-agree");
  EXPECT_EQ(lcpg::parse_report(lcpg::emit(rep)), rep);
}

TEST(Cli, WeightsFlag) {
  const auto r = run("alpha-weighted --named path:3 --weights 3,1,3 --json");
  ASSERT_EQ(r.code, 0);
  EXPECT_DOUBLE_EQ(lcpg::parse_report(r.out).values.at("value").get<double>(), 6.0);
}

TEST(Cli, InputFile) {
  const std::string path = ::testing::TempDir() + "lcpg_cli_graph.txt";
  {
    std::ofstream out(path);
    out << "5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n";
  }
  const auto r = run("well-covered --input " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("well-covered = true"), std::string::npos) << r.out;
  std::remove(path.c_str());
}

TEST(Cli, ThetaAndTable) {
  auto r = run("theta --variant lovasz --named cycle:5");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("theta-lovasz = 2.2361"), std::string::npos) << r.out;
  r = run("theta --variant star --named path:4 --json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(lcpg::parse_report(r.out).values.at("value").get<double>(), 2.0, 1e-4);
  r = run("table --row 6,0.5,1 --row 1,0,1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("(6,0.5)"), std::string::npos) << r.out;
}

TEST(Cli, Verify) {
  auto r = run("verify thm1 --exhaustive --max-n 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify thm1: pass"), std::string::npos) << r.out;
  r = run("verify thm1 --count 3 --tol -1 --json");
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(lcpg::parse_report(r.out).all_passed());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("alpha").code, 2);
  EXPECT_EQ(run("alpha --named wheel:5").code, 2);
  EXPECT_EQ(run("alpha --named cycle:5 --er 5,0.5").code, 2);
  EXPECT_EQ(run("alpha --input /nonexistent/file").code, 2);
  EXPECT_EQ(run("m --named cycle:5 --method ilp").code, 2);
  EXPECT_EQ(run("theta --variant other --named cycle:5").code, 2);
  EXPECT_EQ(run("theta --named empty:31").code, 2);
  EXPECT_EQ(run("verify nosuch").code, 2);
  EXPECT_EQ(run("table --row 40,0.5,1").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("theta --variant lovasz --named petersen --max-iterations 2").code, 3);
}
