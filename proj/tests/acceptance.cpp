// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lcpg/lcpg.hpp"

using namespace lcpg;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

std::string failures(const RunReport& r, const std::vector<std::string>& only = {}) {
  std::string out;
  for (const auto& p : r.properties) {
    if (!only.empty() && std::find(only.begin(), only.end(), p.name) == only.end()) continue;
    if (!p.passed) out += (out.empty() ? "" : "; ") + p.name + " " + p.counterexample.dump();
  }
  return out;
}

std::size_t checks(const RunReport& r, const std::vector<std::string>& only = {}) {
  std::size_t n = 0;
  for (const auto& p : r.properties) {
    if (only.empty() || std::find(only.begin(), only.end(), p.name) != only.end()) n += p.checked;
  }
  return n;
}

Outcome from_reports(const std::vector<RunReport>& reps, const std::vector<std::string>& only = {}) {
  Outcome o;
  std::size_t n = 0;
  for (const auto& r : reps) {
    const auto f = failures(r, only);
    if (!f.empty()) {
      o.ok = false;
      o.note += f;
    }
    n += checks(r, only);
  }
  if (o.ok) o.note = std::to_string(n) + " checks";
  return o;
}

VerifyOptions exhaustive5() {
  VerifyOptions o;
  o.exhaustive = true;
  o.max_n = 5;
  return o;
}

Outcome criterion1() { return from_reports({cmd_verify("thm1", exhaustive5()), cmd_verify("thm1")}); }

Outcome criterion2() { return from_reports({cmd_verify("thm2")}); }

Outcome criterion3() { return from_reports({cmd_verify("lemmas")}, {"gap-example-c8"}); }

Outcome criterion4() { return from_reports({cmd_verify("lemmas")}, {"regular-m-equals-n-over-d-plus-1", "petersen-beta"}); }

Outcome criterion5() { return from_reports({cmd_verify("lemmas")}, {"binary-lattices-coincide"}); }

Outcome criterion6() { return from_reports({cmd_verify("lemmas")}, {"ilp-matches-brute"}); }

Outcome criterion7() { return from_reports({cmd_verify("lemmas")}, {"milp-matches-enumeration"}); }

// The 16 chain graphs plus C5 and the bipartite samples, with explicit gap checks.
std::vector<Graph> chain_graphs() {
  std::vector<Graph> out;
  for (std::size_t n : {10, 15}) {
    for (double p : {0.2, 0.4, 0.6, 0.8}) {
      for (std::uint64_t seed : {1u, 2u}) out.push_back(gen_erdos_renyi(n, p, seed));
    }
  }
  return out;
}

std::vector<double> chain_values(std::string& bad_gap) {
  std::vector<double> v;
  for (const auto& g : chain_graphs()) {
    for (auto variant : {ThetaVariant::star, ThetaVariant::prime, ThetaVariant::lovasz}) {
      const auto r = theta(g, variant);
      if (!(r.gap <= 1e-6 * (1.0 + std::abs(r.value)))) bad_gap += " " + std::string(to_string(variant)) + ":" + std::to_string(r.gap);
      v.push_back(r.value);
    }
  }
  return v;
}

std::vector<double> last_chain;

Outcome criterion8() {
  auto o = from_reports({cmd_verify("theta-chain")});
  std::string bad_gap;
  last_chain = chain_values(bad_gap);
  if (!bad_gap.empty()) {
    o.ok = false;
    o.note += " gap above 1e-6(1+|v|):" + bad_gap;
  }
  return o;
}

Outcome criterion9() { return from_reports({cmd_verify("wellcovered")}); }

// Integer and rational quantities must repeat bitwise; SDP values within 1e-9.
std::vector<double> exact_values() {
  std::vector<double> v;
  Rng rng(7);
  for (int k = 0; k < 40; ++k) {
    const Graph g = detail::random_small_graph(rng, 10);
    const SolutionSet sol(lcp_from_graph(g));
    const auto e = detail::ones(g.size());
    v.push_back(sol.optimize(e, Sense::maximize).value);
    v.push_back(sol.optimize(e, Sense::minimize).value);
    const auto ilp = alpha_via_ilp(g);
    v.push_back(ilp.value);
    v.push_back(static_cast<double>(ilp.node_count));
    v.push_back(lcp_optimize_via_milp(milp_reformulate_graph(g), e, Sense::minimize).value);
  }
  v.push_back(detail::m_of(cycle_graph(8)));
  return v;
}

Outcome criterion10() {
  Outcome o;
  std::vector<std::pair<std::string, std::function<RunReport()>>> runs{
      {"thm1-exhaustive", [] { return cmd_verify("thm1", exhaustive5()); }},
      {"thm1", [] { return cmd_verify("thm1"); }},
      {"thm2", [] { return cmd_verify("thm2"); }},
      {"lemmas", [] { return cmd_verify("lemmas"); }},
      {"wellcovered", [] { return cmd_verify("wellcovered"); }},
  };
  for (const auto& [name, run] : runs) {
    auto a = run(), b = run();
    for (auto* r : {&a, &b}) {
      r->wall_time = 0;
      for (auto& p : r->properties) p.seconds = 0;
    }
    if (!(a == b)) {
      o.ok = false;
      o.note += " " + name + " differs";
    }
  }
  const auto e1 = exact_values(), e2 = exact_values();
  if (e1 != e2) {
    o.ok = false;
    o.note += " exact values differ";
  }
  std::string ignored;
  const auto again = chain_values(ignored);
  double worst = 0.0;
  if (again.size() != last_chain.size()) {
    o.ok = false;
  } else {
    for (std::size_t k = 0; k < again.size(); ++k) worst = std::max(worst, std::abs(again[k] - last_chain[k]));
  }
  if (worst > 1e-9) {
    o.ok = false;
    o.note += " sdp drift " + std::to_string(worst);
  }
  if (o.ok) o.note = std::to_string(runs.size()) + " suites, " + std::to_string(e1.size()) + " exact values, " +
                     std::to_string(again.size()) + " sdp values (max drift " + std::to_string(worst) + ")";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence", criterion1},  {"forests", criterion2},          {"gap example", criterion3},
      {"regular graphs", criterion4},      {"lattice equality", criterion5}, {"ILP", criterion6},
      {"MILP", criterion7},                {"theta chain", criterion8},      {"well-coveredness", criterion9},
      {"determinism", criterion10},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu: %s (%s, %.1fs)\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.note.c_str(), s);
    std::fflush(stdout);
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
