#ifndef LCPG_COMMANDS_HPP
#define LCPG_COMMANDS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lcpg/error.hpp"
#include "lcpg/generators.hpp"
#include "lcpg/graph.hpp"
#include "lcpg/lcp.hpp"
#include "lcpg/lift.hpp"
#include "lcpg/oracle.hpp"
#include "lcpg/polytope.hpp"
#include "lcpg/run_report.hpp"
#include "lcpg/serialize.hpp"

namespace lcpg {

// ---------------------------------------------------------------------------
// Graph sources

struct GraphSource {
  std::string file;
  std::string named;
  std::string er;  // "N,P"
  std::uint64_t seed = 1;
};

struct LoadedGraph {
  Graph graph;
  VertexWeights weights;  // empty unless the file carried w lines
  std::string descriptor;
};

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

inline double parse_number(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError(std::string("bad ") + what + " '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw InputError(std::string("bad ") + what + " '" + s + "'");
  return v;
}

inline std::size_t parse_count(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError(std::string("bad ") + what + " '" + s + "'");
  }
  return static_cast<std::size_t>(std::stoull(s));
}

struct ErSpec {
  std::size_t n = 0;
  double p = 0.0;
};

inline ErSpec parse_er_spec(const std::string& spec) {
  const auto parts = split_commas(spec);
  if (parts.size() != 2) throw InputError("--er expects N,P");
  ErSpec out{parse_count(parts[0], "vertex count"), parse_number(parts[1], "edge probability")};
  if (out.n < 1) throw InputError("--er needs N >= 1");
  if (out.p < 0.0 || out.p > 1.0) throw InputError("edge probability must lie in [0, 1]");
  return out;
}

inline LoadedGraph load_graph(const GraphSource& src) {
  const int given = !src.file.empty() + !src.named.empty() + !src.er.empty();
  if (given != 1) throw InputError("give exactly one of --input, --named, --er");
  LoadedGraph out;
  if (!src.file.empty()) {
    std::ifstream in(src.file);
    if (!in) throw InputError("cannot open '" + src.file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    auto parsed = parse_graph_text(buf.str());
    out.graph = std::move(parsed.graph);
    out.weights = std::move(parsed.weights);
    out.descriptor = "file:" + src.file;
  } else if (!src.named.empty()) {
    out.graph = named_graph_from_spec(src.named);
    out.descriptor = "named:" + src.named;
  } else {
    const auto er = parse_er_spec(src.er);
    out.graph = gen_erdos_renyi(er.n, er.p, src.seed);
    out.descriptor = "er:" + src.er + ",seed=" + std::to_string(src.seed);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariants

enum class Method { lcp_enum, milp, ilp, brute };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::lcp_enum: return "lcp-enum";
    case Method::milp: return "milp";
    case Method::ilp: return "ilp";
    case Method::brute: return "brute";
  }
  return "unknown";
}

inline Method method_from_string(const std::string& s) {
  if (s == "lcp-enum") return Method::lcp_enum;
  if (s == "milp") return Method::milp;
  if (s == "ilp") return Method::ilp;
  if (s == "brute") return Method::brute;
  throw InputError("unknown method '" + s + "'");
}

inline const std::vector<std::string>& invariant_quantities() {
  static const std::vector<std::string> q{"alpha", "alpha-weighted", "beta", "m", "M", "well-covered", "w-unique"};
  return q;
}

inline std::vector<Method> applicable_methods(const std::string& quantity) {
  using enum Method;
  if (quantity == "alpha") return {lcp_enum, milp, ilp, brute};
  if (quantity == "alpha-weighted" || quantity == "M") return {lcp_enum, milp, brute};
  if (quantity == "beta" || quantity == "well-covered") return {lcp_enum, ilp, brute};
  if (quantity == "m") return {lcp_enum, milp};
  if (quantity == "w-unique") return {lcp_enum};
  throw InputError("unknown quantity '" + quantity + "'");
}

struct InvariantOptions {
  std::string method = "lcp-enum";
  bool cross_check = false;
  double tol = 1e-6;
  std::vector<double> weights;  // used when the graph source has none
};

struct MethodValue {
  nlohmann::json value;  // number or boolean
  nlohmann::json witness;
  nlohmann::json stats = nlohmann::json::object();
};

namespace detail {

using namespace oracle;

inline nlohmann::json set_json(VertexMask s) { return support_to_json(s); }

inline VertexMask best_set(const Graph& g, const std::function<double(VertexMask)>& score, bool maximize) {
  const auto sets = maximal_independent_sets(g);
  VertexMask best = sets.front();
  for (auto s : sets) {
    if (maximize ? score(s) > score(best) : score(s) < score(best)) best = s;
  }
  return best;
}

inline Eigen::VectorXd weight_vector(const VertexWeights& w) {
  return Eigen::Map<const Eigen::VectorXd>(w.values.data(), static_cast<Eigen::Index>(w.values.size()));
}

inline MethodValue sol_optimum(const SolutionSet& sol, const Eigen::VectorXd& c, Sense sense) {
  const auto r = sol.optimize(c, sense);
  MethodValue out;
  out.value = r.value;
  out.witness = to_json(r.witness);
  out.stats = {{"faces", sol.faces().size()}, {"patterns_tested", sol.patterns_tested()}};
  return out;
}

inline MethodValue milp_optimum(const Graph& g, const Eigen::VectorXd& c, Sense sense) {
  if (g.size() > 40) throw LimitError("milp supports at most 40 vertices");
  const auto r = lcp_optimize_via_milp(milp_reformulate_graph(g), c, sense);
  MethodValue out;
  out.value = r.value;
  out.witness = to_json(r.x);
  out.stats = {{"node_count", r.node_count}};
  return out;
}

inline MethodValue ilp_value(const IlpResult& r) {
  MethodValue out;
  out.value = r.value;
  out.witness = r.incumbent;
  out.stats = {{"node_count", r.node_count}};
  return out;
}

inline MethodValue compute_invariant(const std::string& q, Method m, const Graph& g, const VertexWeights& w) {
  const auto n = static_cast<Eigen::Index>(g.size());
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd wv = weight_vector(w);
  auto set_weight_fn = [&](VertexMask s) { return set_weight(s, w); };
  auto card = [](VertexMask s) { return static_cast<double>(popcount(s)); };
  MethodValue out;
  switch (m) {
    case Method::lcp_enum: {
      const SolutionSet sol(lcp_from_graph(g));
      if (q == "alpha") return sol_optimum(sol, ones, Sense::maximize);
      if (q == "alpha-weighted" || q == "M") return sol_optimum(sol, wv, Sense::maximize);
      if (q == "m") return sol_optimum(sol, ones, Sense::minimize);
      if (q == "beta" || q == "well-covered") {
        const auto binary = integer_solutions(sol.instance());
        auto lo = binary.front(), hi = binary.front();
        for (auto s : binary) {
          if (popcount(s) < popcount(lo)) lo = s;
          if (popcount(s) > popcount(hi)) hi = s;
        }
        if (q == "beta") {
          out.value = popcount(lo);
          out.witness = set_json(lo);
        } else {
          out.value = popcount(lo) == popcount(hi);
          out.witness = {{"smallest", set_json(lo)}, {"largest", set_json(hi)}};
        }
        out.stats = {{"binary_solutions", binary.size()}};
        return out;
      }
      if (q == "w-unique") {
        const auto range = w_residual_range(sol);
        out.value = range.w_unique;
        nlohmann::json ranges = nlohmann::json::array();
        for (const auto& [lo, hi] : range.ranges) ranges.push_back({lo, hi});
        out.witness = {{"residual_ranges", ranges}};
        out.stats = {{"faces", sol.faces().size()}};
        return out;
      }
      break;
    }
    case Method::milp:
      if (q == "alpha") return milp_optimum(g, ones, Sense::maximize);
      if (q == "alpha-weighted" || q == "M") return milp_optimum(g, wv, Sense::maximize);
      if (q == "m") return milp_optimum(g, ones, Sense::minimize);
      break;
    case Method::ilp:
      if (q == "alpha") return ilp_value(alpha_via_ilp(g));
      if (q == "beta") return ilp_value(beta_via_ilp(g));
      if (q == "well-covered") {
        const auto a = alpha_via_ilp(g), b = beta_via_ilp(g);
        out.value = a.value == b.value;
        out.witness = {{"alpha", a.value}, {"beta", b.value}};
        out.stats = {{"node_count", a.node_count + b.node_count}};
        return out;
      }
      break;
    case Method::brute:
      check_oracle_size(g);
      if (q == "alpha") {
        out.value = alpha_brute(g);
        out.witness = set_json(best_set(g, card, true));
        return out;
      }
      if (q == "alpha-weighted" || q == "M") {
        out.value = alpha_weighted_brute(g, w);
        out.witness = set_json(best_set(g, set_weight_fn, true));
        return out;
      }
      if (q == "beta") {
        out.value = beta_brute(g);
        out.witness = set_json(best_set(g, card, false));
        return out;
      }
      if (q == "well-covered") {
        out.value = is_well_covered(g);
        out.witness = {{"alpha", alpha_brute(g)}, {"beta", beta_brute(g)}};
        return out;
      }
      break;
  }
  throw InputError(std::string("method ") + to_string(m) + " does not apply to " + q);
}

inline bool values_agree(const nlohmann::json& a, const nlohmann::json& b, double tol) {
  if (a.is_boolean() || b.is_boolean()) return a == b;
  return std::abs(a.get<double>() - b.get<double>()) <= tol;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

inline VertexWeights resolve_weights(const LoadedGraph& lg, const std::vector<double>& fallback) {
  VertexWeights w;
  if (!lg.weights.values.empty()) {
    w = lg.weights;
  } else if (!fallback.empty()) {
    w.values = fallback;
  } else {
    w.values.assign(lg.graph.size(), 1.0);
  }
  if (w.values.size() != lg.graph.size()) throw InputError("weight vector length does not match the graph");
  for (double x : w.values) {
    if (!(x >= 0.0)) throw InputError("weights must be non-negative");
  }
  return w;
}

inline RunReport cmd_invariant(const std::string& quantity, const LoadedGraph& lg, const InvariantOptions& opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto methods = applicable_methods(quantity);
  const Method primary = method_from_string(opts.method);
  if (std::find(methods.begin(), methods.end(), primary) == methods.end()) {
    throw InputError(std::string("method ") + to_string(primary) + " does not apply to " + quantity);
  }
  const bool weighted = quantity == "alpha-weighted" || quantity == "M";
  const VertexWeights w = weighted ? resolve_weights(lg, opts.weights) : VertexWeights{};

  RunReport rep;
  rep.command = quantity;
  rep.input = lg.descriptor;
  rep.quantity = quantity;
  rep.tolerances = {{"cross_check", opts.tol}};
  if (weighted) rep.values["weights"] = w.values;

  const auto main = detail::compute_invariant(quantity, primary, lg.graph, w);
  rep.values["value"] = main.value;
  rep.values["method"] = to_string(primary);
  rep.witnesses[to_string(primary)] = main.witness;
  rep.stats[to_string(primary)] = main.stats;

  if (opts.cross_check) {
    PropertyResult prop{"methods-agree", true, 1, nullptr, 0.0};
    nlohmann::json by_method = {{to_string(primary), main.value}};
    for (auto m : methods) {
      if (m == primary) continue;
      MethodValue other;
      try {
        other = detail::compute_invariant(quantity, m, lg.graph, w);
      } catch (const LimitError& e) {
        by_method[to_string(m)] = std::string("limit: ") + e.what();
        continue;
      }
      by_method[to_string(m)] = other.value;
      rep.witnesses[to_string(m)] = other.witness;
      rep.stats[to_string(m)] = other.stats;
      ++prop.checked;
      if (!detail::values_agree(main.value, other.value, opts.tol)) prop.passed = false;
    }
    rep.values["by_method"] = by_method;
    if (!prop.passed) prop.counterexample = by_method;
    rep.properties.push_back(std::move(prop));
    if (!rep.all_passed()) rep.exit_code = exit_verification;
  }
  rep.wall_time = detail::seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Theta

inline RunReport cmd_theta(ThetaVariant v, const LoadedGraph& lg, const SdpOptions& opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = theta(lg.graph, v, opts);
  RunReport rep;
  rep.command = "theta";
  rep.input = lg.descriptor;
  rep.quantity = std::string("theta-") + to_string(v);
  rep.values = theta_to_json(r);
  if (!r.witness.empty()) rep.witnesses["x"] = r.witness;
  rep.tolerances = {{"gap", 1e-6}, {"residual", 1e-7}};
  rep.stats = {{"iterations", r.iterations}, {"constraints", r.constraints}, {"status", r.status}};
  if (!r.converged) rep.exit_code = exit_solver;
  rep.wall_time = detail::seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Verification suites

struct VerifyOptions {
  std::optional<std::size_t> max_n;
  bool exhaustive = false;
  std::optional<std::size_t> forests;
  std::optional<std::size_t> count;
  std::string er;  // theta-chain: "N,P"; empty means the default grid
  std::uint64_t seed = 1;
  std::size_t weights_per_graph = 10;
  double tol = 1e-6;
};

namespace detail {

using namespace oracle;

class PropertyRun {
 public:
  explicit PropertyRun(std::string name) : t0_(std::chrono::steady_clock::now()) { result_.name = std::move(name); }

  void check(bool ok, const std::function<nlohmann::json()>& describe) {
    ++result_.checked;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.counterexample = describe();
    }
  }

  PropertyResult finish() {
    result_.seconds = seconds_since(t0_);
    return result_;
  }

 private:
  PropertyResult result_;
  std::chrono::steady_clock::time_point t0_;
};

/// n drawn from 1..max_n and p from [0, 1), then G(n, p) with a fresh seed.
inline Graph random_small_graph(Rng& rng, std::size_t max_n) {
  const auto n = 1 + static_cast<std::size_t>(rng.below(max_n));
  const double p = rng.uniform01();
  return gen_erdos_renyi(n, p, rng.next());
}

inline std::vector<Graph> labeled_graphs(std::size_t n) {
  if (n > 7) throw LimitError("exhaustive enumeration supports at most 7 vertices");
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<Graph> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code) out.push_back(graph_from_code(n, code));
  return out;
}

inline std::vector<Graph> labeled_graphs_up_to(std::size_t max_n) {
  std::vector<Graph> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto part = labeled_graphs(n);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline nlohmann::json describe(const Graph& g, nlohmann::json extra = nlohmann::json::object()) {
  extra["graph"] = graph_to_json(g);
  return extra;
}

inline double max_over_sol(const SolutionSet& sol, const Eigen::VectorXd& c) {
  return sol.optimize(c, Sense::maximize).value;
}

inline double min_over_sol(const SolutionSet& sol, const Eigen::VectorXd& c) {
  return sol.optimize(c, Sense::minimize).value;
}

inline Eigen::VectorXd ones(std::size_t n) { return Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)); }

/// Attaches a pendant vertex to every vertex of g.
inline Graph corona(const Graph& g) {
  const auto n = g.size();
  auto edges = g.edges();
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, n + i);
  return Graph(2 * n, edges);
}

inline std::vector<PropertyResult> suite_thm1(const VerifyOptions& o) {
  const auto max_n = o.max_n.value_or(o.exhaustive ? 5 : 9);
  if (max_n > kMaxOracleVertices) throw LimitError("thm1 supports --max-n up to 25");
  std::vector<Graph> graphs;
  if (o.exhaustive) {
    graphs = labeled_graphs(max_n);
  } else {
    Rng rng(o.seed);
    for (std::size_t k = 0; k < o.count.value_or(200); ++k) graphs.push_back(random_small_graph(rng, max_n));
  }
  Rng wrng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  PropertyRun plain("alpha-equals-max-over-sol"), weighted("weighted-alpha-equals-max-over-sol");
  for (const auto& g : graphs) {
    const SolutionSet sol(lcp_from_graph(g));
    const double lhs = max_over_sol(sol, ones(g.size()));
    const int a = alpha_brute(g);
    plain.check(std::abs(lhs - a) <= o.tol, [&] { return describe(g, {{"max_over_sol", lhs}, {"alpha", a}}); });
    for (std::size_t k = 0; k < o.weights_per_graph; ++k) {
      const auto w = random_weights(g.size(), wrng);
      const double lw = max_over_sol(sol, weight_vector(w));
      const double aw = alpha_weighted_brute(g, w);
      weighted.check(std::abs(lw - aw) <= o.tol * (1.0 + aw),
                     [&] { return describe(g, {{"weights", w.values}, {"max_over_sol", lw}, {"alpha_w", aw}}); });
    }
  }
  return {plain.finish(), weighted.finish()};
}

inline std::vector<PropertyResult> suite_thm2(const VerifyOptions& o) {
  const auto max_n = o.max_n.value_or(12);
  if (max_n > 22) throw LimitError("thm2 supports --max-n up to 22");
  Rng rng(o.seed);
  PropertyRun beta("min-over-sol-equals-beta"), shape("support-components-are-k1-or-k2");
  for (std::size_t k = 0; k < o.forests.value_or(200); ++k) {
    const auto n = 1 + static_cast<std::size_t>(rng.below(max_n));
    const Graph g = random_forest(n, rng);
    const auto inst = lcp_from_graph(g);
    const SolutionSet sol(inst);
    const auto opt = sol.optimize(ones(n), Sense::minimize);
    const int b = beta_brute(g);
    beta.check(std::abs(opt.value - b) <= o.tol, [&] { return describe(g, {{"min_over_sol", opt.value}, {"beta", b}}); });
    bool ok = true;
    try {
      forest_support_structure(g, make_solution(inst, opt.witness));
    } catch (const std::exception&) {
      ok = false;
    }
    shape.check(ok, [&] { return describe(g, {{"x", to_json(opt.witness)}}); });
  }
  return {beta.finish(), shape.finish()};
}

inline double m_of(const Graph& g) { return min_over_sol(SolutionSet(lcp_from_graph(g)), ones(g.size())); }

inline std::vector<PropertyResult> suite_lemmas(const VerifyOptions& o) {
  std::vector<PropertyResult> out;
  {
    PropertyRun p("gap-example-c8");
    const Graph c8 = cycle_graph(8);
    const double m = m_of(c8);
    const int b = beta_brute(c8);
    p.check(std::abs(m - 8.0 / 3.0) <= 1e-8 && b == 3 && m < b, [&] { return describe(c8, {{"m", m}, {"beta", b}}); });
    out.push_back(p.finish());
  }
  {
    PropertyRun p("regular-m-equals-n-over-d-plus-1");
    for (const Graph& g : {cycle_graph(4), cycle_graph(5), cycle_graph(8), complete_graph(4), petersen_graph()}) {
      const double m = m_of(g);
      const double expect = static_cast<double>(g.size()) / (g.degree(0) + 1);
      p.check(std::abs(m - expect) <= 1e-7, [&] { return describe(g, {{"m", m}, {"expected", expect}}); });
    }
    out.push_back(p.finish());
  }
  {
    PropertyRun p("petersen-beta");
    const Graph g = petersen_graph();
    const int b = beta_brute(g);
    p.check(b == 3 && b >= 10.0 / 4.0, [&] { return describe(g, {{"beta", b}}); });
    out.push_back(p.finish());
  }
  const auto small = labeled_graphs_up_to(std::min<std::size_t>(o.max_n.value_or(5), 6));
  {
    PropertyRun p("binary-lattices-coincide");
    for (const auto& g : small) {
      auto lcp_bin = integer_solutions(lcp_from_graph(g));
      auto poly_bin = binary_points(maxis_polytope(g));
      auto mis = maximal_independent_sets(g);
      std::sort(lcp_bin.begin(), lcp_bin.end());
      std::sort(poly_bin.begin(), poly_bin.end());
      std::sort(mis.begin(), mis.end());
      p.check(lcp_bin == poly_bin && poly_bin == mis, [&] {
        auto sets = [](const std::vector<VertexMask>& v) {
          nlohmann::json j = nlohmann::json::array();
          for (auto s : v) j.push_back(support_to_json(s));
          return j;
        };
        return describe(g, {{"lcp", sets(lcp_bin)}, {"maxis", sets(poly_bin)}, {"maximal_sets", sets(mis)}});
      });
    }
    out.push_back(p.finish());
  }
  {
    PropertyRun p("ilp-matches-brute");
    std::vector<Graph> graphs = small;
    Rng rng(o.seed);
    for (std::size_t k = 0; k < o.count.value_or(100); ++k) graphs.push_back(random_small_graph(rng, 12));
    for (const auto& g : graphs) {
      const auto a = alpha_via_ilp(g).value, b = beta_via_ilp(g).value;
      const int ab = alpha_brute(g), bb = beta_brute(g);
      p.check(a == ab && b == bb,
              [&] { return describe(g, {{"alpha_ilp", a}, {"alpha", ab}, {"beta_ilp", b}, {"beta", bb}}); });
    }
    out.push_back(p.finish());
  }
  {
    PropertyRun p("milp-matches-enumeration");
    Rng rng(o.seed + 1);
    for (std::size_t k = 0; k < 50; ++k) {
      const Graph g = random_small_graph(rng, 10);
      const Eigen::VectorXd c = weight_vector(random_weights(g.size(), rng));
      const SolutionSet sol(lcp_from_graph(g));
      const auto model = milp_reformulate_graph(g);
      for (const Sense s : {Sense::maximize, Sense::minimize}) {
        const double a = lcp_optimize_via_milp(model, c, s).value;
        const double b = sol.optimize(c, s).value;
        p.check(std::abs(a - b) <= o.tol, [&] {
          return describe(g, {{"c", to_json(c)}, {"sense", s == Sense::maximize ? "max" : "min"}, {"milp", a}, {"enum", b}});
        });
      }
    }
    out.push_back(p.finish());
  }
  return out;
}

struct ChainRow {
  Graph graph;
  std::string label;
};

inline std::vector<PropertyResult> suite_theta_chain(const VerifyOptions& o, const SdpOptions& sdp = {}) {
  std::vector<ChainRow> rows;
  const auto count = o.count.value_or(o.er.empty() ? 2 : 10);
  std::vector<ErSpec> specs;
  if (o.er.empty()) {
    for (std::size_t n : {10, 15}) {
      for (double p : {0.2, 0.4, 0.6, 0.8}) specs.push_back({n, p});
    }
  } else {
    specs.push_back(parse_er_spec(o.er));
  }
  for (const auto& sp : specs) {
    for (std::size_t k = 0; k < count; ++k) {
      const auto seed = o.seed + k;
      std::ostringstream label;
      label << "er:" << sp.n << "," << sp.p << ",seed=" << seed;
      rows.push_back({gen_erdos_renyi(sp.n, sp.p, seed), label.str()});
    }
  }
  constexpr double slack = 1e-4;
  PropertyRun chain("alpha-le-star-le-prime-le-lovasz"), conv("solves-converged"), edge("star-edge-entries-vanish");
  for (const auto& row : rows) {
    const auto& g = row.graph;
    const int a = alpha_brute(g);
    const auto ts = theta_star(g, sdp), tp = theta_prime(g, sdp), tl = theta_lovasz(g, sdp);
    auto info = [&] {
      return describe(g, {{"label", row.label}, {"alpha", a}, {"star", theta_to_json(ts)},
                          {"prime", theta_to_json(tp)}, {"lovasz", theta_to_json(tl)}});
    };
    chain.check(a <= ts.value + slack && ts.value <= tp.value + slack && tp.value <= tl.value + slack, info);
    conv.check(ts.converged && tp.converged && tl.converged, info);
    edge.check(ts.max_edge_entry <= 1e-6, info);
  }
  PropertyRun c5("lovasz-c5-is-sqrt5");
  {
    const auto t = theta_lovasz(cycle_graph(5), sdp);
    c5.check(t.converged && std::abs(t.value - std::sqrt(5.0)) <= slack,
             [&] { return describe(cycle_graph(5), {{"lovasz", theta_to_json(t)}}); });
  }
  PropertyRun bip("bipartite-lovasz-equals-alpha");
  Rng rng(o.seed);
  for (int k = 0; k < 5; ++k) {
    const auto left = 2 + static_cast<std::size_t>(rng.below(5));
    const auto right = 2 + static_cast<std::size_t>(rng.below(5));
    const Graph g = gen_random_bipartite(left, right, 0.5, rng);
    const auto t = theta_lovasz(g, sdp);
    const int a = alpha_brute(g);
    bip.check(t.converged && std::abs(t.value - a) <= slack,
              [&] { return describe(g, {{"alpha", a}, {"lovasz", theta_to_json(t)}}); });
  }
  return {chain.finish(), conv.finish(), edge.finish(), c5.finish(), bip.finish()};
}

inline std::vector<PropertyResult> suite_wellcovered(const VerifyOptions& o) {
  const auto max_n = o.max_n.value_or(12);
  if (max_n > 22) throw LimitError("wellcovered supports --max-n up to 22");
  PropertyRun c5("c5-well-covered-not-w-unique");
  {
    const Graph g = cycle_graph(5);
    const auto range = w_residual_range(lcp_from_graph(g));
    c5.check(is_well_covered(g) && !range.w_unique, [&] { return describe(g, {{"w_unique", range.w_unique}}); });
  }
  Rng rng(o.seed);
  PropertyRun equiv("well-covered-iff-max-equals-min"), very("very-well-covered-forests-half");
  auto check_very = [&](const Graph& g) {
    if (has_isolated_vertex(g) || !is_well_covered(g)) return;
    bool ok = true;
    for (auto s : maximal_independent_sets(g)) ok = ok && 2 * static_cast<std::size_t>(popcount(s)) == g.size();
    very.check(ok, [&] { return describe(g); });
  };
  for (std::size_t k = 0; k < o.forests.value_or(o.count.value_or(100)); ++k) {
    const auto n = 1 + static_cast<std::size_t>(rng.below(max_n));
    const Graph g = random_forest(n, rng);
    const SolutionSet sol(lcp_from_graph(g));
    const double hi = max_over_sol(sol, ones(n)), lo = min_over_sol(sol, ones(n));
    const bool wc = is_well_covered(g);
    equiv.check(wc == (std::abs(hi - lo) <= o.tol),
                [&] { return describe(g, {{"well_covered", wc}, {"max", hi}, {"min", lo}}); });
    check_very(g);
  }
  // Coronas of random trees are well-covered forests without isolated vertices.
  for (std::size_t k = 0; k < 20; ++k) {
    const auto n = 1 + static_cast<std::size_t>(rng.below(std::max<std::size_t>(1, max_n / 2)));
    check_very(corona(random_tree(n, rng)));
  }
  return {c5.finish(), equiv.finish(), very.finish()};
}

}  // namespace detail

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"thm1", "thm2", "lemmas", "theta-chain", "wellcovered"};
  return s;
}

inline RunReport cmd_verify(const std::string& suite, const VerifyOptions& o = {}, const SdpOptions& sdp = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = "verify";
  rep.quantity = suite;
  rep.input = "seed=" + std::to_string(o.seed);
  rep.tolerances = {{"compare", o.tol}};
  if (suite == "thm1") {
    rep.properties = detail::suite_thm1(o);
  } else if (suite == "thm2") {
    rep.properties = detail::suite_thm2(o);
  } else if (suite == "lemmas") {
    rep.properties = detail::suite_lemmas(o);
  } else if (suite == "theta-chain") {
    rep.properties = detail::suite_theta_chain(o, sdp);
    rep.tolerances["chain_slack"] = 1e-4;
    rep.tolerances["edge_entry"] = 1e-6;
  } else if (suite == "wellcovered") {
    rep.properties = detail::suite_wellcovered(o);
  } else {
    throw InputError("unknown verification suite '" + suite + "'");
  }
  for (const auto& p : rep.properties) rep.values[p.name] = p.passed;
  rep.exit_code = rep.all_passed() ? exit_ok : exit_verification;
  rep.wall_time = detail::seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Table

struct TableRowSpec {
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 1;
};

inline TableRowSpec parse_row_spec(const std::string& s) {
  const auto parts = split_commas(s);
  if (parts.size() != 3) throw InputError("--row expects N,P,SEED");
  TableRowSpec r{parse_count(parts[0], "vertex count"), parse_number(parts[1], "edge probability"),
                 static_cast<std::uint64_t>(parse_count(parts[2], "seed"))};
  if (r.n < 1 || r.n > kMaxThetaVertices) throw InputError("table rows need 1 <= n <= 30");
  if (r.p < 0.0 || r.p > 1.0) throw InputError("edge probability must lie in [0, 1]");
  return r;
}

struct TableCell {
  std::optional<double> value;  // empty when over a size limit
  bool converged = true;
  nlohmann::json detail;
};

struct TableRow {
  TableRowSpec spec;
  int alpha = 0;
  TableCell frac, star, prime, lovasz;
  bool chain_ok = true;
};

inline TableCell theta_cell(const Graph& g, ThetaVariant v, const SdpOptions& opts) {
  TableCell c;
  try {
    const auto r = theta(g, v, opts);
    c.value = r.value;
    c.converged = r.converged;
    c.detail = theta_to_json(r);
  } catch (const LimitError& e) {
    c.detail = {{"limit", e.what()}};
  }
  return c;
}

inline TableRow compute_table_row(const TableRowSpec& spec, const SdpOptions& opts = {}) {
  TableRow row;
  row.spec = spec;
  const Graph g = gen_erdos_renyi(spec.n, spec.p, spec.seed);
  row.alpha = g.size() <= oracle::kMaxOracleVertices ? oracle::alpha_brute(g) : static_cast<int>(alpha_via_ilp(g).value);
  row.frac = theta_cell(g, ThetaVariant::frac, opts);
  row.star = theta_cell(g, ThetaVariant::star, opts);
  row.prime = theta_cell(g, ThetaVariant::prime, opts);
  row.lovasz = theta_cell(g, ThetaVariant::lovasz, opts);
  // Chain over the cells that produced a value; missing cells are skipped.
  std::vector<double> chain{static_cast<double>(row.alpha)};
  for (const auto* c : {&row.star, &row.prime, &row.lovasz}) {
    if (c->value) chain.push_back(*c->value);
  }
  for (std::size_t k = 1; k < chain.size(); ++k) {
    if (chain[k - 1] > chain[k] + 1e-4) row.chain_ok = false;
  }
  return row;
}

inline std::string format_cell(const TableCell& c) {
  if (!c.value) return "limit";
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << *c.value;
  if (!c.converged) out << '!';
  return out.str();
}

inline std::string format_table(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  auto pad = [](const std::string& s, std::size_t w) {
    const auto width = static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
    return width >= w ? s + " " : s + std::string(w - width, ' ');
  };
  out << pad("(n,p)", 12) << pad("\u03b1", 8) << pad("\u03d1_FRAC", 12) << pad("\u03d1*", 12) << pad("\u03d1\u2032", 12)
      << "\u03d1\n";
  for (const auto& r : rows) {
    std::ostringstream np;
    np << "(" << r.spec.n << "," << r.spec.p << ")";
    out << pad(np.str(), 12) << pad(std::to_string(r.alpha), 8) << pad(format_cell(r.frac), 12)
        << pad(format_cell(r.star), 12) << pad(format_cell(r.prime), 12) << format_cell(r.lovasz);
    if (!r.chain_ok) out << "  CHAIN VIOLATED";
    out << '\n';
  }
  return out.str();
}

inline nlohmann::json cell_json(const TableCell& c) {
  nlohmann::json j = c.detail;
  if (c.value) j["value"] = *c.value;
  j["converged"] = c.converged;
  return j;
}

inline RunReport cmd_table(const std::vector<TableRowSpec>& specs, const SdpOptions& opts = {},
                           std::vector<TableRow>* rows_out = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = "table";
  rep.quantity = "theta-comparison";
  std::vector<TableRow> rows;
  nlohmann::json jrows = nlohmann::json::array();
  bool chain_ok = true, converged = true;
  for (const auto& s : specs) {
    rows.push_back(compute_table_row(s, opts));
    const auto& r = rows.back();
    chain_ok = chain_ok && r.chain_ok;
    for (const auto* c : {&r.frac, &r.star, &r.prime, &r.lovasz}) converged = converged && c->converged;
    jrows.push_back({{"n", s.n},
                     {"p", s.p},
                     {"seed", s.seed},
                     {"alpha", r.alpha},
                     {"frac", cell_json(r.frac)},
                     {"star", cell_json(r.star)},
                     {"prime", cell_json(r.prime)},
                     {"lovasz", cell_json(r.lovasz)},
                     {"chain_ok", r.chain_ok}});
  }
  std::ostringstream in;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    in << (k ? ";" : "") << specs[k].n << "," << specs[k].p << "," << specs[k].seed;
  }
  rep.input = in.str();
  rep.values = {{"rows", jrows}};
  rep.witnesses = {{"table", format_table(rows)}};
  rep.tolerances = {{"chain_slack", 1e-4}};
  rep.properties.push_back({"chain", chain_ok, specs.size(), nullptr, 0.0});
  rep.exit_code = !chain_ok ? exit_verification : (!converged ? exit_solver : exit_ok);
  rep.wall_time = detail::seconds_since(t0);
  if (rows_out) *rows_out = std::move(rows);
  return rep;
}

}  // namespace lcpg

#endif  // LCPG_COMMANDS_HPP
