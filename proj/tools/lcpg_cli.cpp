#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lcpg/lcpg.hpp"

namespace {

using lcpg::RunReport;

struct SourceFlags {
  lcpg::GraphSource src;

  void attach(CLI::App* app) {
    app->add_option("--input", src.file, "graph file (edge list or DIMACS)");
    app->add_option("--named", src.named, "named family, e.g. cycle:8, petersen");
    app->add_option("--er", src.er, "Erdos-Renyi graph N,P");
    app->add_option("--seed", src.seed, "random seed");
  }
};

std::string format_value(const nlohmann::json& v, bool integral) {
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (!v.is_number()) return v.dump();
  const double x = v.get<double>();
  std::ostringstream out;
  if (integral && std::abs(x - std::round(x)) < 1e-6) {
    out << std::llround(x);
  } else {
    out << std::fixed << std::setprecision(6) << x;
  }
  return out.str();
}

void print_properties(const RunReport& rep) {
  for (const auto& p : rep.properties) {
    std::cout << (p.passed ? "PASS " : "FAIL ") << p.name << " (" << p.checked << " checks, " << std::fixed
              << std::setprecision(2) << p.seconds << "s)\n";
    if (!p.passed) std::cout << "  counterexample: " << p.counterexample.dump() << '\n';
  }
}

void print_invariant(const RunReport& rep) {
  const bool integral = rep.quantity == "alpha" || rep.quantity == "beta";
  std::cout << rep.quantity << " = " << format_value(rep.values.at("value"), integral) << "  ["
            << rep.values.at("method").get<std::string>() << "]\n";
  const auto& w = rep.witnesses.at(rep.values.at("method").get<std::string>());
  if (!w.is_null()) std::cout << "witness: " << w.dump() << '\n';
  if (rep.values.contains("by_method")) {
    for (const auto& [m, v] : rep.values.at("by_method").items()) {
      std::cout << "  " << m << ": " << format_value(v, integral) << '\n';
    }
  }
  print_properties(rep);
}

void print_theta(const RunReport& rep) {
  const auto& v = rep.values;
  std::cout << rep.quantity << " = " << std::fixed << std::setprecision(4) << v.at("value").get<double>() << '\n'
            << "status " << v.at("status").get<std::string>() << ", gap " << std::scientific << std::setprecision(2)
            << v.at("gap").get<double>() << ", iterations " << v.at("iterations").get<std::size_t>()
            << ", constraints " << v.at("constraints").get<std::size_t>() << '\n';
  if (rep.exit_code == lcpg::exit_solver) std::cout << "warning: solver did not reach the accuracy contract\n";
}

int emit(const RunReport& rep, bool as_json, void (*human)(const RunReport&)) {
  if (as_json) {
    std::cout << lcpg::emit(rep) << '\n';
  } else {
    human(rep);
  }
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph invariants through linear complementarity and Lovasz theta variants"};
  app.require_subcommand(1);
  bool as_json = false;
  double tol = 1e-6;
  app.add_flag("--json", as_json, "JSON output");

  // Invariant subcommands share one set of flags.
  std::vector<std::pair<std::string, CLI::App*>> invariant_cmds;
  SourceFlags inv_src;
  lcpg::InvariantOptions inv_opts;
  std::string weights;
  for (const auto& q : lcpg::invariant_quantities()) {
    auto* sub = app.add_subcommand(q, "compute " + q);
    inv_src.attach(sub);
    sub->add_option("--method", inv_opts.method, "lcp-enum | milp | ilp | brute");
    sub->add_flag("--cross-check", inv_opts.cross_check, "compare all applicable methods");
    sub->add_option("--tol", tol, "agreement tolerance");
    sub->add_option("--weights", weights, "comma-separated vertex weights");
    sub->add_flag("--json", as_json, "JSON output");
    invariant_cmds.emplace_back(q, sub);
  }

  SourceFlags theta_src;
  std::string variant = "lovasz";
  auto* theta = app.add_subcommand("theta", "Lovasz theta variants");
  theta_src.attach(theta);
  theta->add_option("--variant", variant, "lovasz | prime | star | frac");
  lcpg::SdpOptions sdp;
  theta->add_option("--max-iterations", sdp.max_iterations, "interior-point iteration cap");
  theta->add_flag("--json", as_json, "JSON output");

  lcpg::VerifyOptions vopts;
  std::string suite;
  std::size_t max_n = 0, forests = 0, count = 0;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "thm1 | thm2 | lemmas | theta-chain | wellcovered")->required();
  auto* o_max_n = verify->add_option("--max-n", max_n, "largest graph order");
  verify->add_flag("--exhaustive", vopts.exhaustive, "all labeled graphs of order --max-n");
  auto* o_forests = verify->add_option("--forests", forests, "number of random forests");
  auto* o_count = verify->add_option("--count", count, "number of random graphs");
  verify->add_option("--er", vopts.er, "Erdos-Renyi parameters N,P");
  verify->add_option("--seed", vopts.seed, "random seed");
  verify->add_option("--tol", tol, "comparison tolerance");
  verify->add_flag("--json", as_json, "JSON output");

  std::vector<std::string> rows;
  auto* table = app.add_subcommand("table", "theta comparison table over G(n,p) samples");
  table->add_option("--row", rows, "N,P,SEED (repeatable)");
  table->add_flag("--json", as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lcpg::exit_input;
  }

  try {
    for (const auto& [q, sub] : invariant_cmds) {
      if (!sub->parsed()) continue;
      inv_opts.tol = tol;
      if (!weights.empty()) {
        for (const auto& s : lcpg::split_commas(weights)) inv_opts.weights.push_back(lcpg::parse_number(s, "weight"));
      }
      const auto g = lcpg::load_graph(inv_src.src);
      return emit(lcpg::cmd_invariant(q, g, inv_opts), as_json, print_invariant);
    }
    if (theta->parsed()) {
      const auto g = lcpg::load_graph(theta_src.src);
      return emit(lcpg::cmd_theta(lcpg::theta_variant_from_string(variant), g, sdp), as_json, print_theta);
    }
    if (verify->parsed()) {
      if (o_max_n->count()) vopts.max_n = max_n;
      if (o_forests->count()) vopts.forests = forests;
      if (o_count->count()) vopts.count = count;
      vopts.tol = tol;
      const auto rep = lcpg::cmd_verify(suite, vopts);
      return emit(rep, as_json, [](const RunReport& r) {
        std::cout << "verify " << r.quantity << ": " << (r.all_passed() ? "pass" : "FAIL") << '\n';
        print_properties(r);
      });
    }
    if (table->parsed()) {
      std::vector<lcpg::TableRowSpec> specs;
      for (const auto& r : rows) specs.push_back(lcpg::parse_row_spec(r));
      const auto rep = lcpg::cmd_table(specs);
      return emit(rep, as_json, [](const RunReport& r) {
        std::cout << r.witnesses.at("table").get<std::string>();
        if (r.exit_code == lcpg::exit_solver) std::cout << "! marks a solve outside the accuracy contract\n";
      });
    }
  } catch (const lcpg::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return lcpg::exit_input;
  } catch (const lcpg::LimitError& e) {
    std::cerr << "size limit: " << e.what() << '\n';
    return lcpg::exit_input;
  } catch (const lcpg::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return lcpg::exit_solver;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return lcpg::exit_input;
  }
  return lcpg::exit_ok;
}
