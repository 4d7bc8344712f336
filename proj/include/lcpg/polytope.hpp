#ifndef LCPG_POLYTOPE_HPP
#define LCPG_POLYTOPE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "lcpg/graph.hpp"
#include "lcpg/lcp.hpp"
#include "lcpg/lp.hpp"

namespace lcpg {

/// MAXIS(G) = {0 <= x <= e, 0 <= (A+I)x - e <= (D-I)(e-x)}.
///
/// Rows 0..n-1 are (A+I)x >= e. Rows n..2n-1 are the upper half rewritten as
/// d_j(1 - x_j) - Σ_k a_jk x_k >= 0, i.e. -(A + D)x >= -d.
inline HPolytope maxis_polytope(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  const Eigen::MatrixXd A = g.adjacency_matrix();
  const auto deg = g.degrees();
  HPolytope p;
  p.kind = "maxis";
  p.F.resize(2 * n, n);
  p.b.resize(2 * n);
  p.F.topRows(n) = A + Eigen::MatrixXd::Identity(n, n);
  p.b.head(n).setOnes();
  p.F.bottomRows(n) = -A;
  for (Eigen::Index j = 0; j < n; ++j) {
    p.F(n + j, j) = -static_cast<double>(deg[static_cast<std::size_t>(j)]);
    p.b(n + j) = -static_cast<double>(deg[static_cast<std::size_t>(j)]);
  }
  p.u = Eigen::VectorXd::Ones(n);
  return p;
}

/// FRAC(G) = {0 <= x <= e, x_i + x_j <= 1 for every edge}, edge rows as -x_i - x_j >= -1.
inline HPolytope frac_polytope(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  const auto edges = g.edges();
  HPolytope p;
  p.kind = "frac";
  p.F = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(edges.size()), n);
  p.b = -Eigen::VectorXd::Ones(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t k = 0; k < edges.size(); ++k) {
    p.F(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(edges[k].first)) = -1.0;
    p.F(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(edges[k].second)) = -1.0;
  }
  p.u = Eigen::VectorXd::Ones(n);
  return p;
}

/// Exact membership of an integer point in a polytope with integral data.
inline bool contains_integral_point(const HPolytope& p, const std::vector<int>& x) {
  p.validate();
  if (static_cast<Eigen::Index>(x.size()) != p.dimension()) return false;
  auto as_int = [](double v) {
    const auto r = std::llround(v);
    if (static_cast<double>(r) != v) throw InputError("exact check requires integral polytope data");
    return static_cast<std::int64_t>(r);
  };
  for (Eigen::Index j = 0; j < p.dimension(); ++j) {
    if (x[static_cast<std::size_t>(j)] < 0 || x[static_cast<std::size_t>(j)] > as_int(p.u(j))) return false;
  }
  for (Eigen::Index i = 0; i < p.F.rows(); ++i) {
    std::int64_t lhs = 0;
    for (Eigen::Index j = 0; j < p.dimension(); ++j) lhs += as_int(p.F(i, j)) * x[static_cast<std::size_t>(j)];
    if (lhs < as_int(p.b(i))) return false;
  }
  return true;
}

/// All binary points of p (2^n scan, n <= 25).
inline std::vector<VertexMask> binary_points(const HPolytope& p) {
  const auto n = static_cast<std::size_t>(p.dimension());
  if (n > 25) throw LimitError("binary_points supports dimension <= 25");
  std::vector<VertexMask> out;
  std::vector<int> x(n);
  for (VertexMask s = 0; s < bit(n); ++s) {
    for (std::size_t j = 0; j < n; ++j) x[j] = static_cast<int>((s >> j) & 1U);
    if (contains_integral_point(p, x)) out.push_back(s);
  }
  return out;
}

struct BranchAndBoundOptions {
  double integrality_tol = 1e-6;
  /// Objective takes integer values on feasible points, so bounds can be rounded.
  bool integral_objective = false;
  std::size_t max_nodes = 2'000'000;
};

struct BinaryProgramResult {
  bool feasible = false;
  double value = 0.0;
  Eigen::VectorXd x;
  std::size_t node_count = 0;
};

/// LP-based branch and bound over the variables listed in `binaries`.
///
/// Depth-first. Branches on the most fractional binary; both children are
/// solved immediately and the one with the better bound is explored first.
inline BinaryProgramResult solve_binary_program(const LinearProgram& base, const std::vector<Eigen::Index>& binaries,
                                                const BranchAndBoundOptions& opts = {}) {
  const bool maximize = base.sense == Sense::maximize;
  auto better = [&](double a, double b) { return maximize ? a > b : a < b; };
  struct Node {
    Eigen::VectorXd lower, upper;
    LpResult lp;
  };
  BinaryProgramResult out;
  auto solve_node = [&](const Eigen::VectorXd& lo, const Eigen::VectorXd& up) {
    LinearProgram lp = base;
    lp.lower = lo;
    lp.upper = up;
    ++out.node_count;
    return lp_solve(lp);
  };
  auto prunable = [&](double bound) {
    if (!out.feasible) return false;
    if (opts.integral_objective) {
      return maximize ? std::floor(bound + 1e-6) <= out.value : std::ceil(bound - 1e-6) >= out.value;
    }
    return !better(bound, out.value + (maximize ? 1e-9 : -1e-9));
  };

  std::vector<Node> stack;
  {
    auto root = solve_node(base.lower, base.upper);
    if (root.status == LpStatus::unbounded) throw SolverError("branch and bound: LP relaxation is unbounded");
    if (root.optimal()) stack.push_back({base.lower, base.upper, std::move(root)});
  }
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (prunable(node.lp.value)) continue;
    Eigen::Index branch = -1;
    double most = opts.integrality_tol;
    for (auto j : binaries) {
      const double v = node.lp.x(j);
      const double frac = std::abs(v - std::round(v));
      if (frac > most + 1e-15) {
        most = frac;
        branch = j;
      }
    }
    if (branch < 0) {
      if (!out.feasible || better(node.lp.value, out.value)) {
        out.feasible = true;
        out.value = opts.integral_objective ? std::round(node.lp.value) : node.lp.value;
        out.x = node.lp.x;
        for (auto j : binaries) out.x(j) = std::round(out.x(j));
      }
      continue;
    }
    if (out.node_count >= opts.max_nodes) throw SolverError("branch and bound: node limit reached");
    std::vector<Node> children;
    for (double v : {0.0, 1.0}) {
      Eigen::VectorXd lo = node.lower, up = node.upper;
      lo(branch) = v;
      up(branch) = v;
      auto r = solve_node(lo, up);
      if (r.optimal() && !prunable(r.value)) children.push_back({std::move(lo), std::move(up), std::move(r)});
    }
    if (children.size() == 2 && better(children[0].lp.value, children[1].lp.value)) {
      std::swap(children[0], children[1]);
    }
    for (auto& c : children) stack.push_back(std::move(c));
  }
  return out;
}

struct IlpResult {
  long long value = 0;
  std::vector<int> incumbent;
  std::size_t node_count = 0;
  double gap = 0.0;
};

enum class IlpFormulation {
  maxis,  // 0 <= (A+I)x - e <= (D-I)(e-x): feasible lattice = maximal independent sets
  edge    // x_i + x_j <= 1: feasible lattice = all independent sets
};

namespace detail {

inline IlpResult solve_graph_ilp(const Graph& g, const HPolytope& p, Sense sense) {
  if (g.size() > 40) throw LimitError("branch and bound supports at most 40 vertices");
  const auto n = p.dimension();
  LinearProgram lp = LinearProgram::with_variables(n);
  lp.objective.setOnes();
  lp.sense = sense;
  lp.upper = p.u;
  for (Eigen::Index i = 0; i < p.F.rows(); ++i) lp.add_row(p.F.row(i).transpose(), RowType::greater_equal, p.b(i));
  std::vector<Eigen::Index> binaries(static_cast<std::size_t>(n));
  std::iota(binaries.begin(), binaries.end(), Eigen::Index{0});
  BranchAndBoundOptions opts;
  opts.integral_objective = true;
  const auto r = solve_binary_program(lp, binaries, opts);
  if (!r.feasible) throw SolverError("integer program unexpectedly infeasible");
  IlpResult out;
  out.node_count = r.node_count;
  out.incumbent.resize(static_cast<std::size_t>(n));
  long long count = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    out.incumbent[static_cast<std::size_t>(j)] = static_cast<int>(std::lround(r.x(j)));
    count += out.incumbent[static_cast<std::size_t>(j)];
  }
  out.value = count;
  if (!contains_integral_point(p, out.incumbent)) throw SolverError("incumbent failed the exact feasibility re-check");
  return out;
}

}  // namespace detail

/// α(G) from the compact 0-1 program max eᵀx over binary points of MAXIS(G)
/// (or over the classical edge formulation, as a cross-check).
inline IlpResult alpha_via_ilp(const Graph& g, IlpFormulation form = IlpFormulation::maxis) {
  return detail::solve_graph_ilp(g, form == IlpFormulation::maxis ? maxis_polytope(g) : frac_polytope(g),
                                 Sense::maximize);
}

/// β(G) = min eᵀx over binary points of MAXIS(G).
inline IlpResult beta_via_ilp(const Graph& g) {
  return detail::solve_graph_ilp(g, maxis_polytope(g), Sense::minimize);
}

/// Big-M model of LCP(M, q): 0 <= x <= r∘z, 0 <= Mx + q <= r'∘(e - z), z binary.
struct MilpModel {
  LcpInstance instance;
  Eigen::VectorXd r;
  Eigen::VectorXd r_prime;

  Eigen::Index size() const { return instance.size(); }

  /// Variables ordered (x, z).
  LinearProgram relaxation() const {
    const Eigen::Index n = size();
    LinearProgram lp = LinearProgram::with_variables(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      lp.upper(i) = r(i);
      lp.upper(n + i) = 1.0;
      Eigen::VectorXd link = Eigen::VectorXd::Zero(2 * n);
      link(i) = 1.0;
      link(n + i) = -r(i);
      lp.add_row(std::move(link), RowType::less_equal, 0.0);
      Eigen::VectorXd y = Eigen::VectorXd::Zero(2 * n);
      y.head(n) = instance.M.row(i).transpose();
      lp.add_row(y, RowType::greater_equal, -instance.q(i));
      y(n + i) = r_prime(i);
      lp.add_row(std::move(y), RowType::less_equal, r_prime(i) - instance.q(i));
    }
    return lp;
  }
};

/// For the graph LCP the bounds r = e and r'_i = d_i hold on SOL(G).
inline MilpModel milp_reformulate_lcp(const LcpInstance& inst, Eigen::VectorXd r, Eigen::VectorXd r_prime) {
  inst.validate();
  if (r.size() != inst.size() || r_prime.size() != inst.size()) throw InputError("MILP bounds have wrong dimension");
  if ((r.array() < 0.0).any() || (r_prime.array() < 0.0).any()) throw InputError("MILP bounds must be non-negative");
  return {inst, std::move(r), std::move(r_prime)};
}

inline MilpModel milp_reformulate_graph(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::VectorXd rp(n);
  for (Eigen::Index i = 0; i < n; ++i) rp(i) = g.degree(static_cast<std::size_t>(i));
  return milp_reformulate_lcp(lcp_from_graph(g), Eigen::VectorXd::Ones(n), rp);
}

struct MilpResult {
  double value = 0.0;
  Eigen::VectorXd x;
  VertexMask z = 0;
  std::size_t node_count = 0;
};

/// Optimizes c·x over the x-projection of the MILP. Throws InfeasibleLcp if it is empty.
inline MilpResult lcp_optimize_via_milp(const MilpModel& model, const Eigen::VectorXd& c, Sense sense) {
  const Eigen::Index n = model.size();
  if (c.size() != n) throw InputError("objective has wrong dimension");
  if (n > 40) throw LimitError("MILP branch and bound supports dimension <= 40");
  LinearProgram lp = model.relaxation();
  lp.objective.head(n) = c;
  lp.sense = sense;
  std::vector<Eigen::Index> binaries;
  for (Eigen::Index i = 0; i < n; ++i) binaries.push_back(n + i);
  const auto r = solve_binary_program(lp, binaries);
  if (!r.feasible) throw InfeasibleLcp();
  MilpResult out;
  out.value = r.value;
  out.x = r.x.head(n);
  out.node_count = r.node_count;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (r.x(n + i) > 0.5) out.z |= bit(static_cast<std::size_t>(i));
  }
  return out;
}

struct MilpCrossCheck {
  double milp_value = 0.0;
  double enumeration_value = 0.0;
  /// The two routes disagree: the supplied big-M bounds are likely invalid.
  bool bounds_suspect = false;
};

inline MilpCrossCheck cross_check_milp(const MilpModel& model, const SolutionSet& sol, const Eigen::VectorXd& c,
                                       Sense sense, double tol = 1e-6) {
  MilpCrossCheck out;
  out.milp_value = lcp_optimize_via_milp(model, c, sense).value;
  out.enumeration_value = sol.optimize(c, sense).value;
  out.bounds_suspect = std::abs(out.milp_value - out.enumeration_value) > tol;
  return out;
}

}  // namespace lcpg

#endif  // LCPG_POLYTOPE_HPP
