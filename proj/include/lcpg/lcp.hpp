#ifndef LCPG_LCP_HPP
#define LCPG_LCP_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lcpg/graph.hpp"
#include "lcpg/lp.hpp"

namespace lcpg {

enum class Provenance { graph, qp, bimatrix, raw };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::graph: return "graph";
    case Provenance::qp: return "qp";
    case Provenance::bimatrix: return "bimatrix";
    case Provenance::raw: return "raw";
  }
  return "raw";
}

inline Provenance provenance_from_string(const std::string& s) {
  if (s == "graph") return Provenance::graph;
  if (s == "qp") return Provenance::qp;
  if (s == "bimatrix") return Provenance::bimatrix;
  if (s == "raw") return Provenance::raw;
  throw InputError("unknown LCP provenance '" + s + "'");
}

/// LCP(M, q): find x >= 0 with y = Mx + q >= 0 and xᵀy = 0.
struct LcpInstance {
  Eigen::MatrixXd M;
  Eigen::VectorXd q;
  Provenance provenance = Provenance::raw;

  Eigen::Index size() const { return q.size(); }

  void validate() const {
    if (M.rows() != M.cols()) throw InputError("LCP matrix must be square");
    if (M.rows() != q.size()) throw InputError("LCP vector q does not match the matrix dimension");
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& x) const { return M * x + q; }

  /// Upper bounds known to hold on SOL: x <= e for the graph LCP, none otherwise.
  std::optional<Eigen::VectorXd> natural_box() const {
    if (provenance == Provenance::graph) return Eigen::VectorXd::Ones(size());
    return std::nullopt;
  }
};

/// LCP(A + I, -e).
inline LcpInstance lcp_from_graph(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  return {g.adjacency_matrix() + Eigen::MatrixXd::Identity(n, n), -Eigen::VectorXd::Ones(n), Provenance::graph};
}

/// KKT system of min ½xᵀQx + cᵀx s.t. Ax >= b, x >= 0, as an LCP in (x, λ):
/// M = [[Q, -Aᵀ], [A, 0]], q = (c, -b).
inline LcpInstance lcp_from_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                               const Eigen::VectorXd& b) {
  const Eigen::Index n = Q.rows();
  const Eigen::Index m = A.rows();
  if (Q.cols() != n || c.size() != n) throw InputError("lcp_from_qp: Q and c dimensions disagree");
  if (m > 0 && A.cols() != n) throw InputError("lcp_from_qp: constraint matrix has wrong column count");
  if (b.size() != m) throw InputError("lcp_from_qp: b has wrong length");
  if (n > 0 && (Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InputError("lcp_from_qp: Q must be symmetric");
  }
  LcpInstance inst;
  inst.M = Eigen::MatrixXd::Zero(n + m, n + m);
  inst.M.topLeftCorner(n, n) = Q;
  if (m > 0) {
    inst.M.topRightCorner(n, m) = -A.transpose();
    inst.M.bottomLeftCorner(m, n) = A;
  }
  inst.q.resize(n + m);
  inst.q.head(n) = c;
  inst.q.tail(m) = -b;
  inst.provenance = Provenance::qp;
  return inst;
}

/// Bimatrix game with positive loss matrices A, B (m×n): M = [[0, A], [Bᵀ, 0]], q = -e.
inline LcpInstance lcp_from_bimatrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw InputError("lcp_from_bimatrix: A and B shapes differ");
  if (A.size() == 0) throw InputError("lcp_from_bimatrix: empty game");
  if ((A.array() <= 0.0).any() || (B.array() <= 0.0).any()) {
    throw InputError("lcp_from_bimatrix: payoff entries must be strictly positive");
  }
  const Eigen::Index m = A.rows(), n = A.cols();
  LcpInstance inst;
  inst.M = Eigen::MatrixXd::Zero(m + n, m + n);
  inst.M.topRightCorner(m, n) = A;
  inst.M.bottomLeftCorner(n, m) = B.transpose();
  inst.q = -Eigen::VectorXd::Ones(m + n);
  inst.provenance = Provenance::bimatrix;
  return inst;
}

/// Normalizes the two blocks of a bimatrix LCP solution onto their simplices.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> nash_from_lcp_solution(const Eigen::VectorXd& x, Eigen::Index m,
                                                                          Eigen::Index n) {
  if (x.size() != m + n) throw InputError("nash_from_lcp_solution: dimension mismatch");
  const Eigen::VectorXd u = x.head(m), v = x.tail(n);
  const double su = u.sum(), sv = v.sum();
  if (!(su > 0.0) || !(sv > 0.0)) throw InputError("nash_from_lcp_solution: a strategy block is zero");
  return {u / su, v / sv};
}

struct SolutionCheck {
  bool nonnegative = false;
  bool residual_nonnegative = false;
  bool complementary = false;
  double min_x = 0.0;
  double min_y = 0.0;
  double max_product = 0.0;

  bool ok() const { return nonnegative && residual_nonnegative && complementary; }
  explicit operator bool() const { return ok(); }
};

inline SolutionCheck check_solution(const LcpInstance& inst, const Eigen::VectorXd& x, double tol = 1e-8) {
  inst.validate();
  if (x.size() != inst.size()) throw InputError("check_solution: dimension mismatch");
  SolutionCheck r;
  const Eigen::VectorXd y = inst.residual(x);
  r.min_x = x.size() > 0 ? x.minCoeff() : 0.0;
  r.min_y = y.size() > 0 ? y.minCoeff() : 0.0;
  r.max_product = x.size() > 0 ? x.cwiseProduct(y).cwiseAbs().maxCoeff() : 0.0;
  r.nonnegative = r.min_x >= -tol;
  r.residual_nonnegative = r.min_y >= -tol;
  r.complementary = r.max_product <= tol;
  return r;
}

struct LcpSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  VertexMask support = 0;  // σ(x) = {i : x_i > tol}
};

inline VertexMask support_of(const Eigen::VectorXd& x, double tol = 1e-7) {
  VertexMask s = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) > tol) s |= bit(static_cast<std::size_t>(i));
  }
  return s;
}

inline LcpSolution make_solution(const LcpInstance& inst, Eigen::VectorXd x, double tol = 1e-7) {
  LcpSolution s;
  s.y = inst.residual(x);
  s.support = support_of(x, tol);
  s.x = std::move(x);
  return s;
}

/// {x : x_i = 0 for i outside the pattern, (Mx+q)_i = 0 inside, x >= 0, Mx+q >= 0}.
struct SolutionFace {
  VertexMask pattern = 0;
  Eigen::VectorXd point;      // representative, maximizing min_{i in pattern} x_i
  bool full_support = false;  // point has σ(point) == pattern
};

struct EnumerationOptions {
  std::size_t max_dimension = 22;
  double feasibility_tol = 1e-7;
  /// Box x <= upper imposed on every face LP; defaults to the instance's natural box.
  std::optional<Eigen::VectorXd> upper;
};

struct SolOptimum {
  double value = 0.0;
  Eigen::VectorXd witness;
  VertexMask face = 0;
  std::size_t faces_examined = 0;
};

class InfeasibleLcp : public SolverError {
 public:
  InfeasibleLcp() : SolverError("the LCP has no solution (every support pattern is infeasible)") {}
};

namespace detail {

inline std::vector<Eigen::Index> pattern_indices(VertexMask s) {
  std::vector<Eigen::Index> out;
  for (auto i : mask_to_list(s)) out.push_back(static_cast<Eigen::Index>(i));
  return out;
}

// Face LP over the reduced variables x_S (plus `extra` trailing variables with zero coefficients).
inline LinearProgram face_program(const LcpInstance& inst, VertexMask s, const std::optional<Eigen::VectorXd>& upper,
                                  Eigen::Index extra) {
  const auto idx = pattern_indices(s);
  const auto k = static_cast<Eigen::Index>(idx.size());
  LinearProgram lp = LinearProgram::with_variables(k + extra);
  for (Eigen::Index i = 0; i < inst.size(); ++i) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(k + extra);
    for (Eigen::Index a = 0; a < k; ++a) row(a) = inst.M(i, idx[static_cast<std::size_t>(a)]);
    const bool inside = (s >> i) & 1U;
    lp.add_row(std::move(row), inside ? RowType::equal : RowType::greater_equal, -inst.q(i));
  }
  if (upper) {
    for (Eigen::Index a = 0; a < k; ++a) lp.upper(a) = (*upper)(idx[static_cast<std::size_t>(a)]);
  }
  return lp;
}

inline Eigen::VectorXd expand(const Eigen::VectorXd& reduced, VertexMask s, Eigen::Index n) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const auto idx = pattern_indices(s);
  for (std::size_t a = 0; a < idx.size(); ++a) x(idx[a]) = std::max(0.0, reduced(static_cast<Eigen::Index>(a)));
  return x;
}

inline void visit_by_cardinality(std::size_t n, const auto& visit) {
  for (std::size_t k = 0; k <= n; ++k) {
    if (k == 0) {
      visit(VertexMask{0});
      continue;
    }
    // Gosper's hack: all k-subsets of n in increasing numeric order.
    VertexMask s = full_mask(k);
    const VertexMask limit = bit(n);
    while (s < limit) {
      visit(s);
      const VertexMask c = s & (~s + 1);
      const VertexMask r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
}

}  // namespace detail

/// SOL(M, q) as the union of its nonempty support-pattern faces.
///
/// Every S ⊆ {1..n} is tested by one LP; feasible patterns are cached with a
/// representative point. Linear objectives are then optimized face by face.
class SolutionSet {
 public:
  explicit SolutionSet(LcpInstance inst, EnumerationOptions opts = {}) : inst_(std::move(inst)), opts_(std::move(opts)) {
    inst_.validate();
    const auto n = static_cast<std::size_t>(inst_.size());
    if (n > opts_.max_dimension) {
      throw LimitError("support enumeration limited to dimension " + std::to_string(opts_.max_dimension) + " (got " +
                       std::to_string(n) + ")");
    }
    if (!opts_.upper) opts_.upper = inst_.natural_box();
    if (opts_.upper && opts_.upper->size() != inst_.size()) throw InputError("bounding box has wrong dimension");
    detail::visit_by_cardinality(n, [&](VertexMask s) { probe(s); });
    std::sort(faces_.begin(), faces_.end(), [](const auto& a, const auto& b) { return a.pattern < b.pattern; });
  }

  const LcpInstance& instance() const { return inst_; }
  const std::vector<SolutionFace>& faces() const { return faces_; }
  bool empty() const { return faces_.empty(); }
  std::size_t patterns_tested() const { return feasible_.size(); }

  bool pattern_feasible(VertexMask s) const {
    const auto it = feasible_.find(s);
    return it != feasible_.end() && it->second;
  }

  /// Exact optimum of c·x over SOL. Throws InfeasibleLcp when SOL is empty.
  SolOptimum optimize(const Eigen::VectorXd& c, Sense sense) const {
    if (c.size() != inst_.size()) throw InputError("objective has wrong dimension");
    if (faces_.empty()) throw InfeasibleLcp();
    SolOptimum best;
    bool have = false;
    const Eigen::Index n = inst_.size();
    LpOptions lp_opts;
    lp_opts.feasibility_tol = opts_.feasibility_tol;
    for (const auto& face : faces_) {
      LinearProgram lp = detail::face_program(inst_, face.pattern, opts_.upper, 0);
      const auto idx = detail::pattern_indices(face.pattern);
      for (std::size_t a = 0; a < idx.size(); ++a) lp.objective(static_cast<Eigen::Index>(a)) = c(idx[a]);
      lp.sense = sense;
      const auto r = lp_solve(lp, lp_opts);
      ++best.faces_examined;
      if (r.status == LpStatus::unbounded) {
        throw SolverError("objective is unbounded on a solution face; supply a bounding box");
      }
      if (!r.optimal()) continue;
      const double v = r.value;
      const bool better = sense == Sense::maximize ? v > best.value + 1e-12 : v < best.value - 1e-12;
      if (!have || better) {
        best.value = v;
        best.witness = detail::expand(r.x, face.pattern, n);
        best.face = face.pattern;
        have = true;
      }
    }
    if (!have) throw InfeasibleLcp();
    return best;
  }

 private:
  void probe(VertexMask s) {
    const Eigen::Index k = popcount(s);
    // Extra variable t: maximize t subject to x_i >= t on the pattern, t <= 1.
    LinearProgram lp = detail::face_program(inst_, s, opts_.upper, 1);
    lp.upper(k) = 1.0;
    lp.objective(k) = 1.0;
    lp.sense = Sense::maximize;
    for (Eigen::Index a = 0; a < k; ++a) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(k + 1);
      row(a) = 1.0;
      row(k) = -1.0;
      lp.add_row(std::move(row), RowType::greater_equal, 0.0);
    }
    LpOptions lp_opts;
    lp_opts.feasibility_tol = opts_.feasibility_tol;
    const auto r = lp_solve(lp, lp_opts);
    const bool ok = r.optimal();
    feasible_[s] = ok;
    if (!ok) return;
    SolutionFace face;
    face.pattern = s;
    face.point = detail::expand(r.x.head(k), s, inst_.size());
    face.full_support = k == 0 || r.x(k) > opts_.feasibility_tol;
    faces_.push_back(std::move(face));
  }

  LcpInstance inst_;
  EnumerationOptions opts_;
  std::vector<SolutionFace> faces_;
  std::map<VertexMask, bool> feasible_;
};

inline std::vector<SolutionFace> enumerate_solution_faces(const LcpInstance& inst, EnumerationOptions opts = {}) {
  return SolutionSet(inst, std::move(opts)).faces();
}

inline SolOptimum optimize_over_sol(const LcpInstance& inst, const Eigen::VectorXd& c, Sense sense,
                                    EnumerationOptions opts = {}) {
  return SolutionSet(inst, std::move(opts)).optimize(c, sense);
}

/// Binary solutions of a graph LCP by a 2^n scan (exact: the data are integral).
inline std::vector<VertexMask> integer_solutions(const LcpInstance& inst) {
  inst.validate();
  if (inst.provenance != Provenance::graph) throw InputError("integer_solutions expects a graph LCP");
  const auto n = static_cast<std::size_t>(inst.size());
  if (n > 25) throw LimitError("integer_solutions supports at most 25 vertices");
  std::vector<VertexMask> out;
  for (VertexMask s = 0; s < bit(n); ++s) {
    const Eigen::VectorXd x = detail::expand(Eigen::VectorXd::Ones(popcount(s)), s, inst.size());
    if (check_solution(inst, x, 0.0).ok()) out.push_back(s);
  }
  return out;
}

struct ForestSupport {
  std::vector<std::size_t> singles;  // isolated in G_σ(x): x_i = 1
  std::vector<Edge> pairs;           // K2 components: x_i + x_j = 1
};

/// Splits σ(x) of a forest-LCP solution into its K1 and K2 components.
inline ForestSupport forest_support_structure(const Graph& g, const LcpSolution& sol, double tol = 1e-7) {
  if (!is_forest(g)) throw InputError("forest_support_structure requires a forest");
  const auto inst = lcp_from_graph(g);
  if (!check_solution(inst, sol.x, tol).ok()) throw InputError("forest_support_structure: x does not solve LCP(G)");
  const VertexMask support = support_of(sol.x, tol);
  const auto verts = mask_to_list(support);
  const Graph sub = induced_subgraph(g, verts);
  ForestSupport out;
  for (auto comp : connected_components(sub)) {
    const auto members = mask_to_list(comp);
    if (members.size() == 1) {
      out.singles.push_back(verts[members[0]]);
    } else if (members.size() == 2) {
      out.pairs.emplace_back(verts[members[0]], verts[members[1]]);
    } else {
      throw SolverError("support component with " + std::to_string(members.size()) +
                        " vertices; expected only K1 and K2 components");
    }
  }
  return out;
}

struct ResidualRange {
  std::vector<std::pair<double, double>> ranges;  // [min, max] of y_i over SOL
  bool w_unique = false;
};

inline ResidualRange w_residual_range(const SolutionSet& sol, double tol = 1e-7) {
  const auto& inst = sol.instance();
  ResidualRange out;
  out.w_unique = true;
  for (Eigen::Index i = 0; i < inst.size(); ++i) {
    const Eigen::VectorXd row = inst.M.row(i).transpose();
    const double lo = sol.optimize(row, Sense::minimize).value + inst.q(i);
    const double hi = sol.optimize(row, Sense::maximize).value + inst.q(i);
    out.ranges.emplace_back(lo, hi);
    if (hi - lo > tol) out.w_unique = false;
  }
  return out;
}

inline ResidualRange w_residual_range(const LcpInstance& inst, EnumerationOptions opts = {}, double tol = 1e-7) {
  return w_residual_range(SolutionSet(inst, std::move(opts)), tol);
}

}  // namespace lcpg

#endif  // LCPG_LCP_HPP
