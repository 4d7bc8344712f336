#ifndef LCPG_LIFT_HPP
#define LCPG_LIFT_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lcpg/graph.hpp"
#include "lcpg/lp.hpp"
#include "lcpg/polytope.hpp"
#include "lcpg/sdp.hpp"

namespace lcpg {

/// Variables of the lifted space: x_0..x_{n-1}, then w_ij (i < j) in lexicographic order.
class LiftedIndex {
 public:
  explicit LiftedIndex(Eigen::Index n) : n_(n) {}
  Eigen::Index n() const { return n_; }
  Eigen::Index size() const { return n_ + n_ * (n_ - 1) / 2; }
  Eigen::Index x(Eigen::Index i) const { return i; }
  /// w_ij; w_ii is x_i.
  Eigen::Index w(Eigen::Index i, Eigen::Index j) const {
    if (i == j) return i;
    if (i > j) std::swap(i, j);
    return n_ + i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }
  /// (row, col) of variable v in L(x, W) = [[1, x'], [x, W]].
  std::pair<Eigen::Index, Eigen::Index> matrix_entry(Eigen::Index v) const {
    if (v < n_) return {0, v + 1};
    Eigen::Index r = v - n_;
    Eigen::Index i = 0;
    while (r >= n_ - 1 - i) {
      r -= n_ - 1 - i;
      ++i;
    }
    return {i + 1, i + 2 + r};
  }

 private:
  Eigen::Index n_;
};

/// sum coeff * var + constant >= 0 over the lifted variables.
struct LiftedConstraint {
  std::vector<std::pair<Eigen::Index, double>> terms;  // sorted by variable, no zeros
  double constant = 0.0;

  double evaluate(const Eigen::VectorXd& z) const {
    double s = constant;
    for (const auto& [v, c] : terms) s += c * z(v);
    return s;
  }
};

struct LinearizedPolytope {
  Eigen::Index n = 0;
  std::vector<LiftedConstraint> constraints;
  /// diag(W) = x is imposed when the lifted set is optimized.
  bool diag_link = true;
  /// Rows (-beta, a) of equations a'x = beta holding on the source polytope.
  /// Every lifted point then satisfies L(x, W) (-beta, a) = 0.
  Eigen::MatrixXd hull;

  LiftedIndex index() const { return LiftedIndex(n); }

  /// Lifted coordinates of (x, W) with w_ij taken from W.
  Eigen::VectorXd coordinates(const Eigen::VectorXd& x, const Eigen::MatrixXd& W) const {
    const LiftedIndex idx(n);
    Eigen::VectorXd z(idx.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      z(i) = x(i);
      for (Eigen::Index j = i + 1; j < n; ++j) z(idx.w(i, j)) = W(i, j);
    }
    return z;
  }

  bool contains(const Eigen::VectorXd& x, const Eigen::MatrixXd& W, double tol) const {
    const auto z = coordinates(x, W);
    return std::all_of(constraints.begin(), constraints.end(),
                       [&](const LiftedConstraint& c) { return c.evaluate(z) >= -tol; });
  }
};

namespace detail {

// Linear row a'x - beta >= 0 in the original space.
struct AffineRow {
  Eigen::VectorXd a;
  double beta = 0.0;
};

inline std::vector<AffineRow> rows_with_box(const HPolytope& p) {
  p.validate();
  const auto n = p.dimension();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(p.u(j) >= 0.0 && p.u(j) <= 1.0)) throw InputError("lift requires box bounds inside [0, 1]");
  }
  std::vector<AffineRow> rows;
  for (Eigen::Index r = 0; r < p.F.rows(); ++r) rows.push_back({p.F.row(r).transpose(), p.b(r)});
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(k) = 1.0;
    rows.push_back({e, 0.0});
    rows.push_back({-e, -p.u(k)});
  }
  return rows;
}

// x_i * (a'x - beta) when `times_x`, else (1 - x_i) * (a'x - beta), linearized.
inline LiftedConstraint lift_product(const LiftedIndex& idx, Eigen::Index i, const AffineRow& row, bool times_x) {
  std::map<Eigen::Index, double> acc;
  double constant = 0.0;
  const auto n = idx.n();
  if (times_x) {
    acc[idx.x(i)] += -row.beta;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (row.a(k) != 0.0) acc[idx.w(i, k)] += row.a(k);
    }
  } else {
    constant = -row.beta;
    acc[idx.x(i)] += row.beta;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (row.a(k) == 0.0) continue;
      acc[idx.x(k)] += row.a(k);
      acc[idx.w(i, k)] -= row.a(k);
    }
  }
  LiftedConstraint c;
  c.constant = constant;
  for (const auto& [v, coef] : acc) {
    if (coef != 0.0) c.terms.emplace_back(v, coef);
  }
  return c;
}

// Positive scaling so that the largest magnitude is 1, rounded for hashing.
inline std::vector<std::pair<Eigen::Index, long long>> normalized_key(const LiftedConstraint& c) {
  double scale = std::abs(c.constant);
  for (const auto& t : c.terms) scale = std::max(scale, std::abs(t.second));
  std::vector<std::pair<Eigen::Index, long long>> key;
  key.reserve(c.terms.size() + 1);
  for (const auto& [v, coef] : c.terms) key.emplace_back(v, std::llround(coef / scale * 1e10));
  key.emplace_back(-1, std::llround(c.constant / scale * 1e10));
  return key;
}

}  // namespace detail

/// Rows and box rows of p that hold with equality on all of p, as (-beta, a).
/// One LP per row; throws InputError when p is empty.
inline Eigen::MatrixXd implicit_equalities(const HPolytope& p, double tol = 1e-9) {
  const auto rows = detail::rows_with_box(p);
  const auto n = p.dimension();
  std::vector<Eigen::VectorXd> found;
  for (const auto& row : rows) {
    // a'x >= beta on p; it is an equation iff max a'x = beta.
    const auto r = lp_solve(row.a, Sense::maximize, p, {});
    if (r.status == LpStatus::infeasible) throw InputError("polytope is empty");
    if (!r.optimal()) throw SolverError("implicit equality LP failed");
    if (r.value - row.beta <= tol * (1.0 + std::abs(row.beta))) {
      Eigen::VectorXd v(n + 1);
      v << -row.beta, row.a;
      found.push_back(std::move(v));
    }
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(found.size()), n + 1);
  for (std::size_t k = 0; k < found.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = found[k].transpose();
  return out;
}

struct LiftOptions {
  bool deduplicate = true;
  /// Record the implicit equalities of p for facial reduction of the SDP.
  bool detect_equalities = true;
};

/// Lovász–Schrijver lift: every row of p and every box row is multiplied by
/// x_i and by (1 - x_i), then x_i^2 -> x_i and x_i x_j -> w_ij. Products that
/// reduce to a constant c >= 0 are dropped.
inline LinearizedPolytope ls_lift(const HPolytope& p, const LiftOptions& opts = {}) {
  const auto rows = detail::rows_with_box(p);
  LinearizedPolytope out;
  out.n = p.dimension();
  const LiftedIndex idx(out.n);
  std::set<std::vector<std::pair<Eigen::Index, long long>>> seen;
  for (Eigen::Index i = 0; i < out.n; ++i) {
    for (const auto& row : rows) {
      for (bool times_x : {true, false}) {
        auto c = detail::lift_product(idx, i, row, times_x);
        if (c.terms.empty() && c.constant >= 0.0) continue;
        if (opts.deduplicate && !seen.insert(detail::normalized_key(c)).second) continue;
        out.constraints.push_back(std::move(c));
      }
    }
  }
  out.hull = opts.detect_equalities ? implicit_equalities(p) : Eigen::MatrixXd(0, out.n + 1);
  return out;
}

struct ForcingPresolve {
  LinearizedPolytope reduced;
  /// Lifted variables fixed by forcing rows, with their values.
  std::vector<std::pair<Eigen::Index, double>> fixed;
};

/// Forcing-row presolve. Lower bounds come from single-variable rows; a row
/// whose coefficients are all negative and whose largest possible activity is
/// zero pins each of its variables to its lower bound. Fixed variables are
/// substituted out and rows that become constant are dropped.
inline ForcingPresolve presolve_forcing(const LinearizedPolytope& lp, double tol = 1e-12) {
  ForcingPresolve out;
  out.reduced = lp;
  auto& rows = out.reduced.constraints;
  std::map<Eigen::Index, double> fixed;
  for (bool changed = true; changed;) {
    changed = false;
    std::map<Eigen::Index, double> lower;
    for (const auto& c : rows) {
      if (c.terms.size() == 1 && c.terms[0].second > 0.0) {
        const double lb = -c.constant / c.terms[0].second;
        auto it = lower.find(c.terms[0].first);
        if (it == lower.end() || lb > it->second) lower[c.terms[0].first] = lb;
      }
    }
    for (const auto& c : rows) {
      bool all_negative = !c.terms.empty();
      double max_activity = c.constant;
      for (const auto& [v, coef] : c.terms) {
        auto it = lower.find(v);
        if (coef >= 0.0 || it == lower.end()) {
          all_negative = false;
          break;
        }
        max_activity += coef * it->second;
      }
      if (!all_negative) continue;
      if (max_activity < -tol) throw InputError("lifted system is infeasible");
      if (max_activity > tol) continue;
      for (const auto& [v, coef] : c.terms) {
        if (fixed.emplace(v, lower[v]).second) changed = true;
      }
    }
    if (!changed) break;
    std::vector<LiftedConstraint> next;
    std::set<std::vector<std::pair<Eigen::Index, long long>>> seen;
    for (auto& c : rows) {
      LiftedConstraint r;
      r.constant = c.constant;
      for (const auto& [v, coef] : c.terms) {
        auto it = fixed.find(v);
        if (it == fixed.end()) {
          r.terms.emplace_back(v, coef);
        } else {
          r.constant += coef * it->second;
        }
      }
      if (r.terms.empty()) {
        if (r.constant < -1e-9) throw InputError("lifted system is infeasible");
        continue;
      }
      if (!seen.insert(detail::normalized_key(r)).second) continue;
      next.push_back(std::move(r));
    }
    rows = std::move(next);
  }
  out.fixed.assign(fixed.begin(), fixed.end());
  return out;
}

/// Rows of the lifted linear system that hold with equality at every feasible
/// point, ignoring the semidefinite condition. One LP finds them: with
/// homogenized variables (y, lam), maximize sum t subject to
/// c'y + constant lam - t >= 0, lam >= 1, 0 <= t <= 1. A row whose slack can
/// be made positive at some point gets t = 1, the rest get t = 0.
/// Needs every lifted variable bounded below by zero, which holds for lifts of
/// polytopes inside the unit box.
inline std::vector<bool> lifted_implicit_equalities(const LinearizedPolytope& lp) {
  const auto rows = static_cast<Eigen::Index>(lp.constraints.size());
  std::vector<bool> eq(lp.constraints.size(), false);
  if (rows == 0) return eq;
  const Eigen::Index nz = lp.index().size();
  const Eigen::Index lam = nz;
  LinearProgram prog = LinearProgram::with_variables(nz + 1 + rows);
  prog.lower(lam) = 1.0;
  for (Eigen::Index k = 0; k < rows; ++k) {
    prog.upper(nz + 1 + k) = 1.0;
    prog.objective(nz + 1 + k) = 1.0;
  }
  for (Eigen::Index k = 0; k < rows; ++k) {
    const auto& c = lp.constraints[static_cast<std::size_t>(k)];
    Eigen::VectorXd a = Eigen::VectorXd::Zero(prog.num_variables());
    for (const auto& [v, coef] : c.terms) a(v) = coef;
    a(lam) = c.constant;
    a(nz + 1 + k) = -1.0;
    prog.add_row(std::move(a), RowType::greater_equal, 0.0);
  }
  const auto r = lp_solve(prog);
  if (r.status == LpStatus::infeasible) throw InputError("lifted system is infeasible");
  if (!r.optimal()) throw SolverError(std::string("implicit equality LP: ") + to_string(r.status));
  for (Eigen::Index k = 0; k < rows; ++k) eq[static_cast<std::size_t>(k)] = r.x(nz + 1 + k) < 0.5;
  return eq;
}

/// True when every constraint of `a` appears in `b` up to positive scaling.
inline bool lifted_subset(const LinearizedPolytope& a, const LinearizedPolytope& b) {
  std::set<std::vector<std::pair<Eigen::Index, long long>>> keys;
  for (const auto& c : b.constraints) keys.insert(detail::normalized_key(c));
  return std::all_of(a.constraints.begin(), a.constraints.end(),
                     [&](const LiftedConstraint& c) { return keys.count(detail::normalized_key(c)) > 0; });
}

inline bool lifted_equivalent(const LinearizedPolytope& a, const LinearizedPolytope& b) {
  return a.n == b.n && lifted_subset(a, b) && lifted_subset(b, a);
}

struct LiftedOptimum {
  double value = 0.0;
  Eigen::VectorXd x;
  Eigen::MatrixXd W;
  SdpResult sdp;
  std::size_t constraints = 0;
};

/// Assembles the SDP in L(x, W) (order n + 1, index 0 is the homogenizing 1).
/// Variables listed in `fixed` become equalities.
inline SdpProblem lifted_sdp(const LinearizedPolytope& lp, const Eigen::VectorXd& weights,
                             const std::vector<std::pair<Eigen::Index, double>>& fixed = {},
                             const std::vector<bool>& equalities = {}) {
  const auto n = lp.n;
  const LiftedIndex idx(n);
  SdpProblem prob;
  prob.dim = n + 1;
  prob.C = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    prob.C(0, i + 1) = 0.5 * weights(i);
    prob.C(i + 1, 0) = 0.5 * weights(i);
  }
  prob.add({{0, 0, 1.0}}, SdpRowType::equal, 1.0);
  if (lp.diag_link) {
    for (Eigen::Index i = 0; i < n; ++i) prob.add({{i + 1, i + 1, 1.0}, {0, i + 1, -1.0}}, SdpRowType::equal, 0.0);
  }
  for (const auto& [v, value] : fixed) {
    const auto [r, col] = idx.matrix_entry(v);
    prob.add({{r, col, 1.0}}, SdpRowType::equal, value);
  }
  for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
    const auto& c = lp.constraints[k];
    const bool eq = k < equalities.size() && equalities[k];
    std::vector<SymEntry> terms;
    terms.reserve(c.terms.size());
    for (const auto& [v, coef] : c.terms) {
      const auto [r, col] = idx.matrix_entry(v);
      terms.push_back({r, col, coef});
    }
    prob.add(std::move(terms), eq ? SdpRowType::equal : SdpRowType::greater_equal, -c.constant);
  }
  return prob;
}

/// max w'x over N+(P) = {x | exists W, diag(W) = x, L(x, W) ⪰ 0, (x, W) lifted-feasible}.
///
/// Before solving, forcing rows are presolved into equalities, L(x, W) is
/// restricted to the orthogonal complement of the recorded equation vectors
/// and inequalities tight at the analytic center become equalities, so the
/// interior point method sees a problem with interior points. `points` are
/// 0/1 vectors known to lie in P; their rank-one lifts guard the last step.
/// Above this many rows the exact equality LP is too slow to use as a retry.
inline constexpr std::size_t kMaxExactEqualityRows = 1500;

namespace detail {

inline LiftedOptimum finish_lifted(const LinearizedPolytope& lp, LiftedOptimum out) {
  out.value = out.sdp.primal_value;
  if (lp.n > 0 && out.sdp.X.size() > 0) {
    out.x = out.sdp.X.row(0).segment(1, lp.n).transpose();
    out.W = out.sdp.X.bottomRightCorner(lp.n, lp.n);
  } else {
    out.x = Eigen::VectorXd::Zero(lp.n);
    out.W = Eigen::MatrixXd::Zero(lp.n, lp.n);
  }
  return out;
}

}  // namespace detail

inline LiftedOptimum max_weight_over_lifted(const LinearizedPolytope& lp, const Eigen::VectorXd& weights,
                                            const SdpOptions& opts = {},
                                            const std::vector<Eigen::VectorXd>& points = {}) {
  if (weights.size() != lp.n) throw InputError("weight vector has wrong dimension");
  LiftedOptimum out;
  out.constraints = lifted_sdp(lp, weights).constraints.size();
  const auto pre = presolve_forcing(lp);
  const auto prob = lifted_sdp(pre.reduced, weights, pre.fixed);
  if (prob.constraints.size() > opts.max_constraints) {
    throw LimitError("lifted SDP has " + std::to_string(prob.constraints.size()) + " constraints, limit is " +
                     std::to_string(opts.max_constraints));
  }
  const Eigen::MatrixXd V = lp.hull.rows() > 0 ? null_space_basis(lp.hull) : Eigen::MatrixXd::Identity(lp.n + 1, lp.n + 1);
  std::vector<Eigen::VectorXd> witnesses;
  witnesses.reserve(points.size());
  for (const auto& x : points) {
    Eigen::VectorXd h(lp.n + 1);
    h << 1.0, x;
    witnesses.push_back(std::move(h));
  }
  const auto fr = reduce_face(prob, V, opts, witnesses);
  out.sdp = sdp_solve_on_face(fr.problem, fr.V, opts);
  out.sdp.primal_residual = std::max(out.sdp.primal_residual, primal_violation(prob, out.sdp.X));
  if (!out.sdp.converged() && pre.reduced.constraints.size() <= kMaxExactEqualityRows) {
    // Retry with every linearly implied equality declared up front.
    std::vector<bool> implied;
    try {
      implied = lifted_implicit_equalities(pre.reduced);
    } catch (const std::exception&) {
      return detail::finish_lifted(lp, std::move(out));
    }
    const auto exact = lifted_sdp(pre.reduced, weights, pre.fixed, implied);
    const auto fr2 = reduce_face(exact, V, opts, witnesses);
    auto retry = sdp_solve_on_face(fr2.problem, fr2.V, opts);
    retry.primal_residual = std::max(retry.primal_residual, primal_violation(prob, retry.X));
    auto score = [](const SdpResult& r) {
      return std::max({r.relative_gap(), 10.0 * r.primal_residual, 10.0 * r.dual_residual});
    };
    if (retry.converged() || score(retry) < score(out.sdp)) out.sdp = std::move(retry);
  }
  return detail::finish_lifted(lp, std::move(out));
}

inline LiftedOptimum max_l1_over_lifted(const LinearizedPolytope& lp, const SdpOptions& opts = {},
                                        const std::vector<Eigen::VectorXd>& points = {}) {
  return max_weight_over_lifted(lp, Eigen::VectorXd::Ones(lp.n), opts, points);
}

enum class ThetaVariant { lovasz, prime, star, frac };

inline const char* to_string(ThetaVariant v) {
  switch (v) {
    case ThetaVariant::lovasz: return "lovasz";
    case ThetaVariant::prime: return "prime";
    case ThetaVariant::star: return "star";
    case ThetaVariant::frac: return "frac";
  }
  return "unknown";
}

inline ThetaVariant theta_variant_from_string(const std::string& s) {
  if (s == "lovasz") return ThetaVariant::lovasz;
  if (s == "prime") return ThetaVariant::prime;
  if (s == "star") return ThetaVariant::star;
  if (s == "frac") return ThetaVariant::frac;
  throw InputError("unknown theta variant '" + s + "'");
}

struct ThetaReport {
  ThetaVariant variant = ThetaVariant::lovasz;
  double value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  std::size_t iterations = 0;
  std::size_t n = 0;
  std::size_t constraints = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::string status;
  bool converged = false;
  /// Projected x for the lifted variants; empty otherwise.
  std::vector<double> witness;
  /// max |W_ik| over edges (lifted variants) or |X_ik| over edges (ϑ, ϑ′).
  double max_edge_entry = 0.0;
};

inline constexpr std::size_t kMaxThetaVertices = 30;
/// Up to this order the 0/1 points of the polytope are enumerated to guard facial reduction.
inline constexpr std::size_t kMaxWitnessVertices = 20;

namespace detail {

inline void check_theta_size(const Graph& g) {
  if (g.size() > kMaxThetaVertices) throw LimitError("theta variants support at most 30 vertices");
}

inline ThetaReport make_report(ThetaVariant v, const Graph& g, const SdpResult& r, std::size_t constraints) {
  ThetaReport rep;
  rep.variant = v;
  rep.value = r.primal_value;
  rep.dual_value = r.dual_value;
  rep.gap = r.gap();
  rep.iterations = r.iterations;
  rep.n = g.size();
  rep.constraints = constraints;
  rep.primal_residual = r.primal_residual;
  rep.dual_residual = r.dual_residual;
  rep.converged = r.converged();
  rep.status = rep.converged ? "optimal" : to_string(r.status);
  return rep;
}

inline ThetaReport theta_sdp(const Graph& g, bool nonnegative, const SdpOptions& opts) {
  check_theta_size(g);
  const auto n = static_cast<Eigen::Index>(g.size());
  SdpProblem prob;
  prob.dim = n;
  prob.C = Eigen::MatrixXd::Ones(n, n);
  std::vector<SymEntry> trace;
  for (Eigen::Index i = 0; i < n; ++i) trace.push_back({i, i, 1.0});
  if (n > 0) prob.add(std::move(trace), SdpRowType::equal, 1.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (g.adjacent(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
        prob.add({{i, j, 1.0}}, SdpRowType::equal, 0.0);
      } else if (nonnegative) {
        prob.add({{i, j, 1.0}}, SdpRowType::greater_equal, 0.0);
      }
    }
  }
  const auto r = sdp_solve(prob, opts);
  auto rep = make_report(nonnegative ? ThetaVariant::prime : ThetaVariant::lovasz, g, r, prob.constraints.size());
  for (const auto& [i, j] : g.edges()) {
    rep.max_edge_entry = std::max(rep.max_edge_entry, std::abs(r.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
  }
  return rep;
}

inline ThetaReport theta_lifted(const Graph& g, ThetaVariant v, const HPolytope& p, const SdpOptions& opts) {
  check_theta_size(g);
  std::vector<Eigen::VectorXd> points;
  if (g.size() <= kMaxWitnessVertices) {
    for (const auto s : binary_points(p)) {
      Eigen::VectorXd x(p.dimension());
      for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = static_cast<double>((s >> j) & 1U);
      points.push_back(std::move(x));
    }
  }
  const auto opt = max_l1_over_lifted(ls_lift(p), opts, points);
  auto rep = make_report(v, g, opt.sdp, opt.constraints);
  rep.witness.assign(opt.x.data(), opt.x.data() + opt.x.size());
  for (const auto& [i, j] : g.edges()) {
    rep.max_edge_entry = std::max(rep.max_edge_entry, std::abs(opt.W(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
  }
  return rep;
}

}  // namespace detail

/// ϑ(G) = max <J, X> s.t. tr X = 1, X_ij = 0 on edges, X ⪰ 0.
inline ThetaReport theta_lovasz(const Graph& g, const SdpOptions& opts = {}) { return detail::theta_sdp(g, false, opts); }

/// ϑ′(G): ϑ with X >= 0 entrywise.
inline ThetaReport theta_prime(const Graph& g, const SdpOptions& opts = {}) { return detail::theta_sdp(g, true, opts); }

/// ϑ*(G) = max e'x over N+(MAXIS(G)).
inline ThetaReport theta_star(const Graph& g, const SdpOptions& opts = {}) {
  return detail::theta_lifted(g, ThetaVariant::star, maxis_polytope(g), opts);
}

/// ϑ_FRAC(G) = max e'x over N+(FRAC(G)).
inline ThetaReport theta_frac(const Graph& g, const SdpOptions& opts = {}) {
  return detail::theta_lifted(g, ThetaVariant::frac, frac_polytope(g), opts);
}

inline ThetaReport theta(const Graph& g, ThetaVariant v, const SdpOptions& opts = {}) {
  switch (v) {
    case ThetaVariant::lovasz: return theta_lovasz(g, opts);
    case ThetaVariant::prime: return theta_prime(g, opts);
    case ThetaVariant::star: return theta_star(g, opts);
    case ThetaVariant::frac: return theta_frac(g, opts);
  }
  throw InputError("unknown theta variant");
}

/// Which hand-expanded families of the lifted MAXIS system to build.
enum class FamilySet {
  shared,        // the five families from box rows and (A+I)x >= e
  degree_jk,     // the two degree-row families closing with sum_k a_jk
  degree_ik      // the same two families closing with sum_k a_ik
};

/// The hand-expanded inequality families of the lifted MAXIS system for all
/// i, j, with w_ii read as x_i. The degree-row families expand
/// x_i (d_j(1 - x_j) - C_j(x) + 1) and (1 - x_i)(...), where
/// C_j(x) = x_j + sum_k a_jk x_k.
inline LinearizedPolytope transcribed_maxis_families(const Graph& g, FamilySet which) {
  const auto n = static_cast<Eigen::Index>(g.size());
  const LiftedIndex idx(n);
  LinearizedPolytope out;
  out.n = n;
  auto a = [&](Eigen::Index i, Eigen::Index j) {
    return g.adjacent(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) ? 1.0 : 0.0;
  };
  std::map<Eigen::Index, double> acc;
  auto emit = [&](double constant) {
    LiftedConstraint c;
    c.constant = constant;
    for (const auto& [v, coef] : acc) {
      if (coef != 0.0) c.terms.emplace_back(v, coef);
    }
    acc.clear();
    if (c.terms.empty() && c.constant >= 0.0) return;
    out.constraints.push_back(std::move(c));
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (which == FamilySet::shared) {
        // w_ij >= 0
        acc[idx.w(i, j)] += 1.0;
        emit(0.0);
        // x_i - w_ij >= 0
        acc[idx.x(i)] += 1.0;
        acc[idx.w(i, j)] -= 1.0;
        emit(0.0);
        // w_ij + 1 - x_i - x_j >= 0
        acc[idx.w(i, j)] += 1.0;
        acc[idx.x(i)] -= 1.0;
        acc[idx.x(j)] -= 1.0;
        emit(1.0);
        // w_ij - x_i + sum_k a_jk w_ik >= 0
        acc[idx.w(i, j)] += 1.0;
        acc[idx.x(i)] -= 1.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          if (a(j, k) != 0.0) acc[idx.w(i, k)] += a(j, k);
        }
        emit(0.0);
        // x_j + x_i - w_ij - 1 + sum_k a_jk (x_k - w_ik) >= 0
        acc[idx.x(j)] += 1.0;
        acc[idx.x(i)] += 1.0;
        acc[idx.w(i, j)] -= 1.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          if (a(j, k) == 0.0) continue;
          acc[idx.x(k)] += a(j, k);
          acc[idx.w(i, k)] -= a(j, k);
        }
        emit(-1.0);
        continue;
      }
      const double dj = static_cast<double>(g.degree(static_cast<std::size_t>(j)));
      auto s = [&](Eigen::Index k) { return which == FamilySet::degree_jk ? a(j, k) : a(i, k); };
      // (d_j + 1)(x_i - w_ij) - sum_k s_k w_ik >= 0
      acc[idx.x(i)] += dj + 1.0;
      acc[idx.w(i, j)] -= dj + 1.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (s(k) != 0.0) acc[idx.w(i, k)] -= s(k);
      }
      emit(0.0);
      // (d_j + 1)(1 + w_ij - x_j - x_i) + sum_k s_k (w_ik - x_k) >= 0
      acc[idx.w(i, j)] += dj + 1.0;
      acc[idx.x(j)] -= dj + 1.0;
      acc[idx.x(i)] -= dj + 1.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (s(k) == 0.0) continue;
        acc[idx.w(i, k)] += s(k);
        acc[idx.x(k)] -= s(k);
      }
      emit(dj + 1.0);
    }
  }
  return out;
}

inline LinearizedPolytope lifted_union(LinearizedPolytope a, const LinearizedPolytope& b) {
  a.constraints.insert(a.constraints.end(), b.constraints.begin(), b.constraints.end());
  return a;
}

/// {0 <= x <= e, (A+I)x >= e, d_j(1 - x_j) + 1 - C_j(x) >= 0}: the upper rows
/// use D in place of D - I, so each is MAXIS's row plus 1 - x_j >= 0.
inline HPolytope maxis_polytope_loose(const Graph& g) {
  HPolytope p = maxis_polytope(g);
  const auto n = p.dimension();
  for (Eigen::Index j = 0; j < n; ++j) {
    p.F(n + j, j) -= 1.0;
    p.b(n + j) -= 1.0;
  }
  p.kind = "maxis_loose";
  return p;
}

/// The lower half {0 <= x <= e, (A+I)x >= e} of MAXIS(G).
inline HPolytope maxis_lower_rows(const Graph& g) {
  HPolytope p = maxis_polytope(g);
  const auto n = p.dimension();
  HPolytope q;
  q.kind = "maxis_lower";
  q.F = p.F.topRows(n);
  q.b = p.b.head(n);
  q.u = p.u;
  return q;
}

struct FamilyComparison {
  /// The five shared families equal the lift of the lower rows and sit inside the lift of MAXIS(G).
  bool shared_match = false;
  /// Shared families plus the a_jk degree families equal the lift of the loose rows.
  bool jk_reading_matches_loose_lift = false;
  /// The same test for the a_ik reading.
  bool ik_reading_matches_loose_lift = false;
  /// Degree-family constraints of the a_ik reading absent from the a_jk reading.
  std::size_t ik_only = 0;
  /// Every constraint of the loose lift is implied: MAXIS(G) lift constraints are never looser.
  bool loose_lift_implied_by_maxis_lift = false;
};

inline FamilyComparison compare_transcribed_families(const Graph& g) {
  FamilyComparison out;
  const auto shared = transcribed_maxis_families(g, FamilySet::shared);
  const auto jk = transcribed_maxis_families(g, FamilySet::degree_jk);
  const auto ik = transcribed_maxis_families(g, FamilySet::degree_ik);
  const auto lower = ls_lift(maxis_lower_rows(g));
  const auto tight = ls_lift(maxis_polytope(g));
  const auto loose = ls_lift(maxis_polytope_loose(g));
  out.shared_match = lifted_equivalent(shared, lower) && lifted_subset(shared, tight);
  out.jk_reading_matches_loose_lift = lifted_equivalent(lifted_union(shared, jk), loose);
  out.ik_reading_matches_loose_lift = lifted_equivalent(lifted_union(shared, ik), loose);
  std::set<std::vector<std::pair<Eigen::Index, long long>>> keys;
  for (const auto& c : jk.constraints) keys.insert(detail::normalized_key(c));
  for (const auto& c : ik.constraints) {
    if (!keys.count(detail::normalized_key(c))) ++out.ik_only;
  }
  // Each loose degree row is a MAXIS degree row plus the box row 1 - x_j >= 0, and
  // both products distribute, so the loose lift is a sum of tight-lift rows.
  const auto loose_rows = maxis_polytope_loose(g);
  const auto tight_rows = maxis_polytope(g);
  const auto n = tight_rows.dimension();
  const LiftedIndex idx(n);
  bool implied = true;
  for (Eigen::Index i = 0; i < n && implied; ++i) {
    for (Eigen::Index j = 0; j < n && implied; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e(j) = -1.0;
      const detail::AffineRow box{e, -1.0};
      const detail::AffineRow tight_row{tight_rows.F.row(n + j).transpose(), tight_rows.b(n + j)};
      const detail::AffineRow loose_row{loose_rows.F.row(n + j).transpose(), loose_rows.b(n + j)};
      for (bool times_x : {true, false}) {
        const auto l = detail::lift_product(idx, i, loose_row, times_x);
        const auto t = detail::lift_product(idx, i, tight_row, times_x);
        const auto bx = detail::lift_product(idx, i, box, times_x);
        std::map<Eigen::Index, double> diff;
        for (const auto& [v, c] : l.terms) diff[v] += c;
        for (const auto& [v, c] : t.terms) diff[v] -= c;
        for (const auto& [v, c] : bx.terms) diff[v] -= c;
        double dc = l.constant - t.constant - bx.constant;
        for (const auto& [v, c] : diff) implied = implied && std::abs(c) < 1e-12;
        implied = implied && std::abs(dc) < 1e-12;
      }
    }
  }
  out.loose_lift_implied_by_maxis_lift = implied;
  return out;
}

}  // namespace lcpg

#endif  // LCPG_LIFT_HPP
