#ifndef LCPG_LP_HPP
#define LCPG_LP_HPP

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lcpg/error.hpp"

namespace lcpg {

enum class Sense { minimize, maximize };
enum class RowType { greater_equal, less_equal, equal };

struct LinearConstraint {
  Eigen::VectorXd coeffs;
  RowType type = RowType::greater_equal;
  double rhs = 0.0;
};

/// optimize objective·x subject to rows and lower <= x <= upper (lower finite).
struct LinearProgram {
  Eigen::VectorXd objective;
  Sense sense = Sense::maximize;
  std::vector<LinearConstraint> rows;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static LinearProgram with_variables(Eigen::Index n) {
    LinearProgram lp;
    lp.objective = Eigen::VectorXd::Zero(n);
    lp.lower = Eigen::VectorXd::Zero(n);
    lp.upper = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    return lp;
  }

  Eigen::Index num_variables() const { return objective.size(); }

  void add_row(Eigen::VectorXd coeffs, RowType type, double rhs) {
    rows.push_back({std::move(coeffs), type, rhs});
  }
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  Eigen::VectorXd x;
  /// Objective of the dual solution recovered from the optimal basis.
  double dual_value = 0.0;
  std::size_t pivots = 0;
  bool used_bland = false;

  bool optimal() const { return status == LpStatus::optimal; }
  double duality_gap() const { return std::abs(value - dual_value); }
};

struct LpOptions {
  double feasibility_tol = 1e-7;
  double pivot_tol = 1e-9;
  double optimality_tol = 1e-9;
  std::size_t max_pivots = 100000;
};

namespace detail {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Dense two-phase tableau simplex. Columns: structural, slack/surplus, artificial.
class SimplexTableau {
 public:
  SimplexTableau(Tableau t, std::vector<Eigen::Index> basis, Eigen::Index structural, Eigen::Index first_artificial,
                 const LpOptions& opts)
      : t_(std::move(t)),
        basis_(std::move(basis)),
        structural_(structural),
        first_artificial_(first_artificial),
        opts_(opts) {}

  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  double rhs(Eigen::Index i) const { return t_(i, cols()); }
  const std::vector<Eigen::Index>& basis() const { return basis_; }
  std::size_t pivots() const { return pivots_; }
  bool used_bland() const { return used_bland_; }

  /// Minimizes cost·x using only columns below column_limit as entering candidates.
  LpStatus minimize(const Eigen::VectorXd& cost, Eigen::Index column_limit) {
    const Eigen::Index m = rows();
    const Eigen::Index rhs_col = cols();
    t_.row(m).setZero();
    t_.row(m).head(cost.size()) = cost.transpose();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double cb = basis_[static_cast<std::size_t>(i)] < cost.size() ? cost(basis_[static_cast<std::size_t>(i)]) : 0.0;
      if (cb != 0.0) t_.row(m) -= cb * t_.row(i);
    }
    std::size_t degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (pivots_ >= opts_.max_pivots) return LpStatus::iteration_limit;
      Eigen::Index enter = -1;
      double best = -opts_.optimality_tol;
      for (Eigen::Index j = 0; j < column_limit; ++j) {
        const double d = t_(m, j);
        if (d < best) {
          enter = j;
          if (bland) break;
          best = d;
        }
      }
      if (enter < 0) return LpStatus::optimal;
      Eigen::Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= opts_.pivot_tol) continue;
        const double ratio = std::max(0.0, t_(i, rhs_col)) / a;
        if (leave < 0 || ratio < best_ratio - 1e-12) {
          leave = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-12) {
          const bool prefer = bland ? basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]
                                    : a > t_(leave, enter);
          if (prefer) {
            leave = i;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      if (best_ratio <= 1e-12) {
        if (++degenerate_run > 10 * static_cast<std::size_t>(std::max<Eigen::Index>(structural_, 1))) {
          bland = true;
          used_bland_ = true;
        }
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    t_(r, c) = 1.0;
    basis_[static_cast<std::size_t>(r)] = c;
    ++pivots_;
  }

  /// After phase one: pivots basic artificials out, dropping redundant rows.
  /// Returns the original indices of the rows that remain.
  std::vector<Eigen::Index> expel_artificials(std::vector<Eigen::Index> row_ids) {
    for (Eigen::Index i = 0; i < rows();) {
      if (basis_[static_cast<std::size_t>(i)] < first_artificial_) {
        ++i;
        continue;
      }
      Eigen::Index col = -1;
      double best = opts_.pivot_tol;
      for (Eigen::Index j = 0; j < first_artificial_; ++j) {
        if (std::abs(t_(i, j)) > best) {
          best = std::abs(t_(i, j));
          col = j;
        }
      }
      if (col >= 0) {
        pivot(i, col);
        ++i;
        continue;
      }
      // Redundant row: remove it.
      Tableau smaller(t_.rows() - 1, t_.cols());
      smaller.topRows(i) = t_.topRows(i);
      smaller.bottomRows(t_.rows() - 1 - i) = t_.bottomRows(t_.rows() - 1 - i);
      t_ = std::move(smaller);
      basis_.erase(basis_.begin() + i);
      row_ids.erase(row_ids.begin() + i);
    }
    return row_ids;
  }

 private:
  Tableau t_;
  std::vector<Eigen::Index> basis_;
  Eigen::Index structural_;
  Eigen::Index first_artificial_;
  LpOptions opts_;
  std::size_t pivots_ = 0;
  bool used_bland_ = false;
};

}  // namespace detail

/// Dense two-phase simplex with Dantzig pricing and a Bland's-rule fallback once
/// more than 10·n consecutive degenerate pivots occur. The dual objective is
/// recovered from the final basis by solving Bᵀy = c_B on the original data.
inline LpResult lp_solve(const LinearProgram& lp, const LpOptions& opts = {}) {
  const Eigen::Index n = lp.num_variables();
  if (lp.lower.size() != n || lp.upper.size() != n) throw InputError("lp_solve: bound vectors have wrong length");
  for (const auto& row : lp.rows) {
    if (row.coeffs.size() != n) throw InputError("lp_solve: constraint row has wrong length");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!std::isfinite(lp.lower(j))) throw InputError("lp_solve: lower bounds must be finite");
    if (lp.upper(j) < lp.lower(j)) {
      LpResult r;
      r.status = LpStatus::infeasible;
      return r;
    }
  }

  // Standard-form rows over shifted variables x' = x - lower >= 0.
  struct StdRow {
    Eigen::VectorXd a;
    RowType type;
    double rhs;
  };
  std::vector<StdRow> std_rows;
  for (const auto& row : lp.rows) std_rows.push_back({row.coeffs, row.type, row.rhs - row.coeffs.dot(lp.lower)});
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::isfinite(lp.upper(j))) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
      a(j) = 1.0;
      std_rows.push_back({a, RowType::less_equal, lp.upper(j) - lp.lower(j)});
    }
  }
  for (auto& r : std_rows) {
    if (r.rhs < 0.0) {
      r.a = -r.a;
      r.rhs = -r.rhs;
      if (r.type == RowType::greater_equal) {
        r.type = RowType::less_equal;
      } else if (r.type == RowType::less_equal) {
        r.type = RowType::greater_equal;
      }
    }
  }

  const auto m = static_cast<Eigen::Index>(std_rows.size());
  Eigen::Index n_slack = 0, n_art = 0;
  for (const auto& r : std_rows) {
    if (r.type != RowType::equal) ++n_slack;
    if (r.type != RowType::less_equal) ++n_art;
  }
  const Eigen::Index first_slack = n;
  const Eigen::Index first_art = n + n_slack;
  const Eigen::Index total = first_art + n_art;

  detail::Tableau t = detail::Tableau::Zero(m + 1, total + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  Eigen::Index slack = first_slack, art = first_art;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& r = std_rows[static_cast<std::size_t>(i)];
    t.row(i).head(n) = r.a.transpose();
    t(i, total) = r.rhs;
    if (r.type == RowType::less_equal) {
      t(i, slack) = 1.0;
      basis[static_cast<std::size_t>(i)] = slack++;
    } else {
      if (r.type == RowType::greater_equal) t(i, slack++) = -1.0;
      t(i, art) = 1.0;
      basis[static_cast<std::size_t>(i)] = art++;
    }
  }

  detail::SimplexTableau tab(std::move(t), std::move(basis), n, first_art, opts);
  LpResult result;
  std::vector<Eigen::Index> kept(static_cast<std::size_t>(m));
  std::iota(kept.begin(), kept.end(), Eigen::Index{0});

  if (n_art > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
    phase1.tail(n_art).setOnes();
    const auto st = tab.minimize(phase1, total);
    if (st == LpStatus::iteration_limit) {
      result.status = st;
      result.pivots = tab.pivots();
      return result;
    }
    double infeasibility = 0.0;
    double scale = 1.0;
    for (Eigen::Index i = 0; i < tab.rows(); ++i) {
      if (tab.basis()[static_cast<std::size_t>(i)] >= first_art) infeasibility += std::max(0.0, tab.rhs(i));
    }
    for (const auto& r : std_rows) scale = std::max(scale, std::abs(r.rhs));
    if (infeasibility > opts.feasibility_tol * scale) {
      result.status = LpStatus::infeasible;
      result.pivots = tab.pivots();
      return result;
    }
    kept = tab.expel_artificials(kept);
  }

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(first_art);
  cost.head(n) = lp.sense == Sense::minimize ? lp.objective : Eigen::VectorXd(-lp.objective);
  const auto st = tab.minimize(cost, first_art);
  result.pivots = tab.pivots();
  result.used_bland = tab.used_bland();
  if (st != LpStatus::optimal) {
    result.status = st;
    return result;
  }

  Eigen::VectorXd xs = Eigen::VectorXd::Zero(first_art);
  for (Eigen::Index i = 0; i < tab.rows(); ++i) {
    const auto b = tab.basis()[static_cast<std::size_t>(i)];
    if (b < first_art) xs(b) = std::max(0.0, tab.rhs(i));
  }
  result.status = LpStatus::optimal;
  result.x = lp.lower + xs.head(n);
  result.value = lp.objective.dot(result.x);

  // Dual recovery: columns of the standard-form matrix restricted to kept rows.
  const auto mk = static_cast<Eigen::Index>(kept.size());
  if (mk > 0) {
    Eigen::MatrixXd a_std = Eigen::MatrixXd::Zero(mk, first_art);
    Eigen::VectorXd b_std(mk);
    std::vector<Eigen::Index> slack_of_row(static_cast<std::size_t>(m), -1);
    Eigen::Index s = first_slack;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (std_rows[static_cast<std::size_t>(i)].type != RowType::equal) slack_of_row[static_cast<std::size_t>(i)] = s++;
    }
    for (Eigen::Index k = 0; k < mk; ++k) {
      const auto i = kept[static_cast<std::size_t>(k)];
      const auto& r = std_rows[static_cast<std::size_t>(i)];
      a_std.row(k).head(n) = r.a.transpose();
      if (r.type == RowType::less_equal) a_std(k, slack_of_row[static_cast<std::size_t>(i)]) = 1.0;
      if (r.type == RowType::greater_equal) a_std(k, slack_of_row[static_cast<std::size_t>(i)]) = -1.0;
      b_std(k) = r.rhs;
    }
    Eigen::MatrixXd basis_cols(mk, mk);
    Eigen::VectorXd cb(mk);
    for (Eigen::Index k = 0; k < mk; ++k) {
      const auto col = tab.basis()[static_cast<std::size_t>(k)];
      basis_cols.col(k) = a_std.col(col);
      cb(k) = cost(col);
    }
    const Eigen::VectorXd y = basis_cols.transpose().fullPivLu().solve(cb);
    const double std_dual = b_std.dot(y);
    const double offset = lp.objective.dot(lp.lower);
    result.dual_value = (lp.sense == Sense::minimize ? std_dual : -std_dual) + offset;
  } else {
    result.dual_value = result.value;
  }
  return result;
}

/// {x : Fx >= b, 0 <= x <= u}.
struct HPolytope {
  Eigen::MatrixXd F;
  Eigen::VectorXd b;
  Eigen::VectorXd u;
  std::string kind;

  Eigen::Index dimension() const { return u.size(); }

  void validate() const {
    if (F.cols() != u.size() || F.rows() != b.size()) throw InputError("HPolytope: inconsistent dimensions");
    for (Eigen::Index j = 0; j < u.size(); ++j) {
      if (!std::isfinite(u(j))) throw InputError("HPolytope: upper bounds must be finite");
    }
  }

  bool contains(const Eigen::VectorXd& x, double tol) const {
    if (x.size() != dimension()) return false;
    if ((x.array() < -tol).any() || ((x - u).array() > tol).any()) return false;
    return ((F * x - b).array() >= -tol).all();
  }
};

/// Optimizes c·x over the polytope, optionally intersected with extra rows.
inline LpResult lp_solve(const Eigen::VectorXd& c, Sense sense, const HPolytope& p,
                         const std::vector<LinearConstraint>& extra = {}, const LpOptions& opts = {}) {
  p.validate();
  if (c.size() != p.dimension()) throw InputError("lp_solve: objective has wrong length");
  LinearProgram lp = LinearProgram::with_variables(p.dimension());
  lp.objective = c;
  lp.sense = sense;
  lp.upper = p.u;
  for (Eigen::Index i = 0; i < p.F.rows(); ++i) lp.add_row(p.F.row(i).transpose(), RowType::greater_equal, p.b(i));
  for (const auto& row : extra) lp.rows.push_back(row);
  return lp_solve(lp, opts);
}

}  // namespace lcpg

#endif  // LCPG_LP_HPP
