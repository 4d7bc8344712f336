#ifndef LCPG_SDP_HPP
#define LCPG_SDP_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "lcpg/error.hpp"

namespace lcpg {

/// Coefficient v on the matrix variable entry X(row, col), row <= col.
/// Off-diagonal entries act on X(row, col) once; the constraint matrix carries v/2 in both positions.
struct SymEntry {
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  double value = 0.0;
};

enum class SdpRowType { equal, greater_equal };

/// <A, X> (= or >=) rhs. A is given by sparse `terms`, or by the symmetric
/// matrix `dense` when that is non-empty.
struct SdpConstraint {
  std::vector<SymEntry> terms;
  SdpRowType type = SdpRowType::equal;
  double rhs = 0.0;
  Eigen::MatrixXd dense;

  bool is_dense() const { return dense.size() > 0; }

  Eigen::MatrixXd matrix(Eigen::Index dim) const {
    if (is_dense()) return dense;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& t : terms) {
      if (t.row == t.col) {
        A(t.row, t.row) += t.value;
      } else {
        A(t.row, t.col) += 0.5 * t.value;
        A(t.col, t.row) += 0.5 * t.value;
      }
    }
    return A;
  }
};

/// maximize <C, X> s.t. <A_k, X> = b_k or >= b_k, X ⪰ 0 of order `dim`.
struct SdpProblem {
  Eigen::Index dim = 0;
  Eigen::MatrixXd C;
  std::vector<SdpConstraint> constraints;

  void add(std::vector<SymEntry> terms, SdpRowType type, double rhs) {
    constraints.push_back({std::move(terms), type, rhs, Eigen::MatrixXd()});
  }

  void validate() const {
    if (C.rows() != dim || C.cols() != dim) throw InputError("SDP objective has wrong order");
    if ((C - C.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw InputError("SDP objective must be symmetric");
    for (const auto& c : constraints) {
      if (c.is_dense()) {
        if (c.dense.rows() != dim || c.dense.cols() != dim) throw InputError("SDP constraint matrix has wrong order");
        if ((c.dense - c.dense.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
          throw InputError("SDP constraint matrix must be symmetric");
        }
        continue;
      }
      for (const auto& t : c.terms) {
        if (t.row < 0 || t.row > t.col || t.col >= dim) throw InputError("SDP constraint entry out of range");
      }
    }
  }
};

struct SdpOptions {
  double gap_tol = 1e-9;
  double feas_tol = 1e-9;
  std::size_t max_iterations = 150;
  std::size_t max_dim = 35;
  std::size_t max_constraints = 3000;
  /// Step fraction towards the boundary of the cone.
  double step_fraction = 0.98;
  /// Iterates keep every complementary product above this fraction of mu.
  double neighborhood = 1e-3;
  /// Schur pivots below this fraction of the largest are treated as zero.
  long double pivot_threshold = 1e-20L;
  /// Factor the Schur complement in long double.
  bool extended_precision = false;
  /// Repeat a solve that misses SdpResult::converged with extended precision.
  bool precision_fallback = true;
  /// Iterative refinement steps for the double precision Schur solve.
  int refinement_steps = 2;
  /// Near convergence, stop once the best iterate has not improved tenfold in this many iterations.
  std::size_t stall_iterations = 12;
};

enum class SdpStatus { optimal, max_iterations, stalled, numerical_failure, infeasible };

inline const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::max_iterations: return "max_iterations";
    case SdpStatus::stalled: return "stalled";
    case SdpStatus::numerical_failure: return "numerical_failure";
    case SdpStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

struct SdpResult {
  SdpStatus status = SdpStatus::numerical_failure;
  double primal_value = 0.0;
  double dual_value = 0.0;
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  Eigen::MatrixXd Z;
  std::size_t iterations = 0;
  double primal_residual = 0.0;  // ||b - A(X)|| / (1 + ||b||)
  double dual_residual = 0.0;    // ||C - A*(y) - Z|| / (1 + ||C||)
  double min_eigenvalue = 0.0;   // of X

  double gap() const { return std::abs(primal_value - dual_value); }
  double relative_gap() const { return gap() / (1.0 + std::abs(primal_value) + std::abs(dual_value)); }
  /// Gap and residuals inside the reporting contract.
  bool converged(double gap_tol = 1e-6, double res_tol = 1e-7) const {
    return gap() <= gap_tol * (1.0 + std::abs(primal_value)) && primal_residual <= res_tol && dual_residual <= res_tol;
  }
};

namespace detail {

// Internal standard form:
//   min <Cm, X>  s.t. <A_k, X> + g_k s_k = b_k,  X ⪰ 0, s >= 0
//   max b'y      s.t. sum y_k A_k + Z = Cm,  g_k y_k + zs_k = 0, Z ⪰ 0, zs >= 0
// with Cm = -C, g_k = -1 on inequality rows and no slack on equalities.
class HkmSolver {
 public:
  HkmSolver(const SdpProblem& p, const SdpOptions& o) : p_(p), opts_(o), m_(p.dim) {
    K_ = static_cast<Eigen::Index>(p.constraints.size());
    b_.resize(K_);
    for (Eigen::Index k = 0; k < K_; ++k) {
      const auto& c = p.constraints[static_cast<std::size_t>(k)];
      b_(k) = c.rhs;
      if (c.type == SdpRowType::greater_equal) {
        slack_row_.push_back(k);
      }
    }
    ns_ = static_cast<Eigen::Index>(slack_row_.size());
    Cm_ = -p.C;
  }

  SdpResult run() {
    SdpResult res;
    const double nrm_b = b_.norm();
    const double nrm_c = Cm_.norm();
    double max_a = 0.0, ratio = 0.0;
    for (Eigen::Index k = 0; k < K_; ++k) {
      const double na = constraint_norm(k);
      max_a = std::max(max_a, na);
      ratio = std::max(ratio, (1.0 + std::abs(b_(k))) / (1.0 + na));
    }
    const double sm = std::sqrt(static_cast<double>(m_));
    const double xi = std::max({10.0, sm, static_cast<double>(m_) * ratio});
    const double eta = std::max({10.0, sm, max_a, nrm_c});
    Eigen::MatrixXd X = xi * Eigen::MatrixXd::Identity(m_, m_);
    Eigen::MatrixXd Z = eta * Eigen::MatrixXd::Identity(m_, m_);
    Eigen::VectorXd xs = Eigen::VectorXd::Constant(ns_, xi);
    Eigen::VectorXd zs = Eigen::VectorXd::Constant(ns_, eta);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(K_);
    const double nu = static_cast<double>(m_ + ns_);

    auto record = [&](std::size_t it) {
      res.X = X;
      res.Z = Z;
      res.y = y;
      res.iterations = it;
      res.primal_value = -(Cm_.cwiseProduct(X)).sum();
      res.dual_value = -b_.dot(y);
      res.primal_residual = primal_residual(X, xs).norm() / (1.0 + nrm_b);
      res.dual_residual = dual_residual_norm(y, Z, zs) / (1.0 + nrm_c);
      res.min_eigenvalue = m_ > 0 ? Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(X, Eigen::EigenvaluesOnly).eigenvalues()(0) : 0.0;
    };
    // Residuals weigh ten times the gap, matching SdpResult::converged.
    auto score = [&](const SdpResult& r) {
      return std::max({r.relative_gap(), 10.0 * r.primal_residual, 10.0 * r.dual_residual});
    };

    SdpResult best;
    bool have_best = false;
    std::size_t last_gain = 0;
    double gain_ref = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0;; ++it) {
      record(it);
      if (!have_best || score(res) < score(best)) {
        best = res;
        have_best = true;
      }
      if (score(best) <= 0.1 * gain_ref) {
        gain_ref = score(best);
        last_gain = it;
      }
      if (res.relative_gap() <= opts_.gap_tol && res.primal_residual <= opts_.feas_tol &&
          res.dual_residual <= opts_.feas_tol) {
        res.status = SdpStatus::optimal;
        return res;
      }
      if (y.norm() > 1e12 || X.norm() > 1e12) {
        best.status = SdpStatus::infeasible;
        return best;
      }
      if (it >= opts_.max_iterations) {
        best.status = SdpStatus::max_iterations;
        return best;
      }
      if (score(best) <= 1e-3 && it - last_gain >= opts_.stall_iterations) {
        best.status = SdpStatus::stalled;
        return best;
      }

      const double mu = ((X.cwiseProduct(Z)).sum() + xs.dot(zs)) / nu;
      Eigen::LLT<Eigen::MatrixXd> zchol(Z);
      if (zchol.info() != Eigen::Success) break;
      const Eigen::MatrixXd Zinv = zchol.solve(Eigen::MatrixXd::Identity(m_, m_));
      const Eigen::VectorXd rp = primal_residual(X, xs);
      const Eigen::MatrixXd Rd = Cm_ - Z - adjoint(y);
      Eigen::VectorXd rds(ns_);
      for (Eigen::Index s = 0; s < ns_; ++s) rds(s) = -zs(s) + y(slack_row_[static_cast<std::size_t>(s)]);

      const Eigen::MatrixXd M = schur(X, Zinv, xs, zs);
      // Diagonally pivoted LDL'; pivots that are negligible next to the largest
      // are treated as zero, which drops the corresponding degenerate direction.
      std::function<Eigen::VectorXd(const Eigen::VectorXd&)> solve;
      if (opts_.extended_precision) {
        solve = pivoted_solver<long double>(M, opts_.pivot_threshold);
      } else {
        solve = pivoted_solver<double>(M, static_cast<double>(opts_.pivot_threshold), opts_.refinement_steps);
      }
      if (!solve) break;

      struct Dir {
        Eigen::MatrixXd dX, dZ;
        Eigen::VectorXd dxs, dzs, dy;
      };
      const Eigen::MatrixXd ZinvRdX = Zinv * Rd * X;
      auto direction = [&](double sigma_mu, const Dir* corr) {
        Eigen::MatrixXd G = sigma_mu * Zinv - X - ZinvRdX;
        if (corr) G -= Zinv * corr->dZ * corr->dX;
        Eigen::VectorXd Gs(ns_);
        for (Eigen::Index s = 0; s < ns_; ++s) {
          Gs(s) = sigma_mu / zs(s) - xs(s) - xs(s) * rds(s) / zs(s);
          if (corr) Gs(s) -= corr->dxs(s) * corr->dzs(s) / zs(s);
        }
        Eigen::VectorXd rhs = rp - apply(G);
        for (Eigen::Index s = 0; s < ns_; ++s) rhs(slack_row_[static_cast<std::size_t>(s)]) += Gs(s);
        Dir d;
        d.dy = solve(rhs);
        const Eigen::MatrixXd S = adjoint(d.dy);
        d.dX = G + Zinv * S * X;
        d.dX = 0.5 * (d.dX + d.dX.transpose()).eval();
        d.dZ = Rd - S;
        d.dxs.resize(ns_);
        d.dzs.resize(ns_);
        for (Eigen::Index s = 0; s < ns_; ++s) {
          const double dyk = d.dy(slack_row_[static_cast<std::size_t>(s)]);
          d.dzs(s) = rds(s) + dyk;
          d.dxs(s) = Gs(s) - xs(s) / zs(s) * dyk;
        }
        return d;
      };
      auto steps = [&](const Dir& d) {
        double ap = std::min(max_step(X, d.dX), ratio_step(xs, d.dxs));
        double ad = std::min(max_step(Z, d.dZ), ratio_step(zs, d.dzs));
        return std::pair{ap, ad};
      };

      const Dir pred = direction(0.0, nullptr);
      auto [ap, ad] = steps(pred);
      ap = std::min(1.0, ap);
      ad = std::min(1.0, ad);
      const double mu_aff = (((X + ap * pred.dX).cwiseProduct(Z + ad * pred.dZ)).sum() +
                             (xs + ap * pred.dxs).dot(zs + ad * pred.dzs)) /
                            nu;
      double sigma = std::pow(std::max(0.0, mu_aff) / mu, 3);
      sigma = std::clamp(sigma, 0.0, 1.0);
      const Dir d = direction(sigma * mu, &pred);
      auto [sp, sd] = steps(d);
      const double tau = opts_.step_fraction;
      sp = std::min(1.0, tau * sp);
      sd = std::min(1.0, tau * sd);
      if (!std::isfinite(sp) || !std::isfinite(sd) || (sp < 1e-12 && sd < 1e-12)) break;
      // Backtrack until every complementary pair stays within a wide neighborhood of the central path.
      Eigen::MatrixXd Xn, Zn;
      Eigen::VectorXd xsn, zsn;
      for (int back = 0;; ++back) {
        Xn = X + sp * d.dX;
        Zn = Z + sd * d.dZ;
        xsn = xs + sp * d.dxs;
        zsn = zs + sd * d.dzs;
        Xn = 0.5 * (Xn + Xn.transpose()).eval();
        Zn = 0.5 * (Zn + Zn.transpose()).eval();
        if (back >= 40 || centered(Xn, Zn, xsn, zsn, nu)) break;
        sp *= 0.8;
        sd *= 0.8;
      }
      X = std::move(Xn);
      Z = std::move(Zn);
      xs = std::move(xsn);
      zs = std::move(zsn);
      y += sd * d.dy;
    }
    best.status = have_best ? SdpStatus::stalled : SdpStatus::numerical_failure;
    return best;
  }

 private:
  template <typename T>
  static std::function<Eigen::VectorXd(const Eigen::VectorXd&)> pivoted_solver(const Eigen::MatrixXd& M, T threshold,
                                                                               int refine = 0) {
    using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
    auto ldlt = std::make_shared<Eigen::LDLT<Mat>>(M.template cast<T>());
    const Vec D = ldlt->vectorD();
    if (!D.allFinite()) return {};
    const T dmax = D.cwiseAbs().maxCoeff();
    auto Dinv = std::make_shared<Vec>(D.size());
    for (Eigen::Index i = 0; i < D.size(); ++i) (*Dinv)(i) = D(i) > threshold * dmax ? T(1) / D(i) : T(0);
    auto once = [ldlt, Dinv](const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
      Vec v = ldlt->transpositionsP() * rhs.template cast<T>();
      ldlt->matrixL().solveInPlace(v);
      v = v.cwiseProduct(*Dinv);
      ldlt->matrixU().solveInPlace(v);
      v = ldlt->transpositionsP().transpose() * v;
      return v.template cast<double>();
    };
    if (refine == 0) return once;
    auto Mc = std::make_shared<const Eigen::MatrixXd>(M);
    return [once, Mc, refine](const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
      Eigen::VectorXd v = once(rhs);
      for (int r = 0; r < refine; ++r) v += once(rhs - *Mc * v);
      return v;
    };
  }

  double constraint_norm(Eigen::Index k) const {
    const auto& con = p_.constraints[static_cast<std::size_t>(k)];
    if (con.is_dense()) return con.dense.norm();
    double s = 0.0;
    for (const auto& t : p_.constraints[static_cast<std::size_t>(k)].terms) {
      s += t.row == t.col ? t.value * t.value : 0.5 * t.value * t.value;
    }
    return std::sqrt(s);
  }

  double inner(Eigen::Index k, const Eigen::MatrixXd& G) const {
    const auto& con = p_.constraints[static_cast<std::size_t>(k)];
    if (con.is_dense()) return con.dense.cwiseProduct(G).sum();
    double s = 0.0;
    for (const auto& t : p_.constraints[static_cast<std::size_t>(k)].terms) {
      s += t.row == t.col ? t.value * G(t.row, t.row) : 0.5 * t.value * (G(t.row, t.col) + G(t.col, t.row));
    }
    return s;
  }

  Eigen::VectorXd apply(const Eigen::MatrixXd& G) const {
    Eigen::VectorXd out(K_);
    for (Eigen::Index k = 0; k < K_; ++k) out(k) = inner(k, G);
    return out;
  }

  Eigen::MatrixXd adjoint(const Eigen::VectorXd& y) const {
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(m_, m_);
    for (Eigen::Index k = 0; k < K_; ++k) {
      if (y(k) == 0.0) continue;
      const auto& con = p_.constraints[static_cast<std::size_t>(k)];
      if (con.is_dense()) {
        S += y(k) * con.dense;
        continue;
      }
      for (const auto& t : p_.constraints[static_cast<std::size_t>(k)].terms) {
        if (t.row == t.col) {
          S(t.row, t.row) += y(k) * t.value;
        } else {
          S(t.row, t.col) += 0.5 * y(k) * t.value;
          S(t.col, t.row) += 0.5 * y(k) * t.value;
        }
      }
    }
    return S;
  }

  Eigen::VectorXd primal_residual(const Eigen::MatrixXd& X, const Eigen::VectorXd& xs) const {
    Eigen::VectorXd r = b_ - apply(X);
    for (Eigen::Index s = 0; s < ns_; ++s) r(slack_row_[static_cast<std::size_t>(s)]) += xs(s);
    return r;
  }

  double dual_residual_norm(const Eigen::VectorXd& y, const Eigen::MatrixXd& Z, const Eigen::VectorXd& zs) const {
    double sq = (Cm_ - Z - adjoint(y)).squaredNorm();
    for (Eigen::Index s = 0; s < ns_; ++s) {
      const double r = -zs(s) + y(slack_row_[static_cast<std::size_t>(s)]);
      sq += r * r;
    }
    return std::sqrt(sq);
  }

  // M_kl = tr(A_k Z^-1 A_l X) plus xs/zs on slack diagonals.
  Eigen::MatrixXd schur(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Zinv, const Eigen::VectorXd& xs,
                        const Eigen::VectorXd& zs) const {
    Eigen::MatrixXd M(K_, K_);
    Eigen::MatrixXd H(m_, m_);
    for (Eigen::Index l = 0; l < K_; ++l) {
      H.setZero();
      const auto& con = p_.constraints[static_cast<std::size_t>(l)];
      if (con.is_dense()) H.noalias() = Zinv * con.dense * X;
      for (const auto& t : con.terms) {
        if (t.row == t.col) {
          H.noalias() += t.value * Zinv.col(t.row) * X.row(t.row);
        } else {
          H.noalias() += (0.5 * t.value) * Zinv.col(t.row) * X.row(t.col);
          H.noalias() += (0.5 * t.value) * Zinv.col(t.col) * X.row(t.row);
        }
      }
      for (Eigen::Index k = l; k < K_; ++k) {
        const double v = inner(k, H);
        M(k, l) = v;
        M(l, k) = v;
      }
    }
    for (Eigen::Index s = 0; s < ns_; ++s) {
      const auto k = slack_row_[static_cast<std::size_t>(s)];
      M(k, k) += xs(s) / zs(s);
    }
    return M;
  }

  bool centered(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z, const Eigen::VectorXd& xs,
                const Eigen::VectorXd& zs, double nu) const {
    const double mu = ((X.cwiseProduct(Z)).sum() + xs.dot(zs)) / nu;
    const double floor = opts_.neighborhood * mu;
    for (Eigen::Index s = 0; s < ns_; ++s) {
      if (xs(s) * zs(s) < floor) return false;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(X);
    if (llt.info() != Eigen::Success) return false;
    const Eigen::MatrixXd L = llt.matrixL();
    const Eigen::MatrixXd S = L.transpose() * Z * L;
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S, Eigen::EigenvaluesOnly).eigenvalues()(0);
    return lmin >= floor;
  }

  // Largest alpha with P + alpha dP ⪰ 0 (infinity when unrestricted).
  static double max_step(const Eigen::MatrixXd& P, const Eigen::MatrixXd& dP) {
    if (P.rows() == 0) return std::numeric_limits<double>::infinity();
    Eigen::LLT<Eigen::MatrixXd> llt(P);
    if (llt.info() != Eigen::Success) return 0.0;
    const Eigen::MatrixXd L = llt.matrixL();
    Eigen::MatrixXd T = L.triangularView<Eigen::Lower>().solve(dP);
    T = L.triangularView<Eigen::Lower>().solve(T.transpose()).transpose();
    T = 0.5 * (T + T.transpose()).eval();
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(T, Eigen::EigenvaluesOnly).eigenvalues()(0);
    return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
  }

  static double ratio_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
    double a = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (dv(i) < 0.0) a = std::min(a, -v(i) / dv(i));
    }
    return a;
  }

  const SdpProblem& p_;
  SdpOptions opts_;
  Eigen::Index m_;
  Eigen::Index K_ = 0;
  Eigen::Index ns_ = 0;
  Eigen::VectorXd b_;
  Eigen::MatrixXd Cm_;
  std::vector<Eigen::Index> slack_row_;
};

}  // namespace detail

/// Primal-dual interior point (HKM direction, Mehrotra predictor-corrector,
/// infeasible start). Inequalities get nonnegative slack variables.
inline SdpResult sdp_solve(const SdpProblem& prob, const SdpOptions& opts = {}) {
  prob.validate();
  if (static_cast<std::size_t>(prob.dim) > opts.max_dim) {
    throw LimitError("SDP block order " + std::to_string(prob.dim) + " exceeds " + std::to_string(opts.max_dim));
  }
  if (prob.constraints.size() > opts.max_constraints) {
    throw LimitError("SDP has " + std::to_string(prob.constraints.size()) + " constraints, limit is " +
                     std::to_string(opts.max_constraints));
  }
  if (prob.dim == 0) {
    SdpResult r;
    r.status = SdpStatus::optimal;
    return r;
  }
  SdpResult r = detail::HkmSolver(prob, opts).run();
  if (r.status != SdpStatus::optimal && !r.converged() && !opts.extended_precision && opts.precision_fallback) {
    SdpOptions ext = opts;
    ext.extended_precision = true;
    SdpResult r2 = detail::HkmSolver(prob, ext).run();
    const auto worse = [](const SdpResult& a, const SdpResult& b) {
      if (a.converged() != b.converged()) return b.converged();
      return std::max({a.relative_gap(), 10.0 * a.primal_residual, 10.0 * a.dual_residual}) >
             std::max({b.relative_gap(), 10.0 * b.primal_residual, 10.0 * b.dual_residual});
    };
    if (worse(r, r2)) r = std::move(r2);
  }
  return r;
}

/// Orthonormal basis of the common null space of the rows of R.
inline Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& R, double rel_tol = 1e-9) {
  const Eigen::Index m = R.cols();
  if (R.rows() == 0) return Eigen::MatrixXd::Identity(m, m);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = rel_tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > cut ? 1 : 0;
  return svd.matrixV().rightCols(m - rank);
}

/// An SDP restricted to the face {X = V Y V'} together with the map back.
struct FaceRestriction {
  SdpProblem reduced;
  Eigen::MatrixXd V;
  /// Index in the original problem of each reduced constraint.
  std::vector<std::size_t> origin;
};

/// Substitutes X = V Y V' (V with orthonormal columns). Constraints that vanish
/// on the face are dropped, as are linearly dependent equalities.
inline FaceRestriction restrict_to_face(const SdpProblem& prob, const Eigen::MatrixXd& V, double tol = 1e-6,
                                        double dependency_tol = 1e-6) {
  prob.validate();
  if (V.rows() != prob.dim) throw InputError("face basis has wrong row count");
  FaceRestriction out;
  out.V = V;
  const Eigen::Index r = V.cols();
  out.reduced.dim = r;
  out.reduced.C = V.transpose() * prob.C * V;
  out.reduced.C = 0.5 * (out.reduced.C + out.reduced.C.transpose()).eval();

  auto svec = [r](const Eigen::MatrixXd& A) {
    Eigen::VectorXd v(r * (r + 1) / 2);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = i; j < r; ++j) v(k++) = i == j ? A(i, i) : std::sqrt(2.0) * A(i, j);
    }
    return v;
  };
  std::vector<SdpConstraint> eqs, ineqs;
  std::vector<std::size_t> eq_origin, ineq_origin;
  for (std::size_t k = 0; k < prob.constraints.size(); ++k) {
    const auto& c = prob.constraints[k];
    const Eigen::MatrixXd A = c.matrix(prob.dim);
    Eigen::MatrixXd Ar = V.transpose() * A * V;
    Ar = 0.5 * (Ar + Ar.transpose()).eval();
    if (Ar.norm() <= tol * std::max(1.0, A.norm())) {
      const bool ok = c.type == SdpRowType::equal ? std::abs(c.rhs) <= tol : c.rhs <= tol;
      if (!ok) throw SolverError("SDP constraint " + std::to_string(k) + " (rhs " + std::to_string(c.rhs) + ") is violated by every point of the face");
      continue;
    }
    SdpConstraint rc;
    rc.type = c.type;
    rc.rhs = c.rhs;
    rc.dense = std::move(Ar);
    if (c.type == SdpRowType::equal) {
      eqs.push_back(std::move(rc));
      eq_origin.push_back(k);
    } else {
      ineqs.push_back(std::move(rc));
      ineq_origin.push_back(k);
    }
  }
  std::vector<bool> keep(eqs.size(), true);
  if (!eqs.empty()) {
    Eigen::MatrixXd E(r * (r + 1) / 2, static_cast<Eigen::Index>(eqs.size()));
    for (std::size_t k = 0; k < eqs.size(); ++k) E.col(static_cast<Eigen::Index>(k)) = svec(eqs[k].dense);
    // Greedy in original order: keep an equality only if it raises the rank.
    Eigen::MatrixXd basis(E.rows(), 0);
    for (Eigen::Index k = 0; k < E.cols(); ++k) {
      Eigen::VectorXd v = E.col(k);
      if (basis.cols() > 0) v -= basis * (basis.transpose() * v);
      if (basis.cols() > 0) v -= basis * (basis.transpose() * v);
      if (v.norm() <= dependency_tol * std::max(1.0, E.col(k).norm())) {
        keep[static_cast<std::size_t>(k)] = false;
        continue;
      }
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = v.normalized();
    }
  }
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    if (!keep[k]) continue;
    out.reduced.constraints.push_back(std::move(eqs[k]));
    out.origin.push_back(eq_origin[k]);
  }
  for (std::size_t k = 0; k < ineqs.size(); ++k) {
    out.reduced.constraints.push_back(std::move(ineqs[k]));
    out.origin.push_back(ineq_origin[k]);
  }
  return out;
}

/// <A, X> for one constraint.
inline double constraint_activity(const SdpConstraint& c, const Eigen::MatrixXd& X) {
  if (c.is_dense()) return c.dense.cwiseProduct(X).sum();
  double v = 0.0;
  for (const auto& t : c.terms) v += t.row == t.col ? t.value * X(t.row, t.row) : t.value * 0.5 * (X(t.row, t.col) + X(t.col, t.row));
  return v;
}

/// Relative infeasibility of X against every constraint of prob (inequalities count only violation).
inline double primal_violation(const SdpProblem& prob, const Eigen::MatrixXd& X) {
  double sq = 0.0, nb = 0.0;
  for (const auto& c : prob.constraints) {
    const double v = constraint_activity(c, X);
    const double r = c.type == SdpRowType::equal ? c.rhs - v : std::max(0.0, c.rhs - v);
    sq += r * r;
    nb += c.rhs * c.rhs;
  }
  return std::sqrt(sq) / (1.0 + std::sqrt(nb));
}

namespace detail {

// Column space of N written with small rational entries: reduced row echelon
// form of N', each entry snapped to p/q with q <= max_den. Empty when some
// entry has no such approximation.
inline std::optional<Eigen::MatrixXd> rationalize_columns(const Eigen::MatrixXd& N, double tol = 1e-5, int max_den = 64) {
  Eigen::MatrixXd R = N.transpose();
  const Eigen::Index k = R.rows(), m = R.cols();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m && row < k; ++col) {
    Eigen::Index piv = row;
    R.col(col).segment(row, k - row).cwiseAbs().maxCoeff(&piv);
    piv += row;
    if (std::abs(R(piv, col)) < 1e-3) continue;
    R.row(row).swap(R.row(piv));
    R.row(row) /= R(row, col);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (i != row) R.row(i) -= R(i, col) * R.row(row);
    }
    ++row;
  }
  if (row < k) return std::nullopt;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double v = R(i, j);
      bool snapped = false;
      for (int q = 1; q <= max_den && !snapped; ++q) {
        const double p = std::round(v * q);
        if (std::abs(v * q - p) <= tol * q) {
          R(i, j) = p / q;
          snapped = true;
        }
      }
      if (!snapped) return std::nullopt;
    }
  }
  return Eigen::MatrixXd(R.transpose());
}

}  // namespace detail

struct FacialReduction {
  /// prob with inequalities found tight everywhere turned into equalities.
  SdpProblem problem;
  /// Orthonormal basis of the face found, X = V Y V'.
  Eigen::MatrixXd V;
  std::size_t rounds = 0;
  std::size_t equalities = 0;
};

/// Heuristic facial reduction. The zero-objective problem is solved so the
/// iterates approach the analytic center of the feasible set. Inequalities
/// whose slack vanishes there become equalities, and directions along which X
/// vanishes are cut from the face. Repeats until nothing changes.
///
/// `witnesses` are vectors h with h h' known to be feasible. A candidate
/// equality is kept only if every witness satisfies it with equality, and the
/// span of the witnesses is kept in the face exactly, so only the part of the
/// face outside that span comes from computed eigenvectors.
inline FacialReduction reduce_face(const SdpProblem& prob, const Eigen::MatrixXd& V, const SdpOptions& opts = {},
                                   const std::vector<Eigen::VectorXd>& witnesses = {}, double tol = 1e-4,
                                   double eig_tol = 1e-7, std::size_t max_rounds = 4) {
  FacialReduction out{prob, V};
  SdpOptions fo = opts;
  fo.max_iterations = std::min<std::size_t>(opts.max_iterations, 25);
  fo.gap_tol = 1e-3;
  fo.feas_tol = 1e-6;

  Eigen::MatrixXd Vs(V.rows(), 0);
  if (!witnesses.empty()) {
    Eigen::MatrixXd H(V.rows(), static_cast<Eigen::Index>(witnesses.size()));
    for (std::size_t k = 0; k < witnesses.size(); ++k) H.col(static_cast<Eigen::Index>(k)) = witnesses[k];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > 1e-9 * sv(0)) ++rank;
    Vs = svd.matrixU().leftCols(rank);
  }

  for (; out.rounds < max_rounds; ++out.rounds) {
    SdpProblem feas = out.problem;
    feas.C.setZero();
    const auto face = restrict_to_face(feas, out.V);
    if (face.reduced.dim == 0 || face.reduced.constraints.empty()) break;
    const auto r = sdp_solve(face.reduced, fo);
    if (r.status == SdpStatus::infeasible || r.primal_residual > 1e-5 || r.X.size() == 0) break;
    bool changed = false;
    for (std::size_t k = 0; k < face.reduced.constraints.size(); ++k) {
      const auto& c = face.reduced.constraints[k];
      if (c.type != SdpRowType::greater_equal) continue;
      if (c.dense.cwiseProduct(r.X).sum() - c.rhs > tol * (1.0 + std::abs(c.rhs))) continue;
      auto& orig = out.problem.constraints[face.origin[k]];
      const bool vetoed = std::any_of(witnesses.begin(), witnesses.end(), [&](const Eigen::VectorXd& h) {
        return constraint_activity(orig, h * h.transpose()) - orig.rhs > 1e-9 * (1.0 + std::abs(orig.rhs));
      });
      if (!vetoed) {
        orig.type = SdpRowType::equal;
        ++out.equalities;
        changed = true;
      }
    }
    // Complement of the witness span inside the current face.
    Eigen::MatrixXd Q = out.V - Vs * (Vs.transpose() * out.V);
    if (Q.size() > 0) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(Q, Eigen::ComputeThinU);
      const auto& sv = svd.singularValues();
      Eigen::Index rank = 0;
      while (rank < sv.size() && sv(rank) > 1e-9) ++rank;
      Q = svd.matrixU().leftCols(rank);
    }
    const Eigen::MatrixXd X = out.V * r.X * out.V.transpose();
    const double lmax = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(X, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    if (Q.cols() > 0 && lmax > 0.0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q.transpose() * X * Q);
      Eigen::Index drop = 0;
      while (drop < es.eigenvalues().size() && es.eigenvalues()(drop) <= eig_tol * lmax) ++drop;
      if (drop > 0) {
        const Eigen::MatrixXd approx = Q * es.eigenvectors().leftCols(drop);
        auto accept = [&](const std::optional<Eigen::MatrixXd>& cand) {
          if (!cand) return false;
          for (Eigen::Index j = 0; j < cand->cols(); ++j) {
            const Eigen::VectorXd v = cand->col(j);
            if ((X * v).norm() > 1e-5 * lmax * v.norm()) return false;
            for (const auto& h : witnesses) {
              if (std::abs(h.dot(v)) > 1e-9 * h.norm() * v.norm()) return false;
            }
          }
          return true;
        };
        // Fine grid first, then a coarse grid tolerating less accurate eigenvectors.
        auto N = detail::rationalize_columns(approx, 1e-5, 64);
        if (!accept(N)) N = detail::rationalize_columns(approx, 1e-3, 12);
        const bool ok = accept(N);
        if (ok) {
          const Eigen::MatrixXd B = out.V.transpose() * *N;
          out.V = out.V * null_space_basis(B.transpose());
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return out;
}

/// Solves prob over the face {V Y V'}; X, Z are mapped back to full order and
/// the primal residual is measured against the original constraints.
inline SdpResult sdp_solve_on_face(const SdpProblem& prob, const Eigen::MatrixXd& V, const SdpOptions& opts = {}) {
  if (V.cols() == prob.dim) return sdp_solve(prob, opts);
  const auto face = restrict_to_face(prob, V);
  SdpResult r = sdp_solve(face.reduced, opts);
  if (r.X.size() > 0) {
    r.X = V * r.X * V.transpose();
    r.Z = V * r.Z * V.transpose();
  } else {
    r.X = Eigen::MatrixXd::Zero(prob.dim, prob.dim);
    r.Z = Eigen::MatrixXd::Zero(prob.dim, prob.dim);
  }
  r.primal_residual = std::max(r.primal_residual, primal_violation(prob, r.X));
  return r;
}

}  // namespace lcpg

#endif  // LCPG_SDP_HPP
