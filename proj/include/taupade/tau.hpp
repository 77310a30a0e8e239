#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "taupade/operators.hpp"
#include "taupade/series.hpp"

namespace taupade {

/// Condition-estimate threshold above which a solve is rejected instead of
/// silently returning a bad solution.
inline constexpr double kConditionLimit = 1e14;

/// One functional term: weight * y^(order)(point).
struct ConditionTerm {
  double point = 0.0;
  int order = 0;
  double weight = 1.0;
};

/// Side condition sum_terms weight * y^(order)(point) = value.
struct Condition {
  std::vector<ConditionTerm> terms;
  double value = 0.0;
};

/// Linear differential operator of order nu with polynomial coefficients,
///   D = sum_{i=0}^{nu} p_i(t) d^i/dt^i,
/// together with the right-hand side f (expanded in the working basis) and
/// the nu side conditions of the problem D y = f.
struct PolyOperator {
  int nu = 0;
  std::vector<std::vector<double>> p;  ///< p[i] = monomial coefficients of p_i(t)
  CoeffSeries rhs;
  std::vector<Condition> conditions;

  int max_poly_degree() const {
    int d = 0;
    for (const auto& pi : p) {
      int di = static_cast<int>(pi.size()) - 1;
      while (di > 0 && pi[static_cast<size_t>(di)] == 0.0) --di;
      d = std::max(d, std::max(di, 0));
    }
    return d;
  }
};

/// Degree-n solution of the projected problem, with per-condition residuals
/// and the condition estimate of the solved system.
struct TauSolution {
  PolyOperator problem;
  int n = 0;
  CoeffSeries coeffs;  ///< c_0^(n) .. c_n^(n)
  std::vector<double> condition_residuals;
  double system_condition_estimate = 0.0;
};

namespace detail {

inline void validate_operator(const PolyOperator& op, const OrthoBasis& basis, int n) {
  if (op.nu < 0) throw ConfigError("operator: nu must be nonnegative");
  if (static_cast<int>(op.p.size()) != op.nu + 1)
    throw ConfigError("operator: expected nu+1 coefficient polynomials, got " +
                      std::to_string(op.p.size()));
  bool lead_nonzero = false;
  for (double v : op.p[static_cast<size_t>(op.nu)]) lead_nonzero = lead_nonzero || v != 0.0;
  if (!lead_nonzero) throw ConfigError("operator: p_nu is identically zero");
  if (static_cast<int>(op.conditions.size()) != op.nu)
    throw ConfigError("operator: expected nu = " + std::to_string(op.nu) +
                      " conditions, got " + std::to_string(op.conditions.size()));
  for (const Condition& c : op.conditions) {
    if (c.terms.empty()) throw ConfigError("condition: needs at least one term");
    for (const ConditionTerm& t : c.terms) {
      if (t.order < 0 || t.order > op.nu - 1)
        throw ConfigError("condition: derivative order must lie in [0, nu-1]");
      if (!(t.point >= -1.0 && t.point <= 1.0))
        throw ConfigError("condition: point must lie in [-1, 1]");
    }
  }
  if (!op.rhs.coeffs.empty() && !(op.rhs.basis == basis))
    throw ConfigError("operator: rhs is expanded in a different basis");
  if (n < op.nu) throw ConfigError("tau_solve: need n >= nu");
}

/// p(mu) as a matrix polynomial in the shift matrix, by Horner's scheme.
inline Eigen::MatrixXd poly_in_shift(const std::vector<double>& mono,
                                     const Eigen::MatrixXd& mu) {
  const auto w = mu.rows();
  if (mono.empty()) return Eigen::MatrixXd::Zero(w, w);
  Eigen::MatrixXd m = mono.back() * Eigen::MatrixXd::Identity(w, w);
  for (int k = static_cast<int>(mono.size()) - 2; k >= 0; --k) {
    m = (mu * m).eval();
    m.diagonal().array() += mono[static_cast<size_t>(k)];
  }
  return m;
}

/// Pi = sum_i eta^i p_i(mu) assembled at working dimension w x w.  Products of
/// truncated band matrices corrupt trailing rows/columns, so callers oversize
/// w and keep only a leading block.
inline Eigen::MatrixXd pi_working(const PolyOperator& op, const OrthoBasis& basis, int w) {
  const Eigen::MatrixXd eta = derivative_matrix(basis, w - 1);
  const Eigen::MatrixXd mu = shift_matrix(basis, w - 1);
  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(w, w);
  Eigen::MatrixXd eta_pow = Eigen::MatrixXd::Identity(w, w);
  for (int i = 0; i <= op.nu; ++i) {
    pi += eta_pow * poly_in_shift(op.p[static_cast<size_t>(i)], mu);
    if (i < op.nu) eta_pow = (eta * eta_pow).eval();
  }
  return pi;
}

/// Leading rows x cols block of Pi, exact (free of truncation artifacts).
inline Eigen::MatrixXd pi_block(const PolyOperator& op, const OrthoBasis& basis,
                                int rows, int cols) {
  const int w = std::max(rows, cols) + op.nu + op.max_poly_degree() + 1;
  return pi_working(op, basis, w).topLeftCorner(rows, cols);
}

}  // namespace detail

/// Leading (n+1) x (n+1) block of Pi_phi = sum_i eta_phi^i p_i(mu_phi),
/// assembled at an oversized working dimension and truncated.
inline Eigen::MatrixXd build_pi(const PolyOperator& op, const OrthoBasis& basis, int n) {
  detail::validate_operator(op, basis, n);
  return detail::pi_block(op, basis, n + 1, n + 1);
}

/// Row vector g with g_i = sum_terms weight * (d^order phi_i / dt^order)(point),
/// i = 0..n.  One column of the condition block G of Gamma_phi.
inline Eigen::VectorXd condition_row(const OrthoBasis& basis, const Condition& cond, int n) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n + 1);
  Eigen::MatrixXd eta;  // built lazily; only needed for derivative terms
  for (const ConditionTerm& term : cond.terms) {
    const std::vector<double> phis = basis_values(basis, n, term.point);
    Eigen::Map<const Eigen::VectorXd> phi(phis.data(), n + 1);
    if (term.order == 0) {
      g += term.weight * phi;
      continue;
    }
    if (eta.size() == 0) eta = derivative_matrix(basis, n);
    Eigen::VectorXd v = eta * phi;
    for (int r = 1; r < term.order; ++r) v = (eta * v).eval();
    g += term.weight * v;
  }
  return g;
}

/// Solve the degree-n projected problem: the square system Gamma_phi^T x = rhs
/// with Gamma_phi = [G | Pi-bar], where G holds the nu condition columns and
/// Pi-bar the first n+1-nu columns of Pi.  Row-pivoted LU with a condition
/// estimate; estimates above kConditionLimit raise SingularSystemError.
inline TauSolution tau_solve(const PolyOperator& op, const OrthoBasis& basis, int n) {
  detail::validate_operator(op, basis, n);
  const int nu = op.nu;
  const int rows = n + 1;

  const Eigen::MatrixXd pi = detail::pi_block(op, basis, rows, rows);
  Eigen::MatrixXd gamma_t(rows, rows);
  for (int c = 0; c < nu; ++c)
    gamma_t.row(c) = condition_row(basis, op.conditions[static_cast<size_t>(c)], n).transpose();
  for (int j = 0; j + nu <= n; ++j) gamma_t.row(nu + j) = pi.col(j).transpose();

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
  for (int c = 0; c < nu; ++c) rhs(c) = op.conditions[static_cast<size_t>(c)].value;
  for (int j = 0; j + nu <= n; ++j)
    rhs(nu + j) = j < op.rhs.size() ? op.rhs.coeffs[static_cast<size_t>(j)] : 0.0;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(gamma_t);
  const double rc = lu.rcond();
  const double cond = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (!(cond < kConditionLimit))
    throw SingularSystemError(
        "tau_solve: system is singular or ill-conditioned (condition estimate " +
            std::to_string(cond) + ")",
        cond);
  const Eigen::VectorXd x = lu.solve(rhs);

  TauSolution sol;
  sol.problem = op;
  sol.n = n;
  sol.coeffs = CoeffSeries{basis, std::vector<double>(x.data(), x.data() + rows)};
  sol.system_condition_estimate = cond;
  for (int c = 0; c < nu; ++c) {
    const double got = gamma_t.row(c).dot(x);
    sol.condition_residuals.push_back(
        std::abs(got - op.conditions[static_cast<size_t>(c)].value));
  }
  return sol;
}

/// Residual tau_n = D y_n - f as a series of degree n + maxdeg(p_i); its
/// coefficients 0..n-nu vanish to solver tolerance, so y_n solves the
/// perturbed equation D y_n = f + tau_n exactly.
inline CoeffSeries residual(const PolyOperator& op, const TauSolution& sol) {
  const OrthoBasis& basis = sol.coeffs.basis;
  const int n = sol.n;
  const int cols = n + 1 + op.max_poly_degree();
  const Eigen::MatrixXd pi = detail::pi_block(op, basis, n + 1, cols);
  Eigen::Map<const Eigen::VectorXd> c(sol.coeffs.coeffs.data(), n + 1);
  Eigen::VectorXd tau = pi.transpose() * c;
  for (int j = 0; j < cols && j < op.rhs.size(); ++j)
    tau(j) -= op.rhs.coeffs[static_cast<size_t>(j)];
  return CoeffSeries{basis, std::vector<double>(tau.data(), tau.data() + cols)};
}

/// A-posteriori error estimator: the degree-(n+m) solution of D e = -tau_n
/// with homogeneous versions of all side conditions.
inline CoeffSeries error_estimate(const PolyOperator& op, const TauSolution& sol, int m) {
  if (m < 1) throw ConfigError("error_estimate: need m >= 1");
  const CoeffSeries tau = residual(op, sol);
  PolyOperator homog = op;
  homog.rhs = CoeffSeries{sol.coeffs.basis, std::vector<double>(tau.coeffs)};
  for (double& v : homog.rhs.coeffs) v = -v;
  for (Condition& c : homog.conditions) c.value = 0.0;
  return tau_solve(homog, sol.coeffs.basis, sol.n + m).coeffs;
}

}  // namespace taupade
