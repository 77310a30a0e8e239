#pragma once

#include <Eigen/Dense>

#include "taupade/basis.hpp"

namespace taupade {

/// Tridiagonal shift matrix mu_phi of size (n+1) x (n+1): row i holds
/// (gamma_i, beta_i, alpha_i) so that the coefficients of t*s(t) are
/// mu_phi^T * c.  Truncation drops the alpha_n coupling of row n into
/// index n+1; callers needing exact products must oversize n.
inline Eigen::MatrixXd shift_matrix(const OrthoBasis& basis, int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    if (i > 0) m(i, i - 1) = basis.gamma(i);
    m(i, i) = basis.beta(i);
    if (i < n) m(i, i + 1) = basis.alpha(i);
  }
  return m;
}

/// Strictly lower triangular differentiation matrix eta_phi of size
/// (n+1) x (n+1): row i holds the coefficients of d(phi_i)/dt in the basis,
/// built from
///
///   eta_{i+1,j} = (alpha_{j-1} eta_{i,j-1} + (beta_j - beta_i) eta_{i,j}
///                  + gamma_{j+1} eta_{i,j+1} - gamma_i eta_{i-1,j}) / alpha_i
///   eta_{i+1,i} = (alpha_{i-1} eta_{i,i-1} + 1) / alpha_i
///
/// with eta_{0,j} = 0, eta_{1,0} = 1/alpha_0, eta_{1,j} = 0 (j >= 1).
inline Eigen::MatrixXd derivative_matrix(const OrthoBasis& basis, int n) {
  Eigen::MatrixXd eta = Eigen::MatrixXd::Zero(n + 1, n + 1);
  if (n >= 1) eta(1, 0) = 1.0 / basis.alpha(0);
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      double acc = (basis.beta(j) - basis.beta(i)) * eta(i, j) +
                   basis.gamma(j + 1) * eta(i, j + 1) - basis.gamma(i) * eta(i - 1, j);
      if (j > 0) acc += basis.alpha(j - 1) * eta(i, j - 1);
      eta(i + 1, j) = acc / basis.alpha(i);
    }
    eta(i + 1, i) = (basis.alpha(i - 1) * eta(i, i - 1) + 1.0) / basis.alpha(i);
  }
  return eta;
}

}  // namespace taupade
