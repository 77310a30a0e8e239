// Test-only reference machinery, independent of the library's primary
// computation paths: Gauss quadrature for weighted inner products and series
// coefficients, finite differences, and deterministic random series.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "taupade/series.hpp"

namespace oracle {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Chebyshev rule: exact for polynomial integrands of degree <= 2m-1
// under the weight (1-t^2)^{-1/2}.
inline QuadRule gauss_chebyshev(int m) {
  QuadRule r;
  r.nodes.resize(m);
  r.weights.assign(m, std::numbers::pi / m);
  for (int k = 1; k <= m; ++k)
    r.nodes[k - 1] = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * m));
  return r;
}

// Gauss-Legendre rule: nodes by Golub-Welsch (eigenvalues of the symmetric
// tridiagonal Jacobi matrix), weights from w = 2 / ((1-x^2) P_m'(x)^2).
inline QuadRule gauss_legendre(int m) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(m - 1);
  for (int k = 1; k < m; ++k) sub(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  QuadRule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  for (int k = 0; k < m; ++k) {
    const double x = es.eigenvalues()(k);
    double pm1 = 1.0, pm = x;  // P_0, P_1
    for (int j = 1; j < m; ++j) {
      const double next = ((2.0 * j + 1.0) * x * pm - j * pm1) / (j + 1.0);
      pm1 = pm;
      pm = next;
    }
    const double dpm = m * (x * pm - pm1) / (x * x - 1.0);
    r.nodes[k] = x;
    r.weights[k] = 2.0 / ((1.0 - x * x) * dpm * dpm);
  }
  return r;
}

inline QuadRule quad_for(const taupade::OrthoBasis& basis, int m) {
  return basis.kind() == taupade::BasisKind::chebyshev ? gauss_chebyshev(m)
                                                       : gauss_legendre(m);
}

// integral of f*g under the basis weight.
inline double quad_inner(const std::function<double(double)>& f,
                         const std::function<double(double)>& g,
                         const taupade::OrthoBasis& basis, int m) {
  const QuadRule r = quad_for(basis, m);
  double acc = 0.0;
  for (int k = 0; k < m; ++k) acc += r.weights[k] * f(r.nodes[k]) * g(r.nodes[k]);
  return acc;
}

inline double quad_weighted_norm(const std::function<double(double)>& f,
                                 const taupade::OrthoBasis& basis, int m) {
  return std::sqrt(quad_inner(f, f, basis, m));
}

// Expansion coefficients c_i = <f, phi_i>/mu_i by quadrature.
inline std::vector<double> quad_coeffs(const std::function<double(double)>& f,
                                       const taupade::OrthoBasis& basis, int count, int m) {
  const QuadRule r = quad_for(basis, m);
  std::vector<std::vector<double>> phis(m);
  for (int k = 0; k < m; ++k) phis[k] = taupade::basis_values(basis, count - 1, r.nodes[k]);
  std::vector<double> c(count);
  for (int i = 0; i < count; ++i) {
    double acc = 0.0;
    for (int k = 0; k < m; ++k) acc += r.weights[k] * f(r.nodes[k]) * phis[k][i];
    c[i] = acc / basis.mu(i);
  }
  return c;
}

inline double central_diff(const std::function<double(double)>& f, double t, double h = 1e-4) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

// Random series with geometrically decaying coefficients (smooth test
// functions with O(1) values).
inline taupade::CoeffSeries random_smooth_series(const taupade::OrthoBasis& basis, int degree,
                                                 std::mt19937& rng, double decay = 0.7) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(static_cast<size_t>(degree) + 1);
  double scale = 1.0;
  for (int k = 0; k <= degree; ++k, scale *= decay) c[static_cast<size_t>(k)] = scale * u(rng);
  return taupade::CoeffSeries{basis, std::move(c)};
}

inline taupade::CoeffSeries random_series(const taupade::OrthoBasis& basis, int degree,
                                          std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(static_cast<size_t>(degree) + 1);
  for (double& v : c) v = u(rng);
  return taupade::CoeffSeries{basis, std::move(c)};
}

}  // namespace oracle
