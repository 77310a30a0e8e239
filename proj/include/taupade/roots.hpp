#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <vector>

#include "taupade/series.hpp"

namespace taupade {

namespace detail {

inline void sort_complex(std::vector<std::complex<double>>& v) {
  std::sort(v.begin(), v.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

}  // namespace detail

/// All complex roots of the polynomial sum_i c_i phi_i, computed as the
/// eigenvalues of the comrade matrix of the three-term recurrence (the
/// colleague matrix in the Chebyshev case); no monomial conversion.
/// Trailing coefficients are trimmed at the kTrimRelTol threshold first.
/// Roots are returned sorted by (re, im).
inline std::vector<std::complex<double>> basis_roots(const CoeffSeries& s) {
  const CoeffSeries t = trimmed(s);
  const int d = t.degree();
  if (d < 1) throw ConfigError("basis_roots: constant polynomial");
  const OrthoBasis& b = t.basis;

  // Multiplication by t on span{phi_0..phi_{d-1}}, reduced modulo the input:
  // phi_d == -(1/c_d) sum_{k<d} c_k phi_k.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j + 1 < d; ++j) {
    if (j > 0) a(j - 1, j) = b.gamma(j);
    a(j, j) = b.beta(j);
    a(j + 1, j) = b.alpha(j);
  }
  if (d >= 2) a(d - 2, d - 1) = b.gamma(d - 1);
  a(d - 1, d - 1) = b.beta(d - 1);
  const double scale = b.alpha(d - 1) / t.coeffs[d];
  for (int k = 0; k < d; ++k) a(k, d - 1) -= scale * t.coeffs[k];

  Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> roots(d);
  for (int k = 0; k < d; ++k) roots[k] = es.eigenvalues()(k);
  detail::sort_complex(roots);
  return roots;
}

}  // namespace taupade
