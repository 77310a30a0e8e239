#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "taupade/basis.hpp"
#include "taupade/errors.hpp"

namespace taupade {

/// Finite expansion sum_i coeffs[i] * phi_i in an orthogonal basis.
/// Trailing zeros are permitted; degree() is the index of the last stored entry.
struct CoeffSeries {
  OrthoBasis basis{BasisKind::chebyshev};
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  int size() const { return static_cast<int>(coeffs.size()); }
};

/// Relative threshold below which trailing coefficients are treated as zero
/// when a well-defined numeric degree is needed (root-finding, zero/pole sets).
inline constexpr double kTrimRelTol = 1e-13;

inline double max_abs_coeff(const std::vector<double>& c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

/// Copy of `s` with trailing coefficients |c_i| <= rel_tol * max|c_j| removed.
/// An all-zero input collapses to the single coefficient 0.
inline CoeffSeries trimmed(const CoeffSeries& s, double rel_tol = kTrimRelTol) {
  if (s.coeffs.empty()) throw ConfigError("trimmed: empty coefficient vector");
  const double cut = rel_tol * max_abs_coeff(s.coeffs);
  size_t n = s.coeffs.size();
  while (n > 1 && std::abs(s.coeffs[n - 1]) <= cut) --n;
  return CoeffSeries{s.basis, std::vector<double>(s.coeffs.begin(), s.coeffs.begin() + n)};
}

/// Evaluate the expansion at t by the backward (Clenshaw) recurrence
/// for the basis' three-term recurrence; no monomial conversion.
/// Evaluation outside [-1, 1] is permitted (extrapolation).
inline double eval_series(const CoeffSeries& s, double t) {
  if (s.coeffs.empty()) throw ConfigError("eval_series: empty coefficient vector");
  const OrthoBasis& b = s.basis;
  double u1 = 0.0, u2 = 0.0;  // u_{k+1}, u_{k+2}
  for (int k = s.degree(); k >= 0; --k) {
    const double u = s.coeffs[k] + (t - b.beta(k)) / b.alpha(k) * u1 -
                     b.gamma(k + 1) / b.alpha(k + 1) * u2;
    u2 = u1;
    u1 = u;
  }
  return u1;  // phi_1 = (t - beta_0)/alpha_0 makes the downdate exact at k = 0
}

/// Weighted L2 norm by Parseval: ||s||_w = sqrt(sum_i mu_i c_i^2).
inline double weighted_norm(const CoeffSeries& s) {
  double acc = 0.0;
  for (int i = 0; i < s.size(); ++i) acc += s.basis.mu(i) * s.coeffs[i] * s.coeffs[i];
  return std::sqrt(acc);
}

}  // namespace taupade
