#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "taupade/series.hpp"
#include "taupade/tau.hpp"

namespace taupade {

// ---------------------------------------------------------------------------
// Built-in problem 1: (t+1) y' - y/2 = 0 on [-1,1] with y(0) = pi*sqrt(2)/4,
// solved by y(t) = (pi/4) sqrt(2(t+1)).  The solution has a branch point at
// t = -1, sitting on the endpoint of the interval, so the Chebyshev expansion
//   y = 1 + sum_{k>=1} (-1)^{k+1} 2/(4k^2-1) T_k
// converges only algebraically and the projected solve admits a closed form:
// every Tau coefficient is a known multiple of the exact one.
// ---------------------------------------------------------------------------

namespace detail {

inline double cheb_at_zero(int k) {
  if (k % 2 != 0) return 0.0;
  return (k / 2) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace detail

struct Example1Oracle {
  int n = 0;
  double y0 = 0.0;  ///< y(0) = pi*sqrt(2)/4
  double S = 0.0;   ///< normalization constant of the degree-n solve
  std::vector<double> exact_coeffs;  ///< c_0..c_n
  std::vector<double> tau_coeffs;    ///< c^(n)_0..c^(n)_n
  std::vector<double> delta_coeffs;  ///< c_k - c^(n)_k

  static double exact_coeff(int k) {
    if (k == 0) return 1.0;
    const double v = 2.0 / (4.0 * static_cast<double>(k) * k - 1.0);
    return k % 2 == 0 ? -v : v;
  }

  double y(double t) const { return std::numbers::pi / 4.0 * std::sqrt(2.0 * (t + 1.0)); }
};

/// Normalization constant S_n: the partial sum of the series for y(0) through
/// degree n-1 plus a correction carried by the last coefficient,
///   S_n = sum_{k=0}^{n-1} c_k T_k(0) + (-1)^{n+1} T_n(0) / (2n(2n-1)).
inline double example1_S(int n) {
  long double s = 0.0L;
  for (int k = 0; k < n; ++k)
    s += static_cast<long double>(Example1Oracle::exact_coeff(k)) * detail::cheb_at_zero(k);
  const long double corr = detail::cheb_at_zero(n) /
                           (2.0L * n * (2.0L * n - 1.0L));
  s += (n % 2 == 0 ? -corr : corr);
  return static_cast<double>(s);
}

/// Closed-form data of the degree-n solve:
///   c^(n)_0 = y0/S_n,
///   c^(n)_k = (-1)^{k+1} 2 y0 / ((4k^2-1) S_n),   k = 1..n-1,
///   c^(n)_n = (-1)^{n+1} y0 / (2n(2n-1) S_n).
inline Example1Oracle example1_oracle(int n) {
  if (n < 2) throw ConfigError("example1_oracle: need n >= 2");
  Example1Oracle o;
  o.n = n;
  o.y0 = std::numbers::pi * std::numbers::sqrt2 / 4.0;
  o.S = example1_S(n);
  const double f = o.y0 / o.S;
  o.exact_coeffs.resize(static_cast<size_t>(n) + 1);
  o.tau_coeffs.resize(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) o.exact_coeffs[static_cast<size_t>(k)] = o.exact_coeff(k);
  for (int k = 0; k < n; ++k) o.tau_coeffs[static_cast<size_t>(k)] = f * o.exact_coeff(k);
  {
    const double v = o.y0 / (2.0 * n * (2.0 * n - 1.0) * o.S);
    o.tau_coeffs[static_cast<size_t>(n)] = n % 2 == 0 ? -v : v;
  }
  o.delta_coeffs.resize(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    o.delta_coeffs[static_cast<size_t>(k)] =
        o.exact_coeffs[static_cast<size_t>(k)] - o.tau_coeffs[static_cast<size_t>(k)];
  return o;
}

/// The differential problem of example 1 as a PolyOperator (Chebyshev basis).
inline PolyOperator example1_problem() {
  PolyOperator op;
  op.nu = 1;
  op.p = {{-0.5}, {1.0, 1.0}};
  op.rhs = CoeffSeries{OrthoBasis(BasisKind::chebyshev), {0.0}};
  op.conditions = {Condition{{ConditionTerm{0.0, 0, 1.0}},
                             std::numbers::pi * std::numbers::sqrt2 / 4.0}};
  return op;
}

/// Weighted-norm tail sum_{k>n} mu_k c_k^2 of the example-1 expansion, in
/// closed form: partial fractions collapse it to odd reciprocal squares plus a
/// telescoping term.
inline double example1_tail(int n) {
  long double odd_sq = 0.0L;  // sum_{j=0}^{n} 1/(2j+1)^2
  for (int j = 0; j <= n; ++j) {
    const long double m = 2.0L * j + 1.0L;
    odd_sq += 1.0L / (m * m);
  }
  const long double pi_l = std::numbers::pi_v<long double>;
  const long double a = pi_l * pi_l / 8.0L - odd_sq;  // sum over odd m >= 2n+3 of 1/m^2
  const long double inv = 1.0L / (2.0L * n + 1.0L);
  return static_cast<double>(pi_l / 2.0L * (2.0L * a + inv * inv - inv));
}

/// ||y - y_n||_w from the closed-form coefficient errors plus the exact tail.
inline double example1_error_norm(int n) {
  const Example1Oracle o = example1_oracle(n);
  const OrthoBasis basis(BasisKind::chebyshev);
  long double acc = 0.0L;
  for (int k = 0; k <= n; ++k) {
    const long double d = o.delta_coeffs[static_cast<size_t>(k)];
    acc += basis.mu(k) * d * d;
  }
  acc += example1_tail(n);
  return static_cast<double>(std::sqrt(acc));
}

// ---------------------------------------------------------------------------
// Built-in problem 2 (parameter 0 < |alpha| < 1):
//   (1 + alpha^2 - 2 alpha t)^2 y'' - 15 alpha^2 y = 0,
//   y(-1) = (1-alpha)/(1+alpha)^2,  y(1) = (1+alpha)/(1-alpha)^2,
// solved by y(t) = (1 - alpha^2)/(1 + alpha^2 - 2 alpha t)^{3/2}, whose
// Legendre expansion is sum_k (2k+1) alpha^k P_k.  The branch point
// zeta = (alpha + 1/alpha)/2 approaches the interval as |alpha| -> 1, which
// controls the convergence rate of the solve.
// ---------------------------------------------------------------------------

struct Example2Oracle {
  double alpha = 0.0;
  double singularity = 0.0;  ///< zeta = (alpha + 1/alpha)/2
  double y_left = 0.0;       ///< y(-1)
  double y_right = 0.0;      ///< y(1)

  double coeff(int k) const { return (2.0 * k + 1.0) * std::pow(alpha, k); }

  std::vector<double> coeffs(int count) const {
    std::vector<double> c(static_cast<size_t>(count));
    double ak = 1.0;
    for (int k = 0; k < count; ++k, ak *= alpha) c[static_cast<size_t>(k)] = (2.0 * k + 1.0) * ak;
    return c;
  }

  double y(double t) const {
    const double u = 1.0 + alpha * alpha - 2.0 * alpha * t;
    return (1.0 - alpha * alpha) / (u * std::sqrt(u));
  }
};

inline Example2Oracle example2_oracle(double alpha) {
  if (!(std::abs(alpha) > 0.0) || !(std::abs(alpha) < 1.0))
    throw ConfigError("example2_oracle: need 0 < |alpha| < 1");
  Example2Oracle o;
  o.alpha = alpha;
  o.singularity = 0.5 * (alpha + 1.0 / alpha);
  o.y_left = (1.0 - alpha) / ((1.0 + alpha) * (1.0 + alpha));
  o.y_right = (1.0 + alpha) / ((1.0 - alpha) * (1.0 - alpha));
  return o;
}

inline PolyOperator example2_problem(double alpha) {
  const Example2Oracle o = example2_oracle(alpha);
  const double s = 1.0 + alpha * alpha;
  PolyOperator op;
  op.nu = 2;
  op.p = {{-15.0 * alpha * alpha}, {0.0}, {s * s, -4.0 * alpha * s, 4.0 * alpha * alpha}};
  op.rhs = CoeffSeries{OrthoBasis(BasisKind::legendre), {0.0}};
  op.conditions = {Condition{{ConditionTerm{-1.0, 0, 1.0}}, o.y_left},
                   Condition{{ConditionTerm{1.0, 0, 1.0}}, o.y_right}};
  return op;
}

/// Weighted-norm tail sum_{k>n} mu_k c_k^2 of the example-2 expansion,
/// summed in closed form (geometric with polynomial factor).
inline double example2_tail(double alpha, int n) {
  const double x = alpha * alpha;
  const double omx = 1.0 - x;
  return 2.0 * std::pow(x, n + 1) * ((2.0 * n + 3.0) - (2.0 * n + 1.0) * x) / (omx * omx);
}

/// ||y - y_n||_w for a degree-n Legendre solution of problem 2.
inline double example2_error_norm(const Example2Oracle& o, const CoeffSeries& tau_coeffs) {
  const int n = tau_coeffs.degree();
  long double acc = 0.0L;
  double ak = 1.0;
  for (int k = 0; k <= n; ++k, ak *= o.alpha) {
    const long double d = (2.0 * k + 1.0) * ak - tau_coeffs.coeffs[static_cast<size_t>(k)];
    acc += tau_coeffs.basis.mu(k) * d * d;
  }
  acc += example2_tail(o.alpha, n);
  return static_cast<double>(std::sqrt(acc));
}

}  // namespace taupade
