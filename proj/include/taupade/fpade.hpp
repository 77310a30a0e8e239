#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "taupade/series.hpp"
#include "taupade/tau.hpp"

namespace taupade {

/// Which recurrence fills the h-table.  The specialized Chebyshev/Legendre
/// rules and the general rule are algebraically identical; both are kept so
/// they can be checked against each other.
enum class HTableRule { specialized, general };

/// Relative threshold below which a closed-form pivot counts as degenerate.
inline constexpr double kDegeneracyRelTol = 1e-14;

/// Table of the coefficients h_{i,j} of the products phi_j * y expanded in the
/// basis: phi_j y = sum_i h_{i,j} phi_i.  Column 0 holds the input
/// coefficients; row 0 follows h_{0,j} = (mu_j/mu_0) h_{j,0}.  An entry (i,j)
/// requires input coefficients up to index i+j, so with data c_0..c_N exactly
/// the anti-triangle i+j <= N is computable; entries beyond it are flagged
/// unavailable rather than zero-padded.  Read-only after construction.
class HTable {
public:
  HTable(OrthoBasis basis, CoeffSeries source, Eigen::MatrixXd h, int max_row, int max_col,
         int max_sum)
      : basis_(basis), source_(std::move(source)), h_(std::move(h)),
        max_row_(max_row), max_col_(max_col), max_sum_(max_sum) {}

  const OrthoBasis& basis() const { return basis_; }
  const CoeffSeries& source_coeffs() const { return source_; }
  int max_row() const { return max_row_; }
  int max_col() const { return max_col_; }

  bool available(int i, int j) const {
    return i >= 0 && j >= 0 && i <= max_row_ && j <= max_col_ && i + j <= max_sum_;
  }

  double at(int i, int j) const {
    if (!available(i, j))
      throw InsufficientCoefficientsError(
          "h-table: entry (" + std::to_string(i) + "," + std::to_string(j) +
              ") needs coefficient c_" + std::to_string(i + j) + "; have c_0..c_" +
              std::to_string(source_.degree()),
          source_.degree() - j, source_.degree() - i);
    return h_(i, j);
  }

private:
  OrthoBasis basis_;
  CoeffSeries source_;
  Eigen::MatrixXd h_;
  int max_row_;
  int max_col_;
  int max_sum_;  ///< entries exist exactly for i + j <= max_sum_
};

namespace detail {

/// Builds the table for the window [0..rows] x [0..cols]; entries with
/// i+j > degree stay NaN and unavailable.  Internal scratch rows extend the
/// window so every retained column has full recurrence support.
inline HTable h_table_partial(const OrthoBasis& basis, const CoeffSeries& c,
                              int rows, int cols, HTableRule rule) {
  if (rows < 0 || cols < 0) throw ConfigError("h_table: negative table size");
  if (c.coeffs.empty()) throw ConfigError("h_table: empty coefficient vector");
  if (!(c.basis == basis)) throw ConfigError("h_table: coefficient basis mismatch");
  const int n = c.degree();
  const int scratch_rows = std::min(rows + cols, n);
  const int r = std::max(rows, scratch_rows);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Eigen::MatrixXd h = Eigen::MatrixXd::Constant(r + 1, cols + 1, nan);

  const auto cc = [&](int k) { return c.coeffs[static_cast<size_t>(k)]; };
  for (int i = 0; i <= std::min(r, n); ++i) h(i, 0) = cc(i);
  for (int j = 1; j <= std::min(cols, n); ++j) h(0, j) = basis.mu(j) / basis.mu(0) * cc(j);

  // Ladder fill: column j is computed up to row min(r, n) - j, one row shorter
  // per column, so h(i+1, j-1) always exists when column j asks for it.
  const bool cheb = basis.kind() == BasisKind::chebyshev;
  for (int j = 1; j <= cols; ++j) {
    const int top = std::min(r, n) - j;
    for (int i = 1; i <= top; ++i) {
      if (rule == HTableRule::general) {
        // h_{i,j} = ( (mu_{i+1}/mu_i) a_i h_{i+1,j-1} + (b_i - b_{j-1}) h_{i,j-1}
        //             + (mu_{i-1}/mu_i) g_i h_{i-1,j-1} - g_{j-1} h_{i,j-2} ) / a_{j-1}
        double acc = basis.mu(i + 1) / basis.mu(i) * basis.alpha(i) * h(i + 1, j - 1) +
                     (basis.beta(i) - basis.beta(j - 1)) * h(i, j - 1) +
                     basis.mu(i - 1) / basis.mu(i) * basis.gamma(i) * h(i - 1, j - 1);
        if (j >= 2) acc -= basis.gamma(j - 1) * h(i, j - 2);
        h(i, j) = acc / basis.alpha(j - 1);
      } else if (cheb) {
        if (j == 1)
          h(i, 1) = i == 1 ? h(0, 0) + 0.5 * h(2, 0) : 0.5 * (h(i - 1, 0) + h(i + 1, 0));
        else
          h(i, j) = i == 1 ? 2.0 * h(0, j - 1) + h(2, j - 1) - h(1, j - 2)
                           : h(i - 1, j - 1) + h(i + 1, j - 1) - h(i, j - 2);
      } else {
        if (j == 1)
          h(i, 1) = (i + 1.0) / (2.0 * i + 3.0) * cc(i + 1) +
                    i / (2.0 * i - 1.0) * cc(i - 1);
        else
          h(i, j) = (2.0 * j - 1.0) / j *
                        ((i + 1.0) / (2.0 * i + 3.0) * h(i + 1, j - 1) +
                         i / (2.0 * i - 1.0) * h(i - 1, j - 1)) -
                    (j - 1.0) / j * h(i, j - 2);
      }
    }
  }
  return HTable(basis, c, std::move(h), r, cols, std::min(r, n));
}

}  // namespace detail

/// h-table for the full window 0 <= i <= rows, 0 <= j <= cols.  Requires
/// coefficients up to index rows+cols; otherwise raises
/// InsufficientCoefficientsError carrying the largest feasible request.
inline HTable h_table(const OrthoBasis& basis, const CoeffSeries& c, int rows, int cols,
                      HTableRule rule = HTableRule::specialized) {
  if (rows < 0 || cols < 0) throw ConfigError("h_table: negative table size");
  const int n = c.degree();
  if (rows + cols > n)
    throw InsufficientCoefficientsError(
        "h_table: window (" + std::to_string(rows) + "," + std::to_string(cols) +
            ") needs coefficients up to index " + std::to_string(rows + cols) +
            "; have c_0..c_" + std::to_string(n) + " (max feasible rows " +
            std::to_string(n - cols) + " for these cols, or cols " +
            std::to_string(n - rows) + " for these rows)",
        n - cols, n - rows);
  return detail::h_table_partial(basis, c, rows, cols, rule);
}

/// Rational approximant N_{p,q}/D_{p,q} in an orthogonal basis; the
/// denominator is normalized with b_q = 1 (for q = 0 it is exactly [1]).
struct RationalApproximant {
  CoeffSeries numerator;    ///< a_0..a_p
  CoeffSeries denominator;  ///< b_0..b_{q-1}, 1
  int p = 0;
  int q = 0;
  /// max |e_i| over the first available defect coefficients of D y - N
  /// beyond index p+q (0 when no extra rows were available).
  double residual_norm = 0.0;
  /// condition estimate of the denominator system.  Ill-conditioning is the
  /// mechanism behind spurious pole/zero pairs, so it is surfaced here rather
  /// than used to reject the construction; only an exactly singular system
  /// fails.
  double condition_estimate = 1.0;
};

/// Approximant of type (p,q) from a prebuilt (shared, read-only) h-table.
/// Denominator coefficients solve the q x q system
///   [h_{p+1..p+q, 0..q-1}] b = -[h_{p+1..p+q, q}],
/// then a_j = sum_{i<q} h_{j,i} b_i + h_{j,q}.  A numerically singular system
/// (zero condition estimate or non-finite solution) is rejected; finite
/// ill-conditioning is recorded on the result instead, since downstream
/// doublet counting exists precisely to diagnose it.
inline RationalApproximant frobenius_pade(const HTable& table, int p, int q) {
  if (p < 0 || q < 0) throw ConfigError("frobenius_pade: p and q must be nonnegative");
  const OrthoBasis& basis = table.basis();
  const CoeffSeries& c = table.source_coeffs();

  RationalApproximant r;
  r.p = p;
  r.q = q;

  if (q == 0) {
    if (p > c.degree())
      throw InsufficientCoefficientsError(
          "frobenius_pade: numerator degree exceeds available coefficients",
          c.degree(), 0);
    r.numerator = CoeffSeries{basis, std::vector<double>(c.coeffs.begin(),
                                                         c.coeffs.begin() + p + 1)};
    r.denominator = CoeffSeries{basis, {1.0}};
    for (int i = p + 1; i <= std::min(p + 3, c.degree()); ++i)
      r.residual_norm = std::max(r.residual_norm, std::abs(c.coeffs[static_cast<size_t>(i)]));
    return r;
  }

  if (!table.available(p + q, q))
    throw InsufficientCoefficientsError(
        "frobenius_pade: type (" + std::to_string(p) + "," + std::to_string(q) +
            ") needs coefficients up to index " + std::to_string(p + 2 * q) +
            "; have c_0..c_" + std::to_string(c.degree()),
        c.degree() - 2 * q, (c.degree() - p) / 2);

  Eigen::MatrixXd h(q, q);
  Eigen::VectorXd rhs(q);
  for (int row = 0; row < q; ++row) {
    for (int col = 0; col < q; ++col) h(row, col) = table.at(p + 1 + row, col);
    rhs(row) = -table.at(p + 1 + row, q);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(h);
  const double rc = lu.rcond();
  const double cond = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  const Eigen::VectorXd b = lu.solve(rhs);
  if (!(rc > 0.0) || !b.allFinite())
    throw SingularSystemError(
        "frobenius_pade: singular system for type (" + std::to_string(p) + "," +
            std::to_string(q) + ")",
        cond);
  r.condition_estimate = cond;

  std::vector<double> num(static_cast<size_t>(p) + 1);
  for (int j = 0; j <= p; ++j) {
    double acc = table.at(j, q);
    for (int i = 0; i < q; ++i) acc += table.at(j, i) * b(i);
    num[static_cast<size_t>(j)] = acc;
  }
  std::vector<double> den(static_cast<size_t>(q) + 1);
  for (int i = 0; i < q; ++i) den[static_cast<size_t>(i)] = b(i);
  den[static_cast<size_t>(q)] = 1.0;

  r.numerator = CoeffSeries{basis, std::move(num)};
  r.denominator = CoeffSeries{basis, std::move(den)};
  for (int i = p + q + 1; i <= p + q + 3 && table.available(i, q); ++i) {
    double e = table.at(i, q);
    for (int k = 0; k < q; ++k) e += table.at(i, k) * b(k);
    r.residual_norm = std::max(r.residual_norm, std::abs(e));
  }
  return r;
}

/// Convenience overload building its own table.  Requires p + 2q <= degree(c).
inline RationalApproximant frobenius_pade(const OrthoBasis& basis, const CoeffSeries& c,
                                          int p, int q) {
  if (p < 0 || q < 0) throw ConfigError("frobenius_pade: p and q must be nonnegative");
  if (p + 2 * q > c.degree())
    throw InsufficientCoefficientsError(
        "frobenius_pade: type (" + std::to_string(p) + "," + std::to_string(q) +
            ") needs coefficients up to index " + std::to_string(p + 2 * q) +
            "; have c_0..c_" + std::to_string(c.degree()),
        c.degree() - 2 * q, (c.degree() - p) / 2);
  const HTable table = detail::h_table_partial(basis, c, p + q + 3, q,
                                               HTableRule::specialized);
  return frobenius_pade(table, p, q);
}

namespace detail {

inline double coeff_or_throw(const CoeffSeries& c, int k, const char* who) {
  if (k < 0) return 0.0;
  if (k > c.degree())
    throw InsufficientCoefficientsError(
        std::string(who) + ": needs coefficient c_" + std::to_string(k) +
            "; have c_0..c_" + std::to_string(c.degree()),
        c.degree(), c.degree());
  return c.coeffs[static_cast<size_t>(k)];
}

/// Chebyshev h_{k,1} = (c'_{k-1} + c_{k+1})/2 with c'_{-1} = 0, c'_0 = 2 c_0.
inline double cheb_h1(const CoeffSeries& c, int k, const char* who) {
  const double prev = k == 0 ? 0.0
                             : (k == 1 ? 2.0 * coeff_or_throw(c, 0, who)
                                       : coeff_or_throw(c, k - 1, who));
  return 0.5 * (prev + coeff_or_throw(c, k + 1, who));
}

/// Chebyshev h_{k,2}: h_{0,2} = c_2/2, h_{1,2} = (c_1+c_3)/2,
/// h_{2,2} = c_0 + c_4/2, h_{k,2} = (c_{k-2}+c_{k+2})/2 for k >= 3.
inline double cheb_h2(const CoeffSeries& c, int k, const char* who) {
  const double prev = k <= 1 ? (k == 0 ? 0.0 : coeff_or_throw(c, 1, who))
                             : (k == 2 ? 2.0 * coeff_or_throw(c, 0, who)
                                       : coeff_or_throw(c, k - 2, who));
  return 0.5 * (prev + coeff_or_throw(c, k + 2, who));
}

/// Legendre h_{k,1} = k/(2k-1) c_{k-1} + (k+1)/(2k+3) c_{k+1}.
inline double leg_h1(const CoeffSeries& c, int k, const char* who) {
  double acc = (k + 1.0) / (2.0 * k + 3.0) * coeff_or_throw(c, k + 1, who);
  if (k >= 1) acc += k / (2.0 * k - 1.0) * coeff_or_throw(c, k - 1, who);
  return acc;
}

/// Legendre h_{k,2}, one step of the column recurrence from column 1.
inline double leg_h2(const CoeffSeries& c, int k, const char* who) {
  if (k == 0) return coeff_or_throw(c, 2, who) / 5.0;
  return 1.5 * ((k + 1.0) / (2.0 * k + 3.0) * leg_h1(c, k + 1, who) +
                k / (2.0 * k - 1.0) * leg_h1(c, k - 1, who)) -
         0.5 * coeff_or_throw(c, k, who);
}

struct DirectDenominator {
  double b0 = 0.0;
  double b1 = 0.0;  // unused for q = 1
};

/// Denominator coefficients of the closed-form (p,1)/(p,2) approximants,
/// straight from the series coefficients.
inline DirectDenominator direct_denominator(BasisKind kind, const CoeffSeries& c,
                                            int p, int q, const char* who) {
  if (q != 1 && q != 2) throw ConfigError(std::string(who) + ": q must be 1 or 2");
  if (p < 0) throw ConfigError(std::string(who) + ": p must be nonnegative");
  const bool cheb = kind == BasisKind::chebyshev;
  DirectDenominator d;
  if (q == 1) {
    // pivot c_{p+1} measured against the local coefficient window, so the
    // test is invariant under rescaling of the whole series
    const double cp1 = coeff_or_throw(c, p + 1, who);
    const double h1 = cheb ? cheb_h1(c, p + 1, who) : leg_h1(c, p + 1, who);
    const double local = std::max({std::abs(cp1), std::abs(h1),
                                   std::abs(coeff_or_throw(c, p + 2, who))});
    if (std::abs(cp1) <= kDegeneracyRelTol * local)
      throw DegenerateCaseError(std::string(who) + ": c_{p+1} vanishes at p = " +
                                std::to_string(p));
    d.b0 = -h1 / cp1;
    return d;
  }
  const double a11 = coeff_or_throw(c, p + 1, who);
  const double a12 = cheb ? cheb_h1(c, p + 1, who) : leg_h1(c, p + 1, who);
  const double a21 = coeff_or_throw(c, p + 2, who);
  const double a22 = cheb ? cheb_h1(c, p + 2, who) : leg_h1(c, p + 2, who);
  const double r1 = -(cheb ? cheb_h2(c, p + 1, who) : leg_h2(c, p + 1, who));
  const double r2 = -(cheb ? cheb_h2(c, p + 2, who) : leg_h2(c, p + 2, who));
  const double det = a11 * a22 - a12 * a21;
  const double local =
      std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
  if (std::abs(det) <= kDegeneracyRelTol * local * local)
    throw DegenerateCaseError(std::string(who) +
                              ": degenerate 2x2 determinant at p = " + std::to_string(p));
  d.b0 = (r1 * a22 - a12 * r2) / det;
  d.b1 = (a11 * r2 - r1 * a21) / det;
  return d;
}

}  // namespace detail

/// Closed-form (p,1) and (p,2) approximants for the Chebyshev and Legendre
/// bases, written directly in the series coefficients (no table, no solve):
/// q = 1: D = b_0 + t with b_0 = -(c'_p + c_{p+2})/(2 c_{p+1}) (Chebyshev) or
/// b_0 = -h_{p+1,1}/c_{p+1} (Legendre); q = 2 solves the corresponding 2x2
/// system by Cramer's rule.  Vanishing pivots raise DegenerateCaseError.
inline RationalApproximant direct_pade(BasisKind kind, const CoeffSeries& c, int p, int q) {
  static constexpr const char* who = "direct_pade";
  const OrthoBasis basis = make_basis(kind);
  if (!(c.basis == basis)) throw ConfigError("direct_pade: coefficient basis mismatch");
  const detail::DirectDenominator d = detail::direct_denominator(kind, c, p, q, who);

  RationalApproximant r;
  r.p = p;
  r.q = q;
  std::vector<double> num(static_cast<size_t>(p) + 1);
  const bool cheb = kind == BasisKind::chebyshev;
  for (int k = 0; k <= p; ++k) {
    const double ck = detail::coeff_or_throw(c, k, who);
    const double h1 = cheb ? detail::cheb_h1(c, k, who) : detail::leg_h1(c, k, who);
    if (q == 1) {
      num[static_cast<size_t>(k)] = h1 + d.b0 * ck;
    } else {
      const double h2 = cheb ? detail::cheb_h2(c, k, who) : detail::leg_h2(c, k, who);
      num[static_cast<size_t>(k)] = ck * d.b0 + h1 * d.b1 + h2;
    }
  }
  r.numerator = CoeffSeries{basis, std::move(num)};
  r.denominator = q == 1 ? CoeffSeries{basis, {d.b0, 1.0}}
                         : CoeffSeries{basis, {d.b0, d.b1, 1.0}};
  return r;
}

/// Poles of the closed-form (p,1)/(p,2) approximants, from the series
/// coefficients alone (the approximant itself is never assembled).
/// q = 1: the root of b_0 + t.  q = 2: the two roots of the quadratic
/// denominator b_0 + b_1 t + phi_2(t); the discriminant may be negative,
/// in which case the pair is complex conjugate.
inline std::vector<std::complex<double>> direct_poles(BasisKind kind, const CoeffSeries& c,
                                                      int p, int q) {
  static constexpr const char* who = "direct_poles";
  const detail::DirectDenominator d = detail::direct_denominator(kind, c, p, q, who);
  if (q == 1) return {std::complex<double>(-d.b0, 0.0)};
  // Chebyshev: 2t^2 + b_1 t + (b_0 - 1);  Legendre: (3/2)t^2 + b_1 t + (b_0 - 1/2).
  const std::complex<double> disc =
      kind == BasisKind::chebyshev
          ? std::complex<double>(d.b1 * d.b1 - 8.0 * (d.b0 - 1.0), 0.0)
          : std::complex<double>(d.b1 * d.b1 - 6.0 * d.b0 + 3.0, 0.0);
  const std::complex<double> root = std::sqrt(disc);
  const double denom = kind == BasisKind::chebyshev ? 4.0 : 3.0;
  return {(-d.b1 - root) / denom, (-d.b1 + root) / denom};
}

/// N(t)/D(t); denominators within 1e-30 of zero raise PoleProximityError.
inline double eval_rational(const RationalApproximant& r, double t) {
  const double den = eval_series(r.denominator, t);
  if (std::abs(den) <= 1e-30)
    throw PoleProximityError(
        "eval_rational: evaluation at t = " + std::to_string(t) + " is on a pole", t);
  return eval_series(r.numerator, t) / den;
}

}  // namespace taupade
