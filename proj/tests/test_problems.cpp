#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "oracle_helpers.hpp"
#include "taupade/builtin_problems.hpp"
#include "taupade/tau.hpp"

using namespace taupade;
using Catch::Approx;

TEST_CASE("first oracle: expansion coefficients and point value", "[problems]") {
  CHECK(Example1Oracle::exact_coeff(0) == 1.0);
  CHECK(Example1Oracle::exact_coeff(1) == Approx(2.0 / 3.0));
  CHECK(Example1Oracle::exact_coeff(2) == Approx(-2.0 / 15.0));
  CHECK(Example1Oracle::exact_coeff(3) == Approx(2.0 / 35.0));

  const Example1Oracle o = example1_oracle(10);
  CHECK(o.y0 == Approx(1.1107207345395915).epsilon(1e-15));
  CHECK(o.y(0.0) == Approx(o.y0));
  CHECK(o.y(1.0) == Approx(std::numbers::pi / 2.0));
}

TEST_CASE("first oracle: coefficient errors are proportional", "[problems]") {
  // delta is formed by subtraction, so the comparison tolerance carries the
  // cancellation factor |c_k|/|delta_k| ~ 1e4 on top of machine epsilon
  const Example1Oracle o = example1_oracle(14);
  const double factor = 1.0 - o.y0 / o.S;
  for (int k = 0; k < 14; ++k)
    CHECK(o.delta_coeffs[(size_t)k] ==
          Approx(factor * o.exact_coeffs[(size_t)k]).epsilon(1e-11).margin(1e-18));
}

TEST_CASE("first oracle: normalization matches the actual solve", "[problems]") {
  const OrthoBasis cheb(BasisKind::chebyshev);
  const PolyOperator op = example1_problem();
  for (int n : {2, 3, 4, 9, 10, 41}) {
    const Example1Oracle o = example1_oracle(n);
    const TauSolution sol = tau_solve(op, cheb, n);
    for (int k = 0; k <= n; ++k)
      CHECK(o.tau_coeffs[(size_t)k] ==
            Approx(sol.coeffs.coeffs[(size_t)k]).epsilon(1e-12).margin(1e-16));
  }
}

TEST_CASE("first oracle: tail sum matches brute force", "[problems]") {
  for (int n : {5, 30, 149}) {
    long double brute = 0.0L;
    for (int k = n + 1; k <= n + 4000000; ++k) {
      const long double ck = 2.0L / (4.0L * k * k - 1.0L);
      brute += std::numbers::pi / 2.0L * ck * ck;
    }
    CHECK(example1_tail(n) == Approx(static_cast<double>(brute)).epsilon(1e-10));
  }
}

TEST_CASE("first problem: oracle error norm agrees with quadrature", "[problems]") {
  const OrthoBasis cheb(BasisKind::chebyshev);
  for (int n : {10, 24}) {
    const Example1Oracle o = example1_oracle(n);
    const CoeffSeries yn{cheb, o.tau_coeffs};
    const double from_coeffs = example1_error_norm(n);
    // quadrature of (y - y_n)^2 w; the endpoint branch behavior limits the
    // rule to second-order convergence, so it takes a large node count to
    // settle below the comparison tolerance
    const double from_quad = oracle::quad_weighted_norm(
        [&](double t) { return o.y(t) - eval_series(yn, t); }, cheb, 600000);
    CHECK(from_coeffs == Approx(from_quad).epsilon(1e-8));
  }
}

TEST_CASE("second oracle: coefficients, singularity, boundary values", "[problems]") {
  const Example2Oracle o = example2_oracle(0.5);
  CHECK(o.coeff(0) == 1.0);
  CHECK(o.coeff(1) == Approx(1.5));
  CHECK(o.coeff(2) == Approx(1.25));
  CHECK(o.singularity == Approx(1.25));

  const Example2Oracle o9 = example2_oracle(0.9);
  CHECK(o9.y_right == Approx(190.0).epsilon(1e-12));
  CHECK(o9.y_left == Approx(0.1 / 3.61).epsilon(1e-12));
  CHECK(o9.y(1.0) == Approx(o9.y_right).epsilon(1e-10));
  CHECK(o9.y(-1.0) == Approx(o9.y_left).epsilon(1e-12));

  CHECK_THROWS_AS(example2_oracle(0.0), ConfigError);
  CHECK_THROWS_AS(example2_oracle(1.0), ConfigError);
  CHECK_THROWS_AS(example2_oracle(-1.2), ConfigError);
}

TEST_CASE("second oracle: series represents the function", "[problems]") {
  const Example2Oracle o = example2_oracle(0.4);
  const OrthoBasis leg(BasisKind::legendre);
  const CoeffSeries s{leg, o.coeffs(80)};
  for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0})
    CHECK(eval_series(s, t) == Approx(o.y(t)).epsilon(1e-12));
}

TEST_CASE("second oracle: tail sum matches brute force", "[problems]") {
  for (double alpha : {0.3, 0.8}) {
    for (int n : {10, 40}) {
      long double brute = 0.0L;
      for (int k = n + 1; k < n + 4000; ++k)
        brute += 2.0L / (2.0L * k + 1.0L) * std::pow((long double)(2.0 * k + 1), 2) *
                 std::pow((long double)alpha, 2 * k);
      CHECK(example2_tail(alpha, n) == Approx(static_cast<double>(brute)).epsilon(1e-12));
    }
  }
}

TEST_CASE("second problem: fast regime reaches machine-level error", "[problems]") {
  const OrthoBasis leg(BasisKind::legendre);
  for (double alpha : {0.1, 0.3, 0.5}) {
    const Example2Oracle o = example2_oracle(alpha);
    const TauSolution sol = tau_solve(example2_problem(alpha), leg, 50);
    CHECK(example2_error_norm(o, sol.coeffs) < 1e-10);
  }
}
