#include <Eigen/Dense>
#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "taupade/operators.hpp"
#include "taupade/roots.hpp"

using namespace taupade;
using Catch::Approx;

namespace {

// Expand prod_k (t - r_k) in the basis by repeated application of an
// oversized shift matrix (exact below the truncation edge).
CoeffSeries product_of_factors(const OrthoBasis& basis, const std::vector<double>& roots) {
  const int target = static_cast<int>(roots.size());
  const Eigen::MatrixXd mu_t = shift_matrix(basis, target).transpose();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(target + 1);
  c(0) = 1.0;
  for (double r : roots) c = (mu_t * c - r * c).eval();
  return CoeffSeries{basis, std::vector<double>(c.data(), c.data() + target + 1)};
}

double nearest_match_error(const std::vector<std::complex<double>>& got,
                           const std::vector<double>& want) {
  double worst = 0.0;
  std::vector<char> used(got.size(), 0);
  for (double w : want) {
    double best = 1e300;
    size_t best_i = 0;
    for (size_t i = 0; i < got.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(got[i] - std::complex<double>(w, 0.0));
      if (d < best) {
        best = d;
        best_i = i;
      }
    }
    used[best_i] = 1;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("roots of simple Chebyshev inputs", "[roots]") {
  const OrthoBasis cheb(BasisKind::chebyshev);
  const auto r1 = basis_roots(CoeffSeries{cheb, {0.0, 1.0}});
  REQUIRE(r1.size() == 1);
  CHECK(std::abs(r1[0]) < 1e-14);

  const double b0 = 0.37;
  const auto r2 = basis_roots(CoeffSeries{cheb, {b0, 1.0}});
  REQUIRE(r2.size() == 1);
  CHECK(r2[0].real() == Approx(-b0).epsilon(1e-13));
  CHECK(std::abs(r2[0].imag()) < 1e-14);

  const auto r3 = basis_roots(CoeffSeries{cheb, {0.0, 0.0, 1.0}});
  REQUIRE(r3.size() == 2);
  const double half_sqrt2 = std::numbers::sqrt2 / 2.0;
  CHECK(r3[0].real() == Approx(-half_sqrt2).epsilon(1e-12));
  CHECK(r3[1].real() == Approx(half_sqrt2).epsilon(1e-12));
}

TEST_CASE("constant polynomial has no well-defined roots", "[roots]") {
  const OrthoBasis cheb(BasisKind::chebyshev);
  CHECK_THROWS_AS(basis_roots(CoeffSeries{cheb, {3.0}}), ConfigError);
  CHECK_THROWS_AS(basis_roots(CoeffSeries{cheb, {3.0, 1e-20}}), ConfigError);
}

TEST_CASE("roots recover known linear factors", "[roots]") {
  std::mt19937 rng(314159);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (BasisKind kind : {BasisKind::chebyshev, BasisKind::legendre}) {
    const OrthoBasis b = make_basis(kind);
    for (int degree : {3, 8, 14, 20}) {
      std::vector<double> want;
      while (static_cast<int>(want.size()) < degree) {
        const double r = u(rng);
        bool separated = true;
        for (double w : want) separated = separated && std::abs(w - r) > 0.05;
        if (separated) want.push_back(r);
      }
      const CoeffSeries poly = product_of_factors(b, want);
      const auto got = basis_roots(poly);
      REQUIRE(static_cast<int>(got.size()) == degree);
      CHECK(nearest_match_error(got, want) < 1e-8);
    }
  }
}
