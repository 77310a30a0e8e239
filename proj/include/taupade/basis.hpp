#pragma once

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "taupade/errors.hpp"

namespace taupade {

enum class BasisKind { chebyshev, legendre };

/// Orthogonal polynomial family {phi_i} on [-1, 1], normalized with phi_i(1) = 1,
/// described by its three-term recurrence
///
///   t phi_i = alpha_i phi_{i+1} + beta_i phi_i + gamma_i phi_{i-1},
///   phi_0 = 1,  phi_1 = (t - beta_0)/alpha_0,
///
/// together with the squared weighted norms mu_i = ||phi_i||_w^2.
///
/// Chebyshev: alpha_0 = 1, alpha_i = gamma_i = 1/2 (i >= 1), beta_i = 0,
///            mu_0 = pi, mu_i = pi/2 (i >= 1).
/// Legendre:  alpha_i = (i+1)/(2i+1), gamma_i = i/(2i+1), beta_i = 0,
///            mu_i = 2/(2i+1).
class OrthoBasis {
public:
  explicit constexpr OrthoBasis(BasisKind kind) : kind_(kind) {}

  constexpr BasisKind kind() const { return kind_; }

  constexpr double alpha(int i) const {
    if (kind_ == BasisKind::chebyshev) return i == 0 ? 1.0 : 0.5;
    return (i + 1.0) / (2.0 * i + 1.0);
  }

  constexpr double beta(int) const { return 0.0; }

  constexpr double gamma(int i) const {
    if (i == 0) return 0.0;  // multiplies phi_{-1}; never used
    if (kind_ == BasisKind::chebyshev) return 0.5;
    return static_cast<double>(i) / (2.0 * i + 1.0);
  }

  /// Squared weighted norm ||phi_i||_w^2.
  constexpr double mu(int i) const {
    if (kind_ == BasisKind::chebyshev)
      return i == 0 ? std::numbers::pi : std::numbers::pi / 2.0;
    return 2.0 / (2.0 * i + 1.0);
  }

  friend constexpr bool operator==(const OrthoBasis& a, const OrthoBasis& b) {
    return a.kind_ == b.kind_;
  }

private:
  BasisKind kind_;
};

inline OrthoBasis make_basis(BasisKind kind) {
  if (kind != BasisKind::chebyshev && kind != BasisKind::legendre)
    throw ConfigError("make_basis: unsupported basis kind");
  return OrthoBasis(kind);
}

inline OrthoBasis make_basis(std::string_view name) {
  if (name == "chebyshev") return OrthoBasis(BasisKind::chebyshev);
  if (name == "legendre") return OrthoBasis(BasisKind::legendre);
  throw ConfigError("make_basis: unsupported basis kind \"" + std::string(name) +
                    "\" (expected \"chebyshev\" or \"legendre\")");
}

inline std::string to_string(BasisKind kind) {
  return kind == BasisKind::chebyshev ? "chebyshev" : "legendre";
}

/// Values (phi_0(t), ..., phi_n(t)) by the forward recurrence.
inline std::vector<double> basis_values(const OrthoBasis& basis, int n, double t) {
  std::vector<double> v(static_cast<size_t>(n) + 1);
  v[0] = 1.0;
  if (n >= 1) v[1] = (t - basis.beta(0)) / basis.alpha(0);
  for (int i = 1; i < n; ++i)
    v[i + 1] = ((t - basis.beta(i)) * v[i] - basis.gamma(i) * v[i - 1]) / basis.alpha(i);
  return v;
}

}  // namespace taupade
