#pragma once

#include <cstdint>
#include <vector>

namespace zvar {

/// Euler-Mascheroni constant to 30 significant digits.
inline constexpr double kEulerGamma = 0.577215664901532860606512090082;

/// Riemann zeta(s) for real s > 1, via truncated Dirichlet series with an
/// Euler-Maclaurin tail.  Absolute accuracy ~1e-14 for s >= 1.1.
double riemann_zeta(double s);

/// Gamma(m + 1/2) for integer m >= 0 by the half-integer recurrence.
double gamma_half_integer(int m);

/// log(n!) with a cached table for small n.
double log_factorial(int n);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
/// Rules are cached per n; thread-safe after first use of a given n.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

}  // namespace zvar
