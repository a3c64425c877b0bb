#pragma once

#include <vector>

#include "zvar/geometry.hpp"

namespace zvar {

/// n(m, j) = sum_{l=1..j} (m-l)! / (j-l)!, exact integer arithmetic.
long long n_coeff(int m, int j);

/// Bose integral J(m, j) = int_0^inf r^{2m} (e^{r^2} - 1)^{-j} dr,
/// 1 <= j <= m, absolute error <= 1e-10.
double bose_integral(int m, int j);

/// Universal variance constant
///   nu_mk = pi^{m-2k-1/2} k! (m-1)! / (4 Gamma(m+1/2) (m-k)!^2)
///           * sum_{j=1..k} n(m,j) / (j (k-j)!) * J(m, j).
double nu_constant(int m, int k);

/// Codimension-one closed form nu_m1 = pi^{m-5/2} zeta(m+1/2) / 8.
double nu_m1_closed(int m);

/// Row of the constant table for one (m, k).
struct ConstantEntry {
  int m, k;
  double nu;
  std::vector<double> bose;       // J(m, j), j = 1..k
  std::vector<long long> ncoeff;  // n(m, j), j = 1..k
};

/// Table of nu_mk with supporting integrals for 1 <= k <= m <= max_m.
std::vector<ConstantEntry> constant_table(int max_m);

/// Leading-order variance prediction N^{2k-m-1/2} nu_mk Vol_{2m-1}(dU).
double predicted_variance(int m, int k, int N, const Domain& U);

/// Exact number variance for m = 1 by the boundary double integral
/// -int_{dU x dU} d^2 Q_N / dzbar dwbar, periodic-trapezoid/GL product
/// quadrature with node doubling to relative 1e-6.  The global sign is
/// the module constant kBoundarySign, frozen by the N = 1 Bernoulli
/// oracle and asserted positive across the test matrix.
double variance_boundary_exact(const Domain& U, int N);

/// Exact number variance for m = 1 via the bulk pair correlation:
/// E(N_U) + int int_{U x U} [k21 - rho rho], tensor quadrature with
/// staggered grids, refined to relative 1e-4.
double variance_bulk_exact(const Domain& U, int N);

/// Sign convention of the boundary integral fixed by the Bernoulli test.
inline constexpr double kBoundarySign = -1.0;

}  // namespace zvar
