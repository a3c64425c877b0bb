#pragma once

#include <vector>

#include "zvar/ensemble.hpp"
#include "zvar/geometry.hpp"

namespace zvar {

enum class CountMethod { Enumerated, ContourCounted };

/// Simultaneous zeros of a polynomial system (all simple a.s.).
struct ZeroSet {
  std::vector<AffinePoint> points;
  CountMethod method = CountMethod::Enumerated;
  int count() const { return int(points.size()); }
};

/// All N roots of a univariate (m = 1) polynomial by Aberth-Ehrlich
/// simultaneous iteration from perturbed-circle initial guesses, with a
/// final Newton polish.  Residual gate: |p(root)| / sum_j |a_j||root|^j
/// <= 1e-8.  Throws RootAtInfinityError when the leading weighted
/// coefficient underflows relative to the largest one.
ZeroSet all_roots(const RandomPolynomial& p);

/// Roots of an explicit coefficient array a_0 + a_1 z + ... (degree =
/// a.size()-1, leading coefficient must be nonzero).
std::vector<Cx> roots_of_coeffs(const std::vector<Cx>& a);

/// Argument-principle count (1/2 pi i) oint p'/p dz over the oriented
/// boundary of U, refined until the raw integral is within 0.01 of an
/// integer.  Throws NearBoundaryZeroError if refinement exceeds the
/// node budget (a zero hugging the contour).
int count_zeros_contour(const RandomPolynomial& p, const Domain& U);

/// All N^2 simultaneous zeros of two m = 2 polynomials (N <= 12) by
/// Sylvester-resultant elimination of z_2, root back-substitution and a
/// Newton polish on the pair.  Residuals of both polynomials <= 1e-6
/// (scaled) at every reported point, else DegenerateSystemError.
ZeroSet solve_system_2d(const RandomPolynomial& p1, const RandomPolynomial& p2);

/// Number of points of zs lying in the open domain U.
int count_in_domain(const ZeroSet& zs, const Domain& U);

}  // namespace zvar
