#pragma once

#include <vector>

#include "zvar/geometry.hpp"

namespace zvar {

/// Gtilde(t) = (1/4pi^2) Li2(t^2) on [0, 1]; Gtilde(1) = 1/24.
/// Series for t^2 <= 1/2, dilogarithm reflection above.
double gtilde(double t);

/// Second moment E(log|Y1| log|Y2|) of unit complex Gaussians with
/// |E(Y1 conj(Y2))| = t:  gamma^2/4 + pi^2 Gtilde(t).
double g_moment(double t);

/// F(lambda) = Gtilde(e^-lambda) and its first four derivatives.
///   order 1: (1/2pi^2) log(1 - e^{-2 lambda})        (< 0)
///   order 2: 1 / (pi^2 (e^{2 lambda} - 1))           (> 0)
///   orders 3, 4: analytic derivatives of order 2.
/// Orders >= 1 are singular at lambda = 0 (SingularityError).
double f_deriv(double lambda, int order);

/// Pluri-bipotential Q_N(z, w) = Gtilde(P_N(z, w)), in [0, 1/24].
double q_n(const AffinePoint& z, const AffinePoint& w, int N);

/// Matrix of d^2 Q_N / dconj(z_a) dconj(w_b): on CP^m the mixed
/// antiholomorphic derivative of Lambda vanishes, so the entries are
/// exactly F''(Lambda) (dLambda/dconj(z_a)) (dLambda/dconj(w_b)).
/// Row-major m x m; throws DiagonalEvaluationError within 1e-8 of the
/// diagonal (the limit exists but consumers work strictly off it).
std::vector<Cx> dbar_dbar_q(const AffinePoint& z, const AffinePoint& w, int N);

/// Connected part of the codimension-one pair correlation in m = 1:
/// 4 d^4 Q_N / dz dzbar dw dwbar per Lebesgue x Lebesgue, equal to
/// k21 - rho(z) rho(w).  Bounded on the diagonal but evaluated only off
/// it (DiagonalEvaluationError within 1e-10).
double k21_connected(Cx z, Cx w, int N);

/// Two-point zero intensity K21(z, w) = k21_connected + rho(z) rho(w),
/// with rho(z) = N / (pi (1+|z|^2)^2) the one-point intensity.
double k21_density(Cx z, Cx w, int N);

/// One-point zero intensity per Lebesgue measure in the m = 1 chart.
double zero_intensity(Cx z, int N);

// m = 1 conveniences
inline double q_n(Cx z, Cx w, int N) { return q_n(AffinePoint(z), AffinePoint(w), N); }

}  // namespace zvar
