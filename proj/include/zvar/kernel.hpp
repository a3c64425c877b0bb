#pragma once

#include <vector>

#include "zvar/geometry.hpp"

namespace zvar {

/// Lambda_N = -log P_N and its antiholomorphic gradients at (z, w).
struct KernelEval {
  double lambda;
  std::vector<Cx> grad_zbar;  // dLambda / d conj(z_a)
  std::vector<Cx> grad_wbar;  // dLambda / d conj(w_b)
};

/// Lambda_N(z, w) = (N/2)[log(1+|z|^2) + log(1+|w|^2)] - N log|1 + z.conj(w)|.
/// Returns +infinity where 1 + z.conj(w) = 0 (P_N = 0).  Evaluated in a
/// cancellation-free form that stays accurate near the diagonal.
double lambda_n(const AffinePoint& z, const AffinePoint& w, int N);

/// Normalized Szego kernel P_N = exp(-Lambda_N), in [0, 1].
double p_n(const AffinePoint& z, const AffinePoint& w, int N);

/// Lambda with both antiholomorphic gradients,
/// dLambda/dconj(z_a) = (N/2)[z_a/(1+|z|^2) - w_a/(1+conj(z).w)].
/// Throws PoleError where 1 + conj(z).w = 0.
KernelEval grad_lambda(const AffinePoint& z, const AffinePoint& w, int N);

/// FS geodesic distance arccos(|1+z.conj(w)| / sqrt((1+|z|^2)(1+|w|^2))).
double fs_distance(const AffinePoint& z, const AffinePoint& w);

// m = 1 conveniences
inline double lambda_n(Cx z, Cx w, int N) { return lambda_n(AffinePoint(z), AffinePoint(w), N); }
inline double p_n(Cx z, Cx w, int N) { return p_n(AffinePoint(z), AffinePoint(w), N); }
inline double fs_distance(Cx z, Cx w) { return fs_distance(AffinePoint(z), AffinePoint(w)); }

}  // namespace zvar
