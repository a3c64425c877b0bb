#include "zvar/bipotential.hpp"

#include <cmath>
#include <stdexcept>

#include "zvar/errors.hpp"
#include "zvar/kernel.hpp"
#include "zvar/special.hpp"

namespace zvar {

namespace {

constexpr double kPi2 = M_PI * M_PI;

// Li2(x) for x in [0, 1/2] by the defining series.
double dilog_series(double x) {
  double term = x, sum = x;
  for (int n = 2; n < 80; ++n) {
    term *= x;
    const double add = term / double(n * n);
    sum += add;
    if (add < 1e-17 * sum) break;
  }
  return sum;
}

// Li2(x) on [0, 1]: reflection Li2(x) = pi^2/6 - log(x)log(1-x) - Li2(1-x)
// for x > 1/2.
double dilog(double x) {
  if (x <= 0.5) return dilog_series(x);
  if (x == 1.0) return kPi2 / 6.0;
  const double y = 1.0 - x;
  return kPi2 / 6.0 - std::log1p(-y) * std::log(y) - dilog_series(y);
}

}  // namespace

double gtilde(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("gtilde: t must be in [0, 1]");
  return dilog(t * t) / (4.0 * kPi2);
}

double g_moment(double t) {
  return 0.25 * kEulerGamma * kEulerGamma + kPi2 * gtilde(t);
}

double f_deriv(double lambda, int order) {
  switch (order) {
    case 0:
      if (lambda < 0.0) throw std::invalid_argument("f_deriv: lambda >= 0");
      return gtilde(std::exp(-lambda));
    case 1:
    case 2:
    case 3:
    case 4:
      break;
    default:
      throw std::invalid_argument("f_deriv: order in 0..4");
  }
  if (!(lambda > 0.0)) throw SingularityError("f_deriv: derivative singular at lambda = 0");
  const double x = std::exp(-2.0 * lambda);
  const double em = -std::expm1(-2.0 * lambda);  // 1 - e^{-2 lambda}
  switch (order) {
    case 1:
      return std::log1p(-x) / (2.0 * kPi2);
    case 2:
      return x / (kPi2 * em);
    case 3:
      return -2.0 * x / (kPi2 * em * em);
    default:
      return 4.0 * x * (1.0 + x) / (kPi2 * em * em * em);
  }
}

double q_n(const AffinePoint& z, const AffinePoint& w, int N) {
  return gtilde(p_n(z, w, N));
}

std::vector<Cx> dbar_dbar_q(const AffinePoint& z, const AffinePoint& w, int N) {
  if (fs_distance(z, w) < 1e-8)
    throw DiagonalEvaluationError("dbar_dbar_q: evaluation on the diagonal");
  const KernelEval ke = grad_lambda(z, w, N);
  const double fpp = f_deriv(ke.lambda, 2);
  const int m = z.dim();
  std::vector<Cx> out(size_t(m) * size_t(m), Cx(0.0));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out[size_t(a) * m + b] = fpp * ke.grad_zbar[a] * ke.grad_wbar[b];
  return out;
}

double zero_intensity(Cx z, int N) {
  const double d = 1.0 + std::norm(z);
  return double(N) / (M_PI * d * d);
}

double k21_connected(Cx z, Cx w, int N) {
  if (fs_distance(AffinePoint(z), AffinePoint(w)) < 1e-10)
    throw DiagonalEvaluationError("k21: evaluation on the diagonal");
  const double nz = 1.0 + std::norm(z), nw = 1.0 + std::norm(w);
  const Cx zw = Cx(1.0) + z * std::conj(w);  // 1 + z conj(w)
  const Cx wz = std::conj(zw);               // 1 + conj(z) w
  const double lam = lambda_n(AffinePoint(z), AffinePoint(w), N);
  const double halfN = 0.5 * N;

  const Cx lam_zb = halfN * (z / nz - w / wz);
  const Cx lam_wb = halfN * (w / nw - z / zw);
  const Cx lam_w = std::conj(lam_wb);
  const double lam_zzb = halfN / (nz * nz);
  const double lam_wwb = halfN / (nw * nw);
  const Cx lam_zwb = -halfN / (zw * zw);

  const double f2 = f_deriv(lam, 2);
  const double f3 = f_deriv(lam, 3);
  const double f4 = f_deriv(lam, 4);

  const double g_z = std::norm(lam_zb);  // lam_z lam_zb
  const double g_w = std::norm(lam_wb);
  const double q4 = f4 * g_z * g_w +
                    f3 * (lam_zzb * g_w + lam_wwb * g_z + 2.0 * std::real(lam_zwb * lam_zb * lam_w)) +
                    f2 * (lam_zzb * lam_wwb + std::norm(lam_zwb));
  return 4.0 * q4;
}

double k21_density(Cx z, Cx w, int N) {
  return k21_connected(z, w, N) + zero_intensity(z, N) * zero_intensity(w, N);
}

}  // namespace zvar
