#include "zvar/kernel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "zvar/errors.hpp"

namespace zvar {

namespace {

// (1+|z|^2)(1+|w|^2) - |1+z.conj(w)|^2 expanded by the Lagrange identity:
// |z-w|^2 + sum_{a<b} |z_a w_b - z_b w_a|^2, nonnegative and free of
// cancellation near the diagonal.
double excess(const AffinePoint& z, const AffinePoint& w) {
  const int m = z.dim();
  double s = 0.0;
  for (int a = 0; a < m; ++a) s += std::norm(z.coords[a] - w.coords[a]);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      s += std::norm(z.coords[a] * w.coords[b] - z.coords[b] * w.coords[a]);
  return s;
}

void check_pair(const AffinePoint& z, const AffinePoint& w) {
  if (z.dim() != w.dim() || z.dim() < 1)
    throw std::invalid_argument("kernel: points must share a dimension m >= 1");
}

}  // namespace

double lambda_n(const AffinePoint& z, const AffinePoint& w, int N) {
  check_pair(z, w);
  const double den = std::norm(Cx(1.0) + dot_conj(z, w));
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * N * std::log1p(excess(z, w) / den);
}

double p_n(const AffinePoint& z, const AffinePoint& w, int N) {
  return std::exp(-lambda_n(z, w, N));
}

KernelEval grad_lambda(const AffinePoint& z, const AffinePoint& w, int N) {
  check_pair(z, w);
  const Cx zw = Cx(1.0) + dot_conj(z, w);          // 1 + z.conj(w)
  const Cx wz = std::conj(zw);                     // 1 + conj(z).w
  if (zw == Cx(0.0)) throw PoleError("grad_lambda: pole at 1 + z.conj(w) = 0");
  const int m = z.dim();
  const double nz = 1.0 + z.norm2(), nw = 1.0 + w.norm2();
  KernelEval out;
  out.lambda = lambda_n(z, w, N);
  out.grad_zbar.resize(size_t(m));
  out.grad_wbar.resize(size_t(m));
  for (int a = 0; a < m; ++a) {
    out.grad_zbar[a] = 0.5 * N * (z.coords[a] / nz - w.coords[a] / wz);
    out.grad_wbar[a] = 0.5 * N * (w.coords[a] / nw - z.coords[a] / zw);
  }
  return out;
}

double fs_distance(const AffinePoint& z, const AffinePoint& w) {
  check_pair(z, w);
  const double den = std::norm(Cx(1.0) + dot_conj(z, w));
  if (den == 0.0) return 0.5 * M_PI;
  const double q = excess(z, w) / den;  // tan^2(dist)
  return std::atan(std::sqrt(q));
}

}  // namespace zvar
