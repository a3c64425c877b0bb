#include "zvar/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zvar/errors.hpp"
#include "zvar/special.hpp"

namespace zvar {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// p(z) and p'(z) simultaneously by Horner.
void eval_poly(const std::vector<Cx>& a, Cx z, Cx& p, Cx& dp) {
  p = 0.0;
  dp = 0.0;
  for (int j = int(a.size()) - 1; j >= 0; --j) {
    dp = dp * z + p;
    p = p * z + a[j];
  }
}

// sum_j |a_j| |z|^j, the scale for backward-error residuals.
double eval_scale(const std::vector<Cx>& a, Cx z) {
  const double r = std::abs(z);
  double s = 0.0;
  for (int j = int(a.size()) - 1; j >= 0; --j) s = s * r + std::abs(a[j]);
  return s;
}

constexpr double kResidualGate = 1e-8;

}  // namespace

std::vector<Cx> roots_of_coeffs(const std::vector<Cx>& a_in) {
  const int n = int(a_in.size()) - 1;
  if (n < 1) throw std::invalid_argument("roots_of_coeffs: degree >= 1 required");
  if (a_in[size_t(n)] == Cx(0.0)) throw std::invalid_argument("roots_of_coeffs: zero leading coefficient");
  // Normalize by the largest magnitude to keep the evaluation scale sane.
  double amax = 0.0;
  for (const Cx& c : a_in) amax = std::max(amax, std::abs(c));
  std::vector<Cx> a(a_in);
  for (Cx& c : a) c /= amax;

  // Perturbed unit circle starts: zeros of the FS ensembles concentrate
  // near |z| = 1, and any bad start is caught by the residual gate.
  std::vector<Cx> roots(size_t(n), Cx(0.0));
  for (int k = 0; k < n; ++k) {
    const double jitter = 1e-3 * (2.0 * (double(mix64(std::uint64_t(k) + 17) >> 11) * 0x1p-53) - 1.0);
    const double theta = 2.0 * M_PI * (k + 0.37) / n;
    roots[size_t(k)] = std::polar(1.0 + jitter, theta);
  }

  std::vector<bool> done(size_t(n), false);
  const int max_sweeps = 400;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_step = 0.0;
    for (int k = 0; k < n; ++k) {
      if (done[size_t(k)]) continue;
      Cx p, dp;
      eval_poly(a, roots[size_t(k)], p, dp);
      if (std::abs(p) <= 1e-15 * eval_scale(a, roots[size_t(k)])) {
        done[size_t(k)] = true;
        continue;
      }
      const Cx newton = (dp != Cx(0.0)) ? p / dp : Cx(1e-3);
      Cx repulse = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        const Cx d = roots[size_t(k)] - roots[size_t(j)];
        if (d != Cx(0.0)) repulse += 1.0 / d;
      }
      const Cx denom = Cx(1.0) - newton * repulse;
      const Cx step = (denom != Cx(0.0)) ? newton / denom : newton;
      roots[size_t(k)] -= step;
      max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(roots[size_t(k)])));
    }
    if (max_step < 1e-14) break;
  }
  // One Newton polish per root.
  for (int k = 0; k < n; ++k) {
    Cx p, dp;
    eval_poly(a, roots[size_t(k)], p, dp);
    if (dp != Cx(0.0)) roots[size_t(k)] -= p / dp;
  }
  return roots;
}

ZeroSet all_roots(const RandomPolynomial& poly) {
  if (poly.m() != 1) throw std::invalid_argument("all_roots: m = 1 only");
  const std::vector<Cx> a = poly.weighted_coeffs_1d();
  double amax = 0.0;
  for (const Cx& c : a) amax = std::max(amax, std::abs(c));
  if (!(std::abs(a.back()) > 1e-300 * amax))
    throw RootAtInfinityError("all_roots: leading coefficient underflow");

  const std::vector<Cx> roots = roots_of_coeffs(a);
  ZeroSet zs;
  zs.method = CountMethod::Enumerated;
  zs.points.reserve(roots.size());
  for (const Cx& r : roots) {
    Cx p, dp;
    eval_poly(a, r, p, dp);
    if (!(std::abs(p) <= kResidualGate * eval_scale(a, r)))
      throw DegenerateSystemError("all_roots: residual gate failed");
    zs.points.emplace_back(r);
  }
  return zs;
}

namespace {

// p'/p evaluator with the weight folding hoisted out of the inner loop.
// For N <= 600 the weighted coefficients fit in doubles (plain Horner);
// beyond that the terms are scaled by exp(lw_j + j log|z| - max), with the
// scaled coefficient vector cached per |z| (contours around centered disks
// reuse it for every node).
class LogDerivEvaluator {
 public:
  explicit LogDerivEvaluator(const RandomPolynomial& p) : N_(p.degree()) {
    if (N_ <= 600) {
      weighted_ = p.weighted_coeffs_1d();
    } else {
      const auto& c = p.coeffs();
      raw_.assign(c.begin(), c.end());
      lw_.resize(size_t(N_ + 1));
      for (int j = 0; j <= N_; ++j)
        lw_[size_t(j)] = 0.5 * (log_factorial(N_) - log_factorial(N_ - j) - log_factorial(j));
      scaled_.resize(size_t(N_ + 1));
    }
  }

  Cx operator()(Cx z) {
    if (!weighted_.empty()) {
      Cx pv = 0.0, dv = 0.0;
      for (int j = N_; j >= 0; --j) {
        dv = dv * z + pv;
        pv = pv * z + weighted_[size_t(j)];
      }
      return dv / pv;
    }
    const double t = std::log(std::abs(z));
    if (t != cached_t_) {
      double mmax = -1e300;
      for (int j = 0; j <= N_; ++j) mmax = std::max(mmax, lw_[size_t(j)] + j * t);
      for (int j = 0; j <= N_; ++j)
        scaled_[size_t(j)] = raw_[size_t(j)] * std::exp(lw_[size_t(j)] + j * t - mmax);
      cached_t_ = t;
    }
    // p = e^{max} sum scaled_j u^j with u = z/|z|; p' = (1/z) sum j scaled_j u^j
    const Cx u = z / std::abs(z);
    Cx pv = 0.0, jv = 0.0;
    for (int j = N_; j >= 0; --j) {
      pv = pv * u + scaled_[size_t(j)];
      jv = jv * u + double(j) * scaled_[size_t(j)];
    }
    return jv / (pv * z);
  }

 private:
  int N_;
  std::vector<Cx> weighted_;
  std::vector<Cx> raw_;
  std::vector<double> lw_;
  std::vector<Cx> scaled_;
  double cached_t_ = std::numeric_limits<double>::quiet_NaN();
};

// Adaptive trapezoid refinement of int f(gamma(t)) gamma'(t) dt on [t0, t1].
// Segments are bisected until the local trapezoid and midpoint estimates
// agree; a zero hugging the contour forces unbounded local depth, which is
// reported as a near-boundary zero once the eval budget is exhausted.
struct ContourQuad {
  LogDerivEvaluator& logderiv;
  const CurvePiece& piece;
  long evals = 0;
  long budget = 0;

  Cx f(double t) {
    ++evals;
    const Cx z = piece.gamma(t);
    return logderiv(z) * piece.gamma_prime(t);
  }

  Cx segment(double t0, double t1, Cx f0, Cx f1, double tol, int depth) {
    if (evals > budget)
      throw NearBoundaryZeroError("count_zeros_contour: node budget exhausted");
    const double tm = 0.5 * (t0 + t1);
    const Cx fm = f(tm);
    const Cx trap = 0.5 * (f0 + f1) * (t1 - t0);
    const Cx two = 0.25 * (f0 + 2.0 * fm + f1) * (t1 - t0);
    if (depth > 0 && std::abs(two - trap) <= tol) return two;
    if (depth > 48) throw NearBoundaryZeroError("count_zeros_contour: zero on the contour");
    return segment(t0, tm, f0, fm, 0.5 * tol, depth + 1) +
           segment(tm, t1, fm, f1, 0.5 * tol, depth + 1);
  }
};

}  // namespace

int count_zeros_contour(const RandomPolynomial& p, const Domain& U) {
  if (p.m() != 1) throw std::invalid_argument("count_zeros_contour: m = 1 only");
  const std::vector<CurvePiece> pieces = curve_pieces(U);

  // seed segments fine enough to see every zero cluster at scale N^{-1/2}
  const int n0 = std::max(32, 4 * int(std::ceil(std::sqrt(double(p.degree())))));
  LogDerivEvaluator logderiv(p);
  Cx acc = 0.0;
  for (const CurvePiece& piece : pieces) {
    ContourQuad quad{logderiv, piece};
    quad.budget = 1L << 17;
    const double tol_piece = 2.0 * M_PI * 0.002 / double(pieces.size()) / n0;
    Cx prev_f = quad.f(0.0);
    for (int i = 0; i < n0; ++i) {
      const double t1 = double(i + 1) / n0;
      const Cx f1 = quad.f(t1);
      acc += quad.segment(double(i) / n0, t1, prev_f, f1, tol_piece, 0);
      prev_f = f1;
    }
  }
  const Cx raw = acc / Cx(0.0, 2.0 * M_PI);
  const double nearest = std::round(raw.real());
  if (std::abs(raw.real() - nearest) < 0.01 && std::abs(raw.imag()) < 0.01 && nearest >= 0.0 &&
      nearest <= double(p.degree()))
    return int(nearest);
  throw NearBoundaryZeroError("count_zeros_contour: integral not near an integer");
}

int count_in_domain(const ZeroSet& zs, const Domain& U) {
  int c = 0;
  for (const AffinePoint& pt : zs.points)
    if (contains(U, pt)) ++c;
  return c;
}

// ---------------------------------------------------------------------------
// Two-variable systems via the Sylvester resultant.

namespace {

// Dense weighted coefficients b[j1][j2] = c_J sqrt((N choose J)).
std::vector<std::vector<Cx>> weighted_coeffs_2d(const RandomPolynomial& p) {
  const int N = p.degree();
  std::vector<std::vector<Cx>> b(size_t(N + 1), std::vector<Cx>(size_t(N + 1), Cx(0.0)));
  const auto& idx = p.multi_indices();
  const auto& c = p.coeffs();
  for (size_t i = 0; i < c.size(); ++i) {
    const int j1 = idx[i].entries[0], j2 = idx[i].entries[1];
    b[size_t(j1)][size_t(j2)] = c[i] * std::exp(log_weight(N, idx[i]));
  }
  return b;
}

Cx eval_2d(const std::vector<std::vector<Cx>>& b, Cx z1, Cx z2) {
  const int N = int(b.size()) - 1;
  Cx acc = 0.0;
  for (int j1 = N; j1 >= 0; --j1) {
    Cx inner = 0.0;
    for (int j2 = N - j1; j2 >= 0; --j2) inner = inner * z2 + b[size_t(j1)][size_t(j2)];
    acc = acc * z1 + inner;
  }
  return acc;
}

double scale_2d(const std::vector<std::vector<Cx>>& b, Cx z1, Cx z2) {
  const int N = int(b.size()) - 1;
  const double r1 = std::abs(z1), r2 = std::abs(z2);
  double acc = 0.0, cmax = 0.0;
  for (int j1 = N; j1 >= 0; --j1) {
    double inner = 0.0;
    for (int j2 = N - j1; j2 >= 0; --j2) {
      inner = inner * r2 + std::abs(b[size_t(j1)][size_t(j2)]);
      cmax = std::max(cmax, std::abs(b[size_t(j1)][size_t(j2)]));
    }
    acc = acc * r1 + inner;
  }
  // the backward-error scale must not vanish at the origin
  return std::max(acc, cmax);
}

// Coefficients in z2 of p(x, .) for fixed x: u[d] = sum_j1 b[j1][d] x^j1.
std::vector<Cx> univariate_in_z2(const std::vector<std::vector<Cx>>& b, Cx x) {
  const int N = int(b.size()) - 1;
  std::vector<Cx> u(size_t(N + 1), Cx(0.0));
  for (int d = 0; d <= N; ++d) {
    Cx s = 0.0;
    for (int j1 = N - d; j1 >= 0; --j1) s = s * x + b[size_t(j1)][size_t(d)];
    u[size_t(d)] = s;
  }
  return u;
}

// det of a small complex matrix by partial-pivot LU, returned as
// mantissa * exp(logmag) so huge arguments cannot overflow.
struct ScaledDet {
  Cx mantissa;   // O(1) magnitude, or 0
  double logmag; // log of the positive scale factor
};

ScaledDet determinant(std::vector<Cx>& mat, int n) {
  ScaledDet out{Cx(1.0), 0.0};
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(mat[size_t(col) * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(mat[size_t(r) * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return {Cx(0.0), 0.0};
    if (piv != col) {
      for (int c2 = col; c2 < n; ++c2) std::swap(mat[size_t(piv) * n + c2], mat[size_t(col) * n + c2]);
      out.mantissa = -out.mantissa;
    }
    const Cx d = mat[size_t(col) * n + col];
    out.mantissa *= d / best;
    out.logmag += std::log(best);
    for (int r = col + 1; r < n; ++r) {
      const Cx f = mat[size_t(r) * n + col] / d;
      if (f == Cx(0.0)) continue;
      for (int c2 = col + 1; c2 < n; ++c2) mat[size_t(r) * n + c2] -= f * mat[size_t(col) * n + c2];
    }
  }
  return out;
}

// Sylvester determinant Res_{z2}(p1(x,.), p2(x,.)).
ScaledDet sylvester_det_scaled(const std::vector<std::vector<Cx>>& b1,
                               const std::vector<std::vector<Cx>>& b2, Cx x) {
  const int N = int(b1.size()) - 1;
  const int M = 2 * N;
  const std::vector<Cx> u1 = univariate_in_z2(b1, x);
  const std::vector<Cx> u2 = univariate_in_z2(b2, x);
  std::vector<Cx> S(size_t(M) * size_t(M), Cx(0.0));
  for (int i = 0; i < N; ++i)
    for (int d = 0; d <= N; ++d) {
      S[size_t(i) * M + (i + N - d)] = u1[size_t(d)];
      S[size_t(N + i) * M + (i + N - d)] = u2[size_t(d)];
    }
  return determinant(S, M);
}

Cx sylvester_det(const std::vector<std::vector<Cx>>& b1, const std::vector<std::vector<Cx>>& b2,
                 Cx x) {
  const ScaledDet d = sylvester_det_scaled(b1, b2, x);
  return d.mantissa * std::exp(d.logmag);
}

}  // namespace

namespace {

// Shear z1 = y1 + tau y2, z2 = y2.  A fixed generic tau makes the
// y2-leading coefficient constant and the N^2 projected y1 values
// distinct, so the resultant elimination never sees clustered roots
// even for separable inputs.
constexpr Cx kShear{0.37684127, 0.19306417};

std::vector<std::vector<Cx>> shear_coeffs(const std::vector<std::vector<Cx>>& b) {
  const int N = int(b.size()) - 1;
  std::vector<std::vector<Cx>> out(size_t(N + 1), std::vector<Cx>(size_t(N + 1), Cx(0.0)));
  for (int j1 = 0; j1 <= N; ++j1) {
    // binomial row for (y1 + tau y2)^{j1}
    std::vector<Cx> binom(size_t(j1 + 1), Cx(1.0));
    for (int i = j1 - 1; i >= 0; --i) {
      // C(j1, i) tau^{j1-i} built from the right
      binom[size_t(i)] = binom[size_t(i + 1)] * kShear * double(i + 1) / double(j1 - i);
    }
    for (int j2 = 0; j2 <= N - j1; ++j2) {
      const Cx c = b[size_t(j1)][size_t(j2)];
      if (c == Cx(0.0)) continue;
      for (int i = 0; i <= j1; ++i) out[size_t(i)][size_t(j1 - i + j2)] += c * binom[size_t(i)];
    }
  }
  return out;
}

}  // namespace

ZeroSet solve_system_2d(const RandomPolynomial& p1, const RandomPolynomial& p2) {
  if (p1.m() != 2 || p2.m() != 2) throw std::invalid_argument("solve_system_2d: m = 2 only");
  if (p1.degree() != p2.degree()) throw std::invalid_argument("solve_system_2d: degrees must match");
  const int N = p1.degree();
  if (N > 12) throw std::invalid_argument("solve_system_2d: N <= 12");

  const auto b1_orig = weighted_coeffs_2d(p1);
  const auto b2_orig = weighted_coeffs_2d(p2);
  const auto b1 = shear_coeffs(b1_orig);
  const auto b2 = shear_coeffs(b2_orig);

  // Resultant R(z1) of degree N^2 (a.s.) by evaluation on circles and
  // inverse DFT; the extra headroom in point count absorbs the
  // worst-case degree bound 2 N^2 of the Sylvester determinant.
  const int deg = N * N;
  const int npts = 2 * deg + 1;
  // Roots of R(rho y) in y; DFT noise is uniform relative to the circle
  // maximum, so each sampling radius resolves the roots with |x| ~ rho
  // and smaller; outer roots need their own pass.
  auto resultant_roots = [&](double rho) {
    std::vector<Cx> R(size_t(npts), Cx(0.0));
    std::vector<Cx> dets(size_t(npts), Cx(0.0));
    for (int t = 0; t < npts; ++t)
      dets[size_t(t)] = sylvester_det(b1, b2, std::polar(rho, 2.0 * M_PI * t / npts));
    for (int k = 0; k < npts; ++k) {
      Cx acc = 0.0;
      for (int t = 0; t < npts; ++t)
        acc += dets[size_t(t)] * std::polar(1.0, -2.0 * M_PI * double(k) * t / npts);
      R[size_t(k)] = acc / double(npts);
    }
    double rmax = 0.0;
    for (const Cx& c : R) rmax = std::max(rmax, std::abs(c));
    if (!(rmax > 0.0) || !(std::abs(R[size_t(deg)]) > 1e-250 * rmax))
      throw DegenerateSystemError("solve_system_2d: resultant degenerate");
    for (int k = deg + 1; k < npts; ++k)
      if (std::abs(R[size_t(k)]) > 1e-5 * rmax)
        throw DegenerateSystemError("solve_system_2d: resultant degree exceeds Bezout bound");
    R.resize(size_t(deg + 1));
    std::vector<Cx> roots = roots_of_coeffs(R);
    for (Cx& y : roots) y *= rho;
    return roots;
  };

  std::vector<Cx> z1_roots = resultant_roots(1.0);

  // The interpolated coefficients carry DFT noise that the outermost
  // projections amplify, so refine all roots together by Aberth-Ehrlich
  // directly on the Sylvester determinant (backward-stable to evaluate
  // anywhere).  The repulsion term keeps perturbed starts from collapsing
  // onto one another.
  {
    std::vector<bool> done(z1_roots.size(), false);
    for (int sweep = 0; sweep < 80; ++sweep) {
      double max_step = 0.0;
      for (size_t k = 0; k < z1_roots.size(); ++k) {
        if (done[k]) continue;
        const Cx x = z1_roots[k];
        const double h = 1e-7 * (1.0 + std::abs(x));
        const ScaledDet f = sylvester_det_scaled(b1, b2, x);
        if (f.mantissa == Cx(0.0)) {
          done[k] = true;
          continue;
        }
        const ScaledDet fp = sylvester_det_scaled(b1, b2, x + h);
        const ScaledDet fm = sylvester_det_scaled(b1, b2, x - h);
        // f' via central difference in the common scale of f
        const Cx deriv = (fp.mantissa * std::exp(fp.logmag - f.logmag) -
                          fm.mantissa * std::exp(fm.logmag - f.logmag)) /
                         (2.0 * h);
        if (deriv == Cx(0.0)) continue;
        const Cx newton = f.mantissa / deriv;
        Cx repulse = 0.0;
        for (size_t j = 0; j < z1_roots.size(); ++j) {
          if (j == k) continue;
          const Cx dxy = x - z1_roots[j];
          if (dxy != Cx(0.0)) repulse += 1.0 / dxy;
        }
        const Cx denom = Cx(1.0) - newton * repulse;
        Cx step = (denom != Cx(0.0)) ? newton / denom : newton;
        const double cap = 0.5 * (1.0 + std::abs(x));
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        z1_roots[k] = x - step;
        const double rel = std::abs(step) / (1.0 + std::abs(x));
        max_step = std::max(max_step, rel);
        if (rel < 1e-14) done[k] = true;
      }
      if (max_step < 1e-13) break;
    }
  }

  ZeroSet zs;
  zs.method = CountMethod::Enumerated;
  zs.points.reserve(size_t(deg));
  // Damped Newton on the original pair from a sheared-frame candidate.
  auto polish = [&](Cx y1, Cx y2, int iters) {
    Cx Z1 = y1 + kShear * y2, Z2 = y2;
    double fn = std::abs(eval_2d(b1_orig, Z1, Z2)) + std::abs(eval_2d(b2_orig, Z1, Z2));
    for (int it = 0; it < iters; ++it) {
      const double h = 1e-7;
      const Cx f1 = eval_2d(b1_orig, Z1, Z2), f2 = eval_2d(b2_orig, Z1, Z2);
      const Cx j11 = (eval_2d(b1_orig, Z1 + h, Z2) - f1) / h,
               j12 = (eval_2d(b1_orig, Z1, Z2 + h) - f1) / h;
      const Cx j21 = (eval_2d(b2_orig, Z1 + h, Z2) - f2) / h,
               j22 = (eval_2d(b2_orig, Z1, Z2 + h) - f2) / h;
      const Cx det = j11 * j22 - j12 * j21;
      if (det == Cx(0.0)) break;
      Cx d1 = (f1 * j22 - f2 * j12) / det;
      Cx d2 = (f2 * j11 - f1 * j21) / det;
      for (int damp = 0; damp < 4; ++damp) {
        const Cx t1 = Z1 - d1, t2 = Z2 - d2;
        const double ft = std::abs(eval_2d(b1_orig, t1, t2)) + std::abs(eval_2d(b2_orig, t1, t2));
        if (ft <= fn || damp == 3) {
          Z1 = t1;
          Z2 = t2;
          fn = ft;
          break;
        }
        d1 *= 0.5;
        d2 *= 0.5;
      }
      if (std::abs(d1) + std::abs(d2) < 1e-13 * (1.0 + std::abs(Z1) + std::abs(Z2))) break;
    }
    return std::pair<Cx, Cx>{Z1, Z2};
  };
  auto residual = [&](Cx Z1, Cx Z2) {
    return std::max(std::abs(eval_2d(b1_orig, Z1, Z2)) / scale_2d(b1_orig, Z1, Z2),
                    std::abs(eval_2d(b2_orig, Z1, Z2)) / scale_2d(b2_orig, Z1, Z2));
  };

  for (const Cx& x : z1_roots) {
    // Candidates: roots of p1(x, .) in the sheared frame; pick the one
    // minimizing the pair residual.  Fall back to p2 if p1 degenerates.
    std::vector<Cx> u1 = univariate_in_z2(b1, x);
    while (u1.size() > 1 && std::abs(u1.back()) == 0.0) u1.pop_back();
    if (u1.size() < 2) {
      u1 = univariate_in_z2(b2, x);
      while (u1.size() > 1 && std::abs(u1.back()) == 0.0) u1.pop_back();
      if (u1.size() < 2) throw DegenerateSystemError("solve_system_2d: degenerate in z2");
    }
    const std::vector<Cx> cand = roots_of_coeffs(u1);
    Cx best = cand.front();
    double best_res = 1e300;
    for (const Cx& y : cand) {
      const double r = std::abs(eval_2d(b2, x, y)) + std::abs(eval_2d(b1, x, y));
      if (r < best_res) {
        best_res = r;
        best = y;
      }
    }
    auto [Z1, Z2] = polish(x, best, 8);
    if (residual(Z1, Z2) > 1e-6) {
      // Clustered projections can send the cheap pass into the wrong
      // basin; retry from every candidate of both polynomials.
      std::vector<Cx> u2 = univariate_in_z2(b2, x);
      while (u2.size() > 1 && std::abs(u2.back()) == 0.0) u2.pop_back();
      std::vector<Cx> all = cand;
      if (u2.size() >= 2)
        for (const Cx& y : roots_of_coeffs(u2)) all.push_back(y);
      double rbest = 1e300;
      for (const Cx& y : all) {
        const auto [t1, t2] = polish(x, y, 16);
        const double r = residual(t1, t2);
        if (r < rbest) {
          rbest = r;
          Z1 = t1;
          Z2 = t2;
        }
      }
    }
    if (residual(Z1, Z2) > 1e-6)
      throw DegenerateSystemError("solve_system_2d: residual gate failed");
    zs.points.push_back(AffinePoint(std::vector<Cx>{Z1, Z2}));
  }
  if (zs.count() != deg) throw DegenerateSystemError("solve_system_2d: Bezout count not met");
  // a cluster mishap can resolve two projections to one point
  for (size_t i = 0; i < zs.points.size(); ++i)
    for (size_t j = i + 1; j < zs.points.size(); ++j) {
      const double d = std::abs(zs.points[i].coords[0] - zs.points[j].coords[0]) +
                       std::abs(zs.points[i].coords[1] - zs.points[j].coords[1]);
      if (d < 1e-7 * (1.0 + zs.points[i].norm2()))
        throw DegenerateSystemError("solve_system_2d: duplicate solution points");
    }
  return zs;
}

}  // namespace zvar
