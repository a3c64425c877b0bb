#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "zvar/ensemble.hpp"
#include "zvar/errors.hpp"
#include "zvar/kernel.hpp"
#include "zvar/rng.hpp"

using namespace zvar;

namespace {

// Brute-force normalized kernel from the weighted monomial basis,
// P = |sum_J C(N,J) z^J conj(w)^J| / sqrt(sum_J C|z^J|^2 sum_J C|w^J|^2),
// accumulated in log space so it works beyond N ~ 60.
double p_n_basis_sum(const AffinePoint& z, const AffinePoint& w, int N) {
  const auto idx = enumerate_multi_indices(z.dim(), N);
  long double cross_re = 0, cross_im = 0, zz = 0, ww = 0;
  for (const MultiIndex& J : idx) {
    const long double weight = std::exp((long double)log_weight(N, J));
    std::complex<long double> tz = weight, tw = weight;
    for (int a = 0; a < z.dim(); ++a) {
      for (int rep = 0; rep < J.entries[size_t(a)]; ++rep) {
        tz *= std::complex<long double>(z.coords[size_t(a)].real(), z.coords[size_t(a)].imag());
        tw *= std::complex<long double>(w.coords[size_t(a)].real(), w.coords[size_t(a)].imag());
      }
    }
    const std::complex<long double> tcross = tz * std::conj(tw);
    zz += std::norm(tz);
    ww += std::norm(tw);
    cross_re += tcross.real();
    cross_im += tcross.imag();
  }
  const long double cross = std::sqrt(cross_re * cross_re + cross_im * cross_im);
  return double(cross / std::sqrt(zz * ww));
}

AffinePoint random_point(CounterRng& rng, int m, double scale) {
  std::vector<Cx> c(size_t(m), Cx(0.0));
  for (Cx& v : c) v = scale * Cx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  return AffinePoint(std::move(c));
}

}  // namespace

TEST_CASE("lambda closed form basics") {
  CHECK(lambda_n(Cx(0.3, 0.7), Cx(0.3, 0.7), 15) == doctest::Approx(0.0));
  CHECK(lambda_n(Cx(0.0), Cx(1.0), 2) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(p_n(Cx(0.2, 0.1), Cx(0.2, 0.1), 9) == doctest::Approx(1.0));
  // P_N(0, w) = (1+|w|^2)^{-N/2}
  CHECK(p_n(Cx(0.0), Cx(1.2, -0.4), 7) ==
        doctest::Approx(std::pow(1.0 + std::norm(Cx(1.2, -0.4)), -3.5)).epsilon(1e-13));
}

TEST_CASE("symmetry and range") {
  CounterRng rng({2024, 0});
  for (int i = 0; i < 10000; ++i) {
    const AffinePoint z = random_point(rng, 1, 2.0);
    const AffinePoint w = random_point(rng, 1, 2.0);
    const double lzw = lambda_n(z, w, 11);
    CHECK(lzw == lambda_n(w, z, 11));
    const double p = p_n(z, w, 11);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("basis-sum oracle matches the closed form") {
  CounterRng rng({5, 1});
  for (int i = 0; i < 20; ++i) {
    const AffinePoint z = random_point(rng, 1, 1.5);
    const AffinePoint w = random_point(rng, 1, 1.5);
    CHECK(p_n(z, w, 7) == doctest::Approx(p_n_basis_sum(z, w, 7)).epsilon(1e-10));
  }
  for (int i = 0; i < 5; ++i) {
    const AffinePoint z = random_point(rng, 2, 1.0);
    const AffinePoint w = random_point(rng, 2, 1.0);
    CHECK(p_n(z, w, 5) == doctest::Approx(p_n_basis_sum(z, w, 5)).epsilon(1e-10));
    CHECK(p_n(z, w, 40) == doctest::Approx(p_n_basis_sum(z, w, 40)).epsilon(1e-9));
  }
}

TEST_CASE("gradients against finite differences") {
  CHECK(grad_lambda(AffinePoint(Cx(0.0)), AffinePoint(Cx(1.0)), 2).grad_zbar[0].real() ==
        doctest::Approx(-1.0).epsilon(1e-13));
  {
    const KernelEval ke = grad_lambda(AffinePoint(Cx(0.4, 0.2)), AffinePoint(Cx(0.4, 0.2)), 6);
    CHECK(std::abs(ke.grad_zbar[0]) == doctest::Approx(0.0));
    CHECK(std::abs(ke.grad_wbar[0]) == doctest::Approx(0.0));
  }
  CounterRng rng({8, 3});
  const double h = 1e-5;
  for (int i = 0; i < 10; ++i) {
    const AffinePoint z = random_point(rng, 2, 1.2);
    const AffinePoint w = random_point(rng, 2, 1.2);
    const KernelEval ke = grad_lambda(z, w, 9);
    for (int a = 0; a < 2; ++a) {
      // d/dzbar = (1/2)(d/dx + i d/dy) acting on the real function Lambda
      AffinePoint zp = z, zm = z, zi = z, zmi = z;
      zp.coords[size_t(a)] += h;
      zm.coords[size_t(a)] -= h;
      zi.coords[size_t(a)] += Cx(0, h);
      zmi.coords[size_t(a)] -= Cx(0, h);
      const Cx fd = Cx((lambda_n(zp, w, 9) - lambda_n(zm, w, 9)) / (2 * h),
                       (lambda_n(zi, w, 9) - lambda_n(zmi, w, 9)) / (2 * h)) *
                    0.5;
      CHECK(std::abs(fd - ke.grad_zbar[size_t(a)]) < 1e-6);
    }
  }
}

TEST_CASE("mixed antiholomorphic derivative of Lambda vanishes") {
  // d^2 Lambda / dzbar_a dwbar_b = 0 on CP^m: check grad_zbar is
  // insensitive to antiholomorphic variations of w.
  CounterRng rng({21, 0});
  const double h = 1e-5;
  for (int i = 0; i < 10; ++i) {
    const AffinePoint z = random_point(rng, 2, 1.0);
    const AffinePoint w = random_point(rng, 2, 1.0);
    for (int b = 0; b < 2; ++b) {
      AffinePoint wp = w, wm = w, wi = w, wmi = w;
      wp.coords[size_t(b)] += h;
      wm.coords[size_t(b)] -= h;
      wi.coords[size_t(b)] += Cx(0, h);
      wmi.coords[size_t(b)] -= Cx(0, h);
      for (int a = 0; a < 2; ++a) {
        const Cx gx = (grad_lambda(z, wp, 6).grad_zbar[size_t(a)] -
                       grad_lambda(z, wm, 6).grad_zbar[size_t(a)]) /
                      (2 * h);
        const Cx gy = (grad_lambda(z, wi, 6).grad_zbar[size_t(a)] -
                       grad_lambda(z, wmi, 6).grad_zbar[size_t(a)]) /
                      (2 * h);
        const Cx dbar = 0.5 * (gx + Cx(0, 1) * gy);
        CHECK(std::abs(dbar) < 1e-6);
      }
    }
  }
}

TEST_CASE("gradient pole") {
  // 1 + conj(z) w = 0 at z = 1, w = -1
  CHECK_THROWS_AS((void)grad_lambda(AffinePoint(Cx(1.0)), AffinePoint(Cx(-1.0)), 3), PoleError);
  CHECK(std::isinf(lambda_n(Cx(1.0), Cx(-1.0), 3)));
  CHECK(p_n(Cx(1.0), Cx(-1.0), 3) == doctest::Approx(0.0));
}

TEST_CASE("fs distance") {
  CHECK(fs_distance(Cx(0.3, 0.1), Cx(0.3, 0.1)) == doctest::Approx(0.0));
  // antipodal points are at distance pi/2
  CHECK(fs_distance(Cx(1.0), Cx(-1.0)) == doctest::Approx(M_PI / 2).epsilon(1e-14));
  // P_N = cos(dist)^N exactly
  const Cx z(0.4, -0.2), w(-0.1, 0.6);
  CHECK(p_n(z, w, 13) == doctest::Approx(std::pow(std::cos(fs_distance(z, w)), 13)).epsilon(1e-12));
}

TEST_CASE("near-diagonal gaussian scaling") {
  // P_N(z0 + u/sqrt(N), z0 + v/sqrt(N)) -> exp(-|u-v|^2/2) in normal
  // coordinates; deviations shrink roughly like N^{-1/2}.  Displacements
  // bounded by sqrt(log N) for every N in the sweep.
  CounterRng rng({31, 0});
  auto disk_draw = [&rng](double radius) {
    for (;;) {
      const Cx u(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
      if (std::abs(u) <= 1.0) return radius * u;
    }
  };
  const double b = std::sqrt(std::log(100.0));
  std::vector<std::array<Cx, 3>> draws;
  for (int i = 0; i < 60; ++i)
    draws.push_back({random_point(rng, 1, 1.0).scalar(), disk_draw(b), disk_draw(b)});
  std::vector<double> devs;
  for (int N : {100, 1000, 10000}) {
    double mx = 0.0;
    for (const auto& d : draws) {
      const Cx z0 = d[0], u = d[1], v = d[2];
      const double s = (1.0 + std::norm(z0)) / std::sqrt(double(N));
      const double p = p_n(z0 + u * s, z0 + v * s, N);
      mx = std::max(mx, std::abs(p - std::exp(-0.5 * std::norm(u - v))));
    }
    devs.push_back(mx);
  }
  CHECK(devs[1] < devs[0]);
  CHECK(devs[2] < devs[1]);
  const double slope = std::log(devs[2] / devs[0]) / std::log(10000.0 / 100.0);
  CHECK(slope <= -0.4);
}

TEST_CASE("far off-diagonal decay") {
  // dist >= b sqrt(log N / N) with b^2 > 2k forces P_N <= const N^{-k}:
  // here P_N = cos(d)^N <= exp(-N d^2 / 2 (1+...)) ~ N^{-b^2/2}.
  for (int k : {1, 2}) {
    const double b = std::sqrt(2.0 * k + 0.5);
    for (int N : {100, 1000, 10000}) {
      const double d = b * std::sqrt(std::log(double(N)) / N);
      // walk out distance >= d from a few base points
      for (const Cx z0 : {Cx(0.0), Cx(0.5, 0.2), Cx(-0.3, 0.9)}) {
        Cx step = std::polar(std::tan(d) * (1.0 + std::norm(z0)), 0.9);
        while (fs_distance(z0, z0 + step) < d) step *= 1.05;
        const double p = p_n(z0, z0 + step, N);
        CHECK(p <= 2.0 * std::pow(double(N), -double(k)));
      }
    }
  }
}
