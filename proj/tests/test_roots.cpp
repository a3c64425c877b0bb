#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "zvar/ensemble.hpp"
#include "zvar/errors.hpp"
#include "zvar/roots.hpp"

using namespace zvar;

namespace {

// Expand prod (z - r_k) into monomial coefficients.
std::vector<Cx> expand_from_roots(const std::vector<Cx>& rts) {
  std::vector<Cx> c{Cx(1.0)};
  for (const Cx& r : rts) {
    std::vector<Cx> next(c.size() + 1, Cx(0.0));
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return c;
}

// Wrap explicit weighted coefficients a_j as a RandomPolynomial by
// dividing out the weights.
RandomPolynomial poly_from_weighted(const std::vector<Cx>& a) {
  const int N = int(a.size()) - 1;
  std::vector<Cx> raw(a.size());
  for (int j = 0; j <= N; ++j) raw[size_t(j)] = a[size_t(j)] * std::exp(-log_weight(N, MultiIndex{j}));
  return RandomPolynomial(1, N, raw);
}

void check_contains_root(const ZeroSet& zs, Cx expect, double tol = 1e-8) {
  double best = 1e300;
  for (const AffinePoint& p : zs.points) best = std::min(best, std::abs(p.scalar() - expect));
  CHECK(best < tol);
}

}  // namespace

TEST_CASE("all_roots on z^2 - 1") {
  const RandomPolynomial p = poly_from_weighted({Cx(-1.0), Cx(0.0), Cx(1.0)});
  const ZeroSet zs = all_roots(p);
  REQUIRE(zs.count() == 2);
  check_contains_root(zs, Cx(1.0));
  check_contains_root(zs, Cx(-1.0));
  CHECK(zs.method == CountMethod::Enumerated);
}

TEST_CASE("all_roots recovers a constructed root set") {
  std::vector<Cx> rts;
  for (int k = 1; k <= 10; ++k) rts.push_back(Cx(k / 10.0));
  const RandomPolynomial p = poly_from_weighted(expand_from_roots(rts));
  const ZeroSet zs = all_roots(p);
  REQUIRE(zs.count() == 10);
  for (const Cx& r : rts) check_contains_root(zs, r, 1e-8);
}

TEST_CASE("all_roots on random high degree samples") {
  for (std::uint64_t t = 0; t < 5; ++t) {
    const RandomPolynomial p = sample(1, 200, {31337, t});
    const ZeroSet zs = all_roots(p);
    CHECK(zs.count() == 200);  // root conservation
    const std::vector<Cx> a = p.weighted_coeffs_1d();
    for (const AffinePoint& pt : zs.points) {
      // residual oracle, scaled backward error
      Cx val = 0.0;
      double scale = 0.0;
      const double r = std::abs(pt.scalar());
      for (int j = 200; j >= 0; --j) {
        val = val * pt.scalar() + a[size_t(j)];
        scale = scale * r + std::abs(a[size_t(j)]);
      }
      CHECK(std::abs(val) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("roots are scale invariant") {
  const RandomPolynomial p = sample(1, 40, {5, 9});
  std::vector<Cx> scaled = p.coeffs();
  for (Cx& c : scaled) c *= Cx(3.25e3, -1.1e3);
  const RandomPolynomial q(1, 40, scaled);
  auto za = all_roots(p).points;
  auto zb = all_roots(q).points;
  auto key = [](const AffinePoint& a, const AffinePoint& b) {
    return std::make_pair(a.scalar().real(), a.scalar().imag()) <
           std::make_pair(b.scalar().real(), b.scalar().imag());
  };
  std::sort(za.begin(), za.end(), key);
  std::sort(zb.begin(), zb.end(), key);
  for (size_t i = 0; i < za.size(); ++i)
    CHECK(std::abs(za[i].scalar() - zb[i].scalar()) < 1e-10 * (1.0 + std::abs(za[i].scalar())));
}

TEST_CASE("root at infinity is detected") {
  // leading weighted coefficient zero: degree deficiency
  std::vector<Cx> raw(6, Cx(1.0));
  raw[5] = 0.0;
  const RandomPolynomial p(1, 5, raw);
  CHECK_THROWS_AS((void)all_roots(p), RootAtInfinityError);
}

TEST_CASE("contour count on fixed polynomials") {
  const RandomPolynomial p = poly_from_weighted({Cx(-1.0), Cx(0.0), Cx(1.0)});  // z^2 - 1
  CHECK(count_zeros_contour(p, Domain::disk(Cx(0.0), 1.5)) == 2);
  CHECK(count_zeros_contour(p, Domain::disk(Cx(1.0), 0.5)) == 1);
  CHECK(count_zeros_contour(p, Domain::disk(Cx(0.0), 0.5)) == 0);
  CHECK(count_zeros_contour(p, Domain::annulus(Cx(0.0), 0.5, 1.5)) == 2);
  CHECK(count_zeros_contour(p, Domain::rectangle(Cx(0.0, -1.0), Cx(2.0, 1.0))) == 1);
}

TEST_CASE("contour count rejects a zero on the contour") {
  const RandomPolynomial p = poly_from_weighted({Cx(-1.0), Cx(1.0)});  // z - 1
  CHECK_THROWS_AS((void)count_zeros_contour(p, Domain::disk(Cx(0.0), 1.0)), NearBoundaryZeroError);
}

TEST_CASE("contour count agrees with enumeration over random trials") {
  const Domain domains[] = {Domain::disk(Cx(0.0), 1.0), Domain::annulus(Cx(0.0), 0.5, 1.0),
                            Domain::rectangle(Cx(-0.5, -0.5), Cx(0.5, 0.5))};
  for (int N : {20, 50}) {
    for (std::uint64_t t = 0; t < 500; ++t) {
      const RandomPolynomial p = sample(1, N, {777, t});
      const ZeroSet zs = all_roots(p);
      for (const Domain& U : domains)
        CHECK(count_zeros_contour(p, U) == count_in_domain(zs, U));
    }
  }
}

TEST_CASE("contour count works far beyond the enumeration range") {
  const RandomPolynomial p = sample(1, 2048, {99, 0});
  const int inside = count_zeros_contour(p, Domain::disk(Cx(0.0), 1.0));
  CHECK(inside >= 0);
  CHECK(inside <= 2048);
  // FS-uniform zeros: about half of them in the unit disk
  CHECK(std::abs(inside - 1024) < 5 * std::sqrt(1024.0));
}

TEST_CASE("solve_system_2d on separable and linear systems") {
  {
    // p1 = z1^2 - 1, p2 = z2^2 - 1 (N = 2): four corners
    std::vector<Cx> raw1(6, Cx(0.0)), raw2(6, Cx(0.0));
    RandomPolynomial p1(2, 2, raw1), p2(2, 2, raw2);
    p1.set_coeff(MultiIndex{0, 0}, Cx(-1.0));
    p1.set_coeff(MultiIndex{2, 0}, Cx(1.0));
    p2.set_coeff(MultiIndex{0, 0}, Cx(-1.0));
    p2.set_coeff(MultiIndex{0, 2}, Cx(1.0));
    const ZeroSet zs = solve_system_2d(p1, p2);
    REQUIRE(zs.count() == 4);
    for (double s1 : {-1.0, 1.0})
      for (double s2 : {-1.0, 1.0}) {
        double best = 1e300;
        for (const AffinePoint& p : zs.points)
          best = std::min(best, std::abs(p.coords[0] - Cx(s1)) + std::abs(p.coords[1] - Cx(s2)));
        CHECK(best < 1e-8);
      }
  }
  {
    // p1 = z1 + z2, p2 = z1 - z2 (N = 1): only the origin
    std::vector<Cx> raw(3, Cx(0.0));
    RandomPolynomial p1(2, 1, raw), p2(2, 1, raw);
    const double w = std::exp(-log_weight(1, MultiIndex{1, 0}));
    p1.set_coeff(MultiIndex{1, 0}, w);
    p1.set_coeff(MultiIndex{0, 1}, w);
    p2.set_coeff(MultiIndex{1, 0}, w);
    p2.set_coeff(MultiIndex{0, 1}, -w);
    const ZeroSet zs = solve_system_2d(p1, p2);
    REQUIRE(zs.count() == 1);
    CHECK(std::abs(zs.points[0].coords[0]) < 1e-10);
    CHECK(std::abs(zs.points[0].coords[1]) < 1e-10);
  }
}

TEST_CASE("solve_system_2d satisfies Bezout with small residuals") {
  for (std::uint64_t t = 0; t < 25; ++t) {
    const PolySystem sys = sample_system(2, 4, 2, {2222, t});
    const ZeroSet zs = solve_system_2d(sys.polys[0], sys.polys[1]);
    CHECK(zs.count() == 16);
    for (const AffinePoint& pt : zs.points) {
      CHECK(std::abs(evaluate(sys.polys[0], pt)) <= 1e-6 * (1.0 + std::pow(1.0 + pt.norm2(), 2.0)));
      CHECK(std::abs(evaluate(sys.polys[1], pt)) <= 1e-6 * (1.0 + std::pow(1.0 + pt.norm2(), 2.0)));
    }
  }
  // a system with a common factor is rejected
  std::vector<Cx> raw(6, Cx(0.0));
  RandomPolynomial p1(2, 2, raw), p2(2, 2, raw);
  p1.set_coeff(MultiIndex{2, 0}, Cx(1.0));  // z1^2
  p2.set_coeff(MultiIndex{2, 0}, Cx(2.0));  // 2 z1^2, same zero set
  CHECK_THROWS_AS((void)solve_system_2d(p1, p2), DegenerateSystemError);
}

TEST_CASE("count_in_domain") {
  ZeroSet zs;
  zs.points = {AffinePoint(Cx(1.0)), AffinePoint(Cx(-1.0))};
  CHECK(count_in_domain(zs, Domain::disk(Cx(0.0), 1.5)) == 2);
  CHECK(count_in_domain(zs, Domain::disk(Cx(0.0), 0.5)) == 0);
  ZeroSet zs2;
  for (double s1 : {-1.0, 1.0})
    for (double s2 : {-1.0, 1.0}) zs2.points.push_back(AffinePoint(std::vector<Cx>{Cx(s1), Cx(s2)}));
  CHECK(count_in_domain(zs2, Domain::ball(2, 1.5)) == 4);
}
