#include "zvar/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "zvar/errors.hpp"
#include "zvar/special.hpp"

namespace zvar {

Cx dot_conj(const AffinePoint& z, const AffinePoint& w) {
  if (z.dim() != w.dim()) throw std::invalid_argument("dot_conj: dimension mismatch");
  Cx s = 0.0;
  for (int a = 0; a < z.dim(); ++a) s += z.coords[a] * std::conj(w.coords[a]);
  return s;
}

namespace {

bool finite(const Cx& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

double sq(double x) { return x * x; }

}  // namespace

Domain::Domain(std::variant<Disk, Annulus, Rectangle, Ball> s) : shape_(std::move(s)) {
  std::visit(
      [](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Disk>) {
          if (!(sh.radius > 0.0) || !finite(sh.center))
            throw std::invalid_argument("Disk: radius must be positive and center finite");
        } else if constexpr (std::is_same_v<T, Annulus>) {
          if (!(sh.r_inner > 0.0) || !(sh.r_inner < sh.r_outer) || !finite(sh.center))
            throw std::invalid_argument("Annulus: requires 0 < r_inner < r_outer");
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          if (!(sh.lo.real() < sh.hi.real()) || !(sh.lo.imag() < sh.hi.imag()))
            throw std::invalid_argument("Rectangle: corners must be strictly ordered");
        } else {
          if (!(sh.radius > 0.0) || sh.center.empty())
            throw std::invalid_argument("Ball: radius must be positive, center nonempty");
          for (const Cx& c : sh.center)
            if (!finite(c)) throw std::invalid_argument("Ball: center must be finite");
        }
      },
      shape_);
}

Domain Domain::disk(Cx center, double radius) { return Domain(Disk{center, radius}); }
Domain Domain::annulus(Cx center, double r_inner, double r_outer) {
  return Domain(Annulus{center, r_inner, r_outer});
}
Domain Domain::rectangle(Cx lo, Cx hi) { return Domain(Rectangle{lo, hi}); }
Domain Domain::ball(std::vector<Cx> center, double radius) {
  return Domain(Ball{std::move(center), radius});
}
Domain Domain::ball(int m, double radius) {
  return Domain(Ball{std::vector<Cx>(size_t(m), Cx(0.0)), radius});
}

int Domain::dim() const {
  if (const auto* b = std::get_if<Ball>(&shape_)) return int(b->center.size());
  return 1;
}

std::string Domain::describe() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Disk>) {
          os << "disk(center=" << sh.center << ", r=" << sh.radius << ")";
        } else if constexpr (std::is_same_v<T, Annulus>) {
          os << "annulus(center=" << sh.center << ", r=" << sh.r_inner << ".." << sh.r_outer << ")";
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          os << "rectangle(" << sh.lo << ".." << sh.hi << ")";
        } else {
          os << "ball(m=" << sh.center.size() << ", r=" << sh.radius << ")";
        }
      },
      shape_);
  return os.str();
}

double fs_volume_density(const AffinePoint& z) {
  const int m = z.dim();
  if (m < 1) throw std::invalid_argument("fs_volume_density: empty point");
  return std::pow(1.0 + z.norm2(), -(m + 1));
}

bool contains(const Domain& U, const AffinePoint& z) {
  return std::visit(
      [&z](const auto& sh) -> bool {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return std::abs(z.scalar() - sh.center) < sh.radius;
        } else if constexpr (std::is_same_v<T, Annulus>) {
          const double d = std::abs(z.scalar() - sh.center);
          return d > sh.r_inner && d < sh.r_outer;
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          const Cx p = z.scalar();
          return p.real() > sh.lo.real() && p.real() < sh.hi.real() && p.imag() > sh.lo.imag() &&
                 p.imag() < sh.hi.imag();
        } else {
          if (z.dim() != int(sh.center.size()))
            throw std::invalid_argument("contains: dimension mismatch");
          double d2 = 0.0;
          for (size_t a = 0; a < sh.center.size(); ++a) d2 += std::norm(z.coords[a] - sh.center[a]);
          return d2 < sh.radius * sh.radius;
        }
      },
      U.shape());
}

namespace {

// int_0^S u^{m-1} (1+u)^{-(m+1)} du = (1/m) (S/(1+S))^m; with the sphere
// area factor this gives the FS volume of a centered ball of radius R.
double centered_ball_volume(int m, double R) {
  double v = std::pow(M_PI, m) / std::exp(log_factorial(m));
  const double S = R * R;
  return v * std::pow(S / (1.0 + S), m);
}

// FS area integral over a disk by polar Gauss-Legendre x trapezoid.
double disk_patch_volume(Cx center, double r0, double r1, int nr, int nth) {
  const GaussLegendre& gl = gauss_legendre(nr);
  double total = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double rho = 0.5 * (r1 - r0) * (gl.nodes[i] + 1.0) + r0;
    const double wr = 0.5 * (r1 - r0) * gl.weights[i];
    double ring = 0.0;
    for (int j = 0; j < nth; ++j) {
      const double th = 2.0 * M_PI * (j + 0.5) / nth;
      const Cx z = center + std::polar(rho, th);
      ring += 1.0 / sq(1.0 + std::norm(z));
    }
    total += wr * rho * ring * (2.0 * M_PI / nth);
  }
  return total;
}

double rectangle_volume(const Rectangle& R, int n) {
  const GaussLegendre& gl = gauss_legendre(n);
  const double ax = R.lo.real(), bx = R.hi.real();
  const double ay = R.lo.imag(), by = R.hi.imag();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = 0.5 * (bx - ax) * (gl.nodes[i] + 1.0) + ax;
    const double wx = 0.5 * (bx - ax) * gl.weights[i];
    for (int j = 0; j < n; ++j) {
      const double y = 0.5 * (by - ay) * (gl.nodes[j] + 1.0) + ay;
      const double wy = 0.5 * (by - ay) * gl.weights[j];
      total += wx * wy / sq(1.0 + x * x + y * y);
    }
  }
  return total;
}

// 4D quadrature for an off-center ball in m = 2: radius x Hopf angles.
double ball2_volume(const Ball& B, int res) {
  const int nr = res / 2, ne = res / 2, nth = res;
  const GaussLegendre& glr = gauss_legendre(nr);
  const GaussLegendre& gle = gauss_legendre(ne);
  double total = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double rho = 0.5 * B.radius * (glr.nodes[i] + 1.0);
    const double wr = 0.5 * B.radius * glr.weights[i];
    for (int j = 0; j < ne; ++j) {
      const double eta = 0.25 * M_PI * (gle.nodes[j] + 1.0);
      const double we = 0.25 * M_PI * gle.weights[j];
      const double ce = std::cos(eta), se = std::sin(eta);
      double ang = 0.0;
      for (int a = 0; a < nth; ++a) {
        const double t1 = 2.0 * M_PI * (a + 0.5) / nth;
        for (int b = 0; b < nth; ++b) {
          const double t2 = 2.0 * M_PI * (b + 0.5) / nth;
          const Cx z1 = B.center[0] + rho * ce * std::polar(1.0, t1);
          const Cx z2 = B.center[1] + rho * se * std::polar(1.0, t2);
          ang += 1.0 / std::pow(1.0 + std::norm(z1) + std::norm(z2), 3);
        }
      }
      total += wr * we * rho * rho * rho * ce * se * ang * sq(2.0 * M_PI / nth);
    }
  }
  return total;
}

bool ball_is_centered(const Ball& B) {
  for (const Cx& c : B.center)
    if (c != Cx(0.0)) return false;
  return true;
}

}  // namespace

double domain_volume_quadrature(const Domain& U, int resolution) {
  return std::visit(
      [resolution](const auto& sh) -> double {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return disk_patch_volume(sh.center, 0.0, sh.radius, resolution, 2 * resolution);
        } else if constexpr (std::is_same_v<T, Annulus>) {
          return disk_patch_volume(sh.center, sh.r_inner, sh.r_outer, resolution, 2 * resolution);
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          return rectangle_volume(sh, resolution);
        } else {
          const int m = int(sh.center.size());
          if (m == 1) {
            return disk_patch_volume(sh.center[0], 0.0, sh.radius, resolution, 2 * resolution);
          }
          if (m == 2) return ball2_volume(sh, std::max(16, resolution / 4));
          if (!ball_is_centered(sh))
            throw std::invalid_argument("domain_volume: off-center balls supported for m <= 2");
          return centered_ball_volume(m, sh.radius);
        }
      },
      U.shape());
}

double domain_volume(const Domain& U) {
  if (const auto* d = std::get_if<Disk>(&U.shape())) {
    if (d->center == Cx(0.0)) return M_PI * sq(d->radius) / (1.0 + sq(d->radius));
  } else if (const auto* a = std::get_if<Annulus>(&U.shape())) {
    if (a->center == Cx(0.0))
      return M_PI * (sq(a->r_outer) / (1.0 + sq(a->r_outer)) - sq(a->r_inner) / (1.0 + sq(a->r_inner)));
  } else if (const auto* b = std::get_if<Ball>(&U.shape())) {
    if (ball_is_centered(*b)) return centered_ball_volume(int(b->center.size()), b->radius);
  }
  // No closed form: refine the quadrature until stable.
  double prev = domain_volume_quadrature(U, 64);
  for (int res = 128; res <= 1024; res *= 2) {
    const double cur = domain_volume_quadrature(U, res);
    if (std::abs(cur - prev) <= 1e-10 * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

std::vector<CurvePiece> curve_pieces(const Domain& U) {
  std::vector<CurvePiece> pieces;
  if (const auto* d = std::get_if<Disk>(&U.shape())) {
    const Cx c = d->center;
    const double r = d->radius;
    pieces.push_back({[c, r](double t) { return c + std::polar(r, 2.0 * M_PI * t); },
                      [r](double t) { return 2.0 * M_PI * r * Cx(-std::sin(2.0 * M_PI * t), std::cos(2.0 * M_PI * t)); },
                      true});
  } else if (const auto* a = std::get_if<Annulus>(&U.shape())) {
    const Cx c = a->center;
    const double ro = a->r_outer, ri = a->r_inner;
    // Outer counterclockwise, inner clockwise: boundary orientation of U.
    pieces.push_back({[c, ro](double t) { return c + std::polar(ro, 2.0 * M_PI * t); },
                      [ro](double t) { return 2.0 * M_PI * ro * Cx(-std::sin(2.0 * M_PI * t), std::cos(2.0 * M_PI * t)); },
                      true});
    pieces.push_back({[c, ri](double t) { return c + std::polar(ri, -2.0 * M_PI * t); },
                      [ri](double t) { return 2.0 * M_PI * ri * Cx(-std::sin(2.0 * M_PI * t), -std::cos(2.0 * M_PI * t)); },
                      true});
  } else if (const auto* r = std::get_if<Rectangle>(&U.shape())) {
    const Cx corners[4] = {r->lo, Cx(r->hi.real(), r->lo.imag()), r->hi, Cx(r->lo.real(), r->hi.imag())};
    for (int e = 0; e < 4; ++e) {
      const Cx p0 = corners[e], p1 = corners[(e + 1) % 4];
      pieces.push_back({[p0, p1](double t) { return p0 + t * (p1 - p0); },
                        [p0, p1](double) { return p1 - p0; },
                        false});
    }
  } else {
    throw std::invalid_argument("curve_pieces: only m = 1 domains have boundary curves");
  }
  return pieces;
}

namespace {

double fs_line_density(const Cx& z) { return 1.0 / (1.0 + std::norm(z)); }

// FS length of a curve piece by refinement.
double piece_length(const CurvePiece& piece, double tol = 1e-12) {
  auto quad = [&piece](int n) {
    const GaussLegendre* gl = piece.closed ? nullptr : &gauss_legendre(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = piece.closed ? (i + 0.0) / n : 0.5 * (gl->nodes[i] + 1.0);
      const double w = piece.closed ? 1.0 / n : 0.5 * gl->weights[i];
      sum += std::abs(piece.gamma_prime(t)) * fs_line_density(piece.gamma(t)) * w;
    }
    return sum;
  };
  double prev = quad(64);
  for (int n = 128; n <= 65536; n *= 2) {
    const double cur = quad(n);
    if (std::abs(cur - prev) <= tol * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

// Hypersurface measure of a sphere in the m = 2 chart; exact for any center.
double ball2_boundary_volume(const Ball& B, int res) {
  const int ne = res, nth = 2 * res;
  const GaussLegendre& gle = gauss_legendre(ne);
  const double r = B.radius;
  double total = 0.0;
  for (int j = 0; j < ne; ++j) {
    const double eta = 0.25 * M_PI * (gle.nodes[j] + 1.0);
    const double we = 0.25 * M_PI * gle.weights[j];
    const double ce = std::cos(eta), se = std::sin(eta);
    for (int a = 0; a < nth; ++a) {
      const double t1 = 2.0 * M_PI * (a + 0.5) / nth;
      for (int b = 0; b < nth; ++b) {
        const double t2 = 2.0 * M_PI * (b + 0.5) / nth;
        const Cx n1 = ce * std::polar(1.0, t1), n2 = se * std::polar(1.0, t2);
        const Cx z1 = B.center[0] + r * n1, z2 = B.center[1] + r * n2;
        const double s = std::norm(z1) + std::norm(z2);
        // Split the unit Euclidean normal (n1, n2) into components parallel
        // and orthogonal to the complex line through z; the FS area element
        // is (1+s)^{-3} sqrt((1+s)^2 |n_par|^2 + (1+s) |n_orth|^2).
        double npar2;
        if (s > 0.0) {
          const Cx h = n1 * std::conj(z1) + n2 * std::conj(z2);  // <n, z>
          npar2 = std::norm(h) / s;
        } else {
          npar2 = 1.0;
        }
        const double north2 = std::max(0.0, 1.0 - npar2);
        const double el = std::sqrt(sq(1.0 + s) * npar2 + (1.0 + s) * north2) / std::pow(1.0 + s, 3);
        total += we * el * r * r * r * ce * se * sq(2.0 * M_PI / nth);
      }
    }
  }
  return total;
}

}  // namespace

double boundary_volume(const Domain& U) {
  if (const auto* d = std::get_if<Disk>(&U.shape())) {
    if (d->center == Cx(0.0)) return 2.0 * M_PI * d->radius / (1.0 + sq(d->radius));
  } else if (const auto* a = std::get_if<Annulus>(&U.shape())) {
    if (a->center == Cx(0.0))
      return 2.0 * M_PI * (a->r_outer / (1.0 + sq(a->r_outer)) + a->r_inner / (1.0 + sq(a->r_inner)));
  } else if (const auto* b = std::get_if<Ball>(&U.shape())) {
    const int m = int(b->center.size());
    if (ball_is_centered(*b)) {
      const double r = b->radius;
      return 2.0 * std::pow(M_PI, m) * std::pow(r, 2 * m - 1) /
             (std::exp(log_factorial(m - 1)) * std::pow(1.0 + r * r, m));
    }
    if (m == 1) return piece_length(curve_pieces(Domain::disk(b->center[0], b->radius))[0]);
    if (m == 2) {
      double prev = ball2_boundary_volume(*b, 24);
      for (int res = 48; res <= 192; res *= 2) {
        const double cur = ball2_boundary_volume(*b, res);
        if (std::abs(cur - prev) <= 1e-9 * std::abs(cur)) return cur;
        prev = cur;
      }
      return prev;
    }
    throw std::invalid_argument("boundary_volume: off-center balls supported for m <= 2");
  }
  double total = 0.0;
  for (const CurvePiece& piece : curve_pieces(U)) total += piece_length(piece);
  return total;
}

BoundaryQuadrature boundary_nodes(const Domain& U, int resolution) {
  if (resolution < 8) throw std::invalid_argument("boundary_nodes: resolution >= 8");
  BoundaryQuadrature bq;
  if (const auto* b = std::get_if<Ball>(&U.shape()); b && b->center.size() >= 2) {
    if (b->center.size() != 2 || !ball_is_centered(*b))
      throw std::invalid_argument("boundary_nodes: m >= 2 supports centered balls in m = 2");
    // Weight-only nodes on S^3 (no curve tangent in real codimension one).
    const int ne = resolution / 4, nth = resolution;
    const GaussLegendre& gle = gauss_legendre(std::max(8, ne));
    const double r = b->radius;
    const double scale = r * r * r / sq(1.0 + r * r);
    for (int j = 0; j < int(gle.nodes.size()); ++j) {
      const double eta = 0.25 * M_PI * (gle.nodes[j] + 1.0);
      const double we = 0.25 * M_PI * gle.weights[j];
      const double ce = std::cos(eta), se = std::sin(eta);
      for (int a = 0; a < nth; ++a) {
        const double t1 = 2.0 * M_PI * (a + 0.5) / nth;
        for (int bb = 0; bb < nth; ++bb) {
          const double t2 = 2.0 * M_PI * (bb + 0.5) / nth;
          AffinePoint p(std::vector<Cx>{r * ce * std::polar(1.0, t1), r * se * std::polar(1.0, t2)});
          bq.nodes.push_back({std::move(p), Cx(0.0), scale * ce * se * we * sq(2.0 * M_PI / nth), 0});
        }
      }
    }
    bq.pieces = 1;
    return bq;
  }
  const std::vector<CurvePiece> pieces = curve_pieces(U);
  bq.pieces = int(pieces.size());
  for (int e = 0; e < int(pieces.size()); ++e) {
    const CurvePiece& piece = pieces[e];
    const int n = resolution;
    const GaussLegendre* gl = piece.closed ? nullptr : &gauss_legendre(n);
    for (int i = 0; i < n; ++i) {
      const double t = piece.closed ? double(i) / n : 0.5 * (gl->nodes[i] + 1.0);
      const double dt = piece.closed ? 1.0 / n : 0.5 * gl->weights[i];
      const Cx z = piece.gamma(t);
      const Cx gp = piece.gamma_prime(t);
      bq.nodes.push_back({AffinePoint(z), gp * dt, std::abs(gp) * fs_line_density(z) * dt, e});
    }
  }
  return bq;
}

}  // namespace zvar
