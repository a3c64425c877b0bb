#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <vector>

namespace zvar {

using Cx = std::complex<double>;

/// Point in an affine chart of CP^m, m = coords.size().
struct AffinePoint {
  std::vector<Cx> coords;

  AffinePoint() = default;
  explicit AffinePoint(std::vector<Cx> c) : coords(std::move(c)) {}
  /// m = 1 convenience.
  AffinePoint(Cx z) : coords{z} {}  // NOLINT: implicit by design

  int dim() const { return int(coords.size()); }
  /// |z|^2 = sum |z_a|^2.
  double norm2() const {
    double s = 0.0;
    for (const Cx& c : coords) s += std::norm(c);
    return s;
  }
  Cx scalar() const { return coords.at(0); }  // m = 1 accessor
};

/// Hermitian pairing z . conj(w).
Cx dot_conj(const AffinePoint& z, const AffinePoint& w);

struct Disk {
  Cx center;
  double radius;
};
struct Annulus {
  Cx center;
  double r_inner;
  double r_outer;
};
struct Rectangle {
  Cx lo;  // (x0, y0)
  Cx hi;  // (x1, y1), strictly larger in both coordinates
};
struct Ball {
  std::vector<Cx> center;
  double radius;
};

/// Integration region inside a single affine chart.  Disk, Annulus and
/// Rectangle live in the m = 1 chart; Ball works in any dimension.
/// Regions containing the hyperplane at infinity must be mapped into the
/// chart by the caller (z -> 1/z for m = 1) first.
class Domain {
 public:
  static Domain disk(Cx center, double radius);
  static Domain annulus(Cx center, double r_inner, double r_outer);
  static Domain rectangle(Cx lo, Cx hi);
  static Domain ball(std::vector<Cx> center, double radius);
  static Domain ball(int m, double radius);  // centered at the origin

  int dim() const;
  bool is_disk() const { return std::holds_alternative<Disk>(shape_); }
  const std::variant<Disk, Annulus, Rectangle, Ball>& shape() const { return shape_; }
  std::string describe() const;

 private:
  explicit Domain(std::variant<Disk, Annulus, Rectangle, Ball> s);
  std::variant<Disk, Annulus, Rectangle, Ball> shape_;
};

/// One smooth boundary piece of an m = 1 domain, parameterized over [0,1)
/// (closed) or [0,1] (open), traversed with the boundary orientation of
/// the domain (counterclockwise outer, clockwise inner).
struct CurvePiece {
  std::function<Cx(double)> gamma;
  std::function<Cx(double)> gamma_prime;
  bool closed;
};

/// Smooth boundary pieces of an m = 1 domain.
std::vector<CurvePiece> curve_pieces(const Domain& U);

struct BoundaryNode {
  AffinePoint point;
  Cx tangent;     // oriented dz element (gamma' * dt), m = 1 curves only
  double weight;  // FS hypersurface measure element
  int edge;       // smooth-piece index
};

struct BoundaryQuadrature {
  std::vector<BoundaryNode> nodes;
  int pieces = 0;
};

/// Density of the FS volume form omega^m / m! against Lebesgue measure
/// on the chart: (1 + |z|^2)^{-(m+1)}.
double fs_volume_density(const AffinePoint& z);

/// FS volume of U, int_U omega^m / m!.  Closed form where available
/// (centered disks/annuli/balls), quadrature otherwise.
double domain_volume(const Domain& U);

/// Same value computed by 2m-dimensional quadrature regardless of the
/// availability of a closed form; `resolution` scales the base grid.
double domain_volume_quadrature(const Domain& U, int resolution = 128);

/// FS hypersurface volume of the boundary.  For m = 1 the line element
/// is |dz| / (1 + |z|^2): the circle |z| = r has length 2 pi r / (1+r^2).
double boundary_volume(const Domain& U);

/// Quadrature nodes covering the boundary; at least `resolution` nodes
/// per smooth piece, weights summing to boundary_volume(U).  Closed
/// curves use periodic (trapezoidal) spacing, open edges Gauss-Legendre
/// (no node sits on a corner).
BoundaryQuadrature boundary_nodes(const Domain& U, int resolution);

/// True iff z lies in the open domain; boundary points return false.
bool contains(const Domain& U, const AffinePoint& z);

}  // namespace zvar
