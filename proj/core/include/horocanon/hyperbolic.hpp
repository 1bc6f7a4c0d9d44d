#pragma once

#include <complex>

#include <Eigen/Core>

namespace horocanon {

using Complex = std::complex<double>;
using MinkowskiVector = Eigen::Vector4d;

namespace tol {
inline constexpr double kResidual = 1e-10;
inline constexpr double kClassification = 1e-12;
inline constexpr double kFlatness = 1e-9;
}  // namespace tol

/// Shape of an ideal tetrahedron along one edge. Im z > 0 is geometric;
/// real z is a flat tetrahedron, representable but flagged.
struct Modulus {
  Complex z;
  bool flat() const { return std::abs(z.imag()) <= tol::kFlatness; }
  bool geometric() const { return z.imag() > tol::kFlatness; }
};

/// Moduli along the three pairs of opposite edges: z, 1/(1-z), 1-1/z.
struct EdgeModuli {
  Complex z;
  Complex z1;
  Complex z2;
  Complex operator[](int pair) const { return pair == 0 ? z : (pair == 1 ? z1 : z2); }
};

EdgeModuli edge_moduli(Complex z);

/// Log of the modulus on opposite-edge pair 0, 1 or 2, principal branch
/// taken so that the three arguments sum to pi in the upper half-plane.
Complex log_modulus(Complex z, int pair);

/// Lobachevsky function, -integral_0^theta log|2 sin t| dt.
double lobachevsky(double theta);

/// Volume of the ideal tetrahedron with modulus z.
double tet_volume(Complex z);

/// Volume a / (2 h^2) of a cusp whose cross-section at height 1 has area a,
/// cut off at height h.
double cusp_volume(double area, double height);

/// Height sqrt(h1 h2) of the point equidistant from two horoballs on a
/// common vertical axis with top heights h1 and h2.
double equidistant_height(double h1, double h2);

/// -x0 y0 + x1 y1 + x2 y2 + x3 y3.
double minkowski_inner(const MinkowskiVector& x, const MinkowskiVector& y);

enum class MinkowskiClass { Hyperboloid, LightCone, SpaceLike, Other };
MinkowskiClass classify(const MinkowskiVector& x, double tolerance = tol::kClassification);

/// B_y = { x on the hyperboloid : <x, y> >= -1 } for y on the light cone.
struct Horoball {
  MinkowskiVector y;
  bool contains(const MinkowskiVector& x) const { return minkowski_inner(x, y) >= -1.0; }
};

/// Horoball at lambda * y; lambda >= 1 gives a ball inside B_y.
Horoball horoball_shrink(const MinkowskiVector& y, double lambda);

/// Point (w, h) of upper half-space mapped to the hyperboloid.
MinkowskiVector hyperboloid_point(Complex w, double height);

/// Light-cone vector of the horoball at infinity bounded by height `height`.
MinkowskiVector lightcone_at_infinity(double height);

/// Light-cone vector of the horoball tangent to the boundary at p with
/// Euclidean diameter `diameter`.
MinkowskiVector lightcone_at(Complex p, double diameter);

}  // namespace horocanon
