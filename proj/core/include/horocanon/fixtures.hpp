#pragma once

#include <Eigen/Dense>

namespace horocanon::fixtures {

// Closed-form worked examples in low dimension, used as ground truth.

/// Straight triangles in R^{1,2} over the segment with vertices (1, +-1, 0),
/// with apexes (s1, 0, s1) and (s2, 0, -s2).
struct Tilt1d {
  Eigen::Vector3d p1, p2, m1, m2;
  Eigen::Vector3d face_a, face_b, apex1, apex2;
  double tilt_sum = 0.0;
};

Tilt1d tilt_1d_configuration(double s1, double s2);

/// <p1, m1> + <p2, m2>, which equals 1/s1 + 1/s2 - 2.
double fixture_tilt_1d(double s1, double s2);

/// Triangle (0, 2, inf) cut by the horocycle at height h: circumradius
/// r = 1/h and distance d = log h from the opposite side.
struct Horocycle2d {
  double r = 0.0;
  double d = 0.0;
};

Horocycle2d fixture_horocycle_2d(double h);

/// Two horoballs at heights h1 (at infinity) and 1/h2 (after inversion)
/// bounding cusps of equal volume v = a1 / (2 h1^2) = a2 h2^2 / 2.
struct Shrink {
  double h = 0.0;             // sqrt(h1 h2), the height of the equidistant horosphere
  double volume = 0.0;        // common cusp volume
  double area_ratio = 0.0;    // a1 / a2
  bool consistency = false;   // h is unchanged under the volume rescaling
};

/// Throws InconsistentVolumes if the two volume expressions disagree.
Shrink fixture_shrink(double h1, double h2, double a1, double a2);

}  // namespace horocanon::fixtures
