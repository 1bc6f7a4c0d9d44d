#include "horocanon/fixtures.hpp"

#include <cmath>
#include <limits>

#include "horocanon/error.hpp"
#include "horocanon/hyperbolic.hpp"

namespace horocanon::fixtures {
namespace {

double inner3(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

}  // namespace

Tilt1d tilt_1d_configuration(double s1, double s2) {
  if (!(s1 > 0.0 && s2 > 0.0)) throw Error(ErrorCode::NonPositiveInput, "apex heights must be positive");
  Tilt1d c;
  c.face_a = {1.0, 1.0, 0.0};
  c.face_b = {1.0, -1.0, 0.0};
  c.apex1 = {s1, 0.0, s1};
  c.apex2 = {s2, 0.0, -s2};
  c.p1 = {1.0, 0.0, 1.0 - 1.0 / s1};
  c.p2 = {1.0, 0.0, 1.0 / s2 - 1.0};
  c.m1 = {0.0, 0.0, -1.0};
  c.m2 = {0.0, 0.0, 1.0};
  c.tilt_sum = inner3(c.p1, c.m1) + inner3(c.p2, c.m2);
  return c;
}

double fixture_tilt_1d(double s1, double s2) { return tilt_1d_configuration(s1, s2).tilt_sum; }

Horocycle2d fixture_horocycle_2d(double h) {
  if (!(h >= 1.0)) throw Error(ErrorCode::NonPositiveInput, "the horocycle must lie at height at least 1");
  // The cut is a segment of length 2/h; the top of the opposite side is 1 + i.
  Horocycle2d out{(2.0 / h) / 2.0, std::log(h)};
  if (std::abs(out.r - std::exp(-out.d)) > 4.0 * std::numeric_limits<double>::epsilon() * out.r)
    throw Error(ErrorCode::InconsistentVolumes, "r differs from exp(-d)");
  return out;
}

Shrink fixture_shrink(double h1, double h2, double a1, double a2) {
  if (!(h1 > 0.0 && h2 > 0.0 && a1 > 0.0 && a2 > 0.0))
    throw Error(ErrorCode::NonPositiveInput, "heights and areas must be positive");
  const double v1 = cusp_volume(a1, h1);
  const double v2 = a2 * h2 * h2 / 2.0;
  if (std::abs(v1 - v2) > 1e-12 * std::max(v1, v2))
    throw Error(ErrorCode::InconsistentVolumes, "cusp volumes " + std::to_string(v1) + " and " + std::to_string(v2));
  Shrink out;
  out.h = equidistant_height(h1, h2);
  out.volume = v1;
  out.area_ratio = a1 / a2;
  // Rescaling v by lambda moves h1 to h1 / sqrt(lambda) and h2 to h2 sqrt(lambda).
  out.consistency = true;
  for (double lambda : {0.25, 4.0}) {
    double h_scaled = equidistant_height(h1 / std::sqrt(lambda), h2 * std::sqrt(lambda));
    double w1 = cusp_volume(a1, h1 / std::sqrt(lambda));
    double w2 = a2 * (h2 * std::sqrt(lambda)) * (h2 * std::sqrt(lambda)) / 2.0;
    out.consistency = out.consistency && std::abs(h_scaled - out.h) <= 1e-12 * out.h &&
                      std::abs(w1 - lambda * v1) <= 1e-12 * w1 && std::abs(w2 - lambda * v2) <= 1e-12 * w2;
  }
  return out;
}

}  // namespace horocanon::fixtures
