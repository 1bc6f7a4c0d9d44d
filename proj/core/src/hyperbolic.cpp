#include "horocanon/hyperbolic.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "horocanon/error.hpp"

namespace horocanon {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSeriesTerms = 40;

// c_n = zeta(2n) / (n (2n + 1)).
std::array<double, kSeriesTerms + 1> series_coefficients() {
  std::array<double, kSeriesTerms + 1> c{};
  const double pi2 = kPi * kPi;
  for (int n = 1; n <= kSeriesTerms; ++n) {
    double zeta = 0.0;
    switch (n) {
      case 1: zeta = pi2 / 6.0; break;
      case 2: zeta = pi2 * pi2 / 90.0; break;
      case 3: zeta = pi2 * pi2 * pi2 / 945.0; break;
      case 4: zeta = pi2 * pi2 * pi2 * pi2 / 9450.0; break;
      default: {
        // Summed from the small end up so the leading 1 is added last.
        for (int k = 200; k >= 1; --k) zeta += std::pow(static_cast<double>(k), -2.0 * n);
      }
    }
    c[n] = zeta / (n * (2.0 * n + 1.0));
  }
  return c;
}

}  // namespace

EdgeModuli edge_moduli(Complex z) {
  if (z == Complex(0.0) || z == Complex(1.0))
    throw Error(ErrorCode::DegenerateModulus, "modulus must avoid 0 and 1");
  return {z, 1.0 / (1.0 - z), 1.0 - 1.0 / z};
}

Complex log_modulus(Complex z, int pair) {
  switch (pair) {
    case 0: return std::log(z);
    case 1: return -std::log(1.0 - z);
    default: return std::log(z - 1.0) - std::log(z);
  }
}

double lobachevsky(double theta) {
  static const auto coeff = series_coefficients();
  // Odd and pi-periodic: reduce to [-pi/2, pi/2].
  const double x = theta - kPi * std::nearbyint(theta / kPi);
  if (x == 0.0) return 0.0;

  // Lambda(x) = x (1 - log 2|x|) + x * sum_n c_n (x/pi)^(2n), Kahan summed.
  const double q = (x / kPi) * (x / kPi);
  double sum = 0.0, carry = 0.0, power = 1.0;
  for (int n = 1; n <= kSeriesTerms; ++n) {
    power *= q;
    const double term = coeff[n] * power - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return x * (1.0 - std::log(2.0 * std::abs(x))) + x * sum;
}

double tet_volume(Complex z) {
  const auto m = edge_moduli(z);
  if (z.imag() == 0.0) return 0.0;
  return lobachevsky(std::arg(m.z)) + lobachevsky(std::arg(m.z1)) + lobachevsky(std::arg(m.z2));
}

double cusp_volume(double area, double height) {
  if (!(area > 0.0) || !(height > 0.0))
    throw Error(ErrorCode::NonPositiveInput, "cusp area and height must be positive");
  return area / (2.0 * height * height);
}

double equidistant_height(double h1, double h2) {
  if (!(h1 > 0.0) || !(h2 > 0.0))
    throw Error(ErrorCode::NonPositiveInput, "horoball heights must be positive");
  return std::sqrt(h1 * h2);
}

double minkowski_inner(const MinkowskiVector& x, const MinkowskiVector& y) {
  return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

MinkowskiClass classify(const MinkowskiVector& x, double tolerance) {
  const double q = minkowski_inner(x, x);
  const double scale = std::max(1.0, x[0] * x[0]);
  if (std::abs(q) <= tolerance * scale) return x[0] > 0.0 ? MinkowskiClass::LightCone : MinkowskiClass::Other;
  if (std::abs(q + 1.0) <= tolerance * scale && x[0] > 0.0) return MinkowskiClass::Hyperboloid;
  if (q > 0.0) return MinkowskiClass::SpaceLike;
  return MinkowskiClass::Other;
}

Horoball horoball_shrink(const MinkowskiVector& y, double lambda) {
  if (classify(y) != MinkowskiClass::LightCone)
    throw Error(ErrorCode::NotLightCone, "horoball centre must lie on the future light cone");
  if (!(lambda >= 1.0)) throw Error(ErrorCode::NonPositiveInput, "shrink factor must be at least 1");
  return Horoball{lambda * y};
}

MinkowskiVector hyperboloid_point(Complex w, double height) {
  const double a = height * height + std::norm(w);
  return {(a + 1.0) / (2.0 * height), (a - 1.0) / (2.0 * height), w.real() / height, w.imag() / height};
}

MinkowskiVector lightcone_at_infinity(double height) { return height * MinkowskiVector(1.0, 1.0, 0.0, 0.0); }

MinkowskiVector lightcone_at(Complex p, double diameter) {
  const double r2 = std::norm(p);
  return MinkowskiVector(1.0 + r2, r2 - 1.0, 2.0 * p.real(), 2.0 * p.imag()) / diameter;
}

}  // namespace horocanon
