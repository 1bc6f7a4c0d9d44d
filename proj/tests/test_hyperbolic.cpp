#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "horocanon/error.hpp"
#include "horocanon/hyperbolic.hpp"
#include "support.hpp"

using namespace horocanon;
using std::numbers::pi;

TEST_CASE("edge moduli") {
  auto m = edge_moduli(Complex(0, 1));
  CHECK(std::abs(m.z1 - Complex(0.5, 0.5)) < 1e-15);
  CHECK(std::abs(m.z2 - Complex(1, 1)) < 1e-15);
  Complex reg = std::polar(1.0, pi / 3);
  auto r = edge_moduli(reg);
  CHECK(std::abs(r.z1 - reg) < 1e-15);
  CHECK(std::abs(r.z2 - reg) < 1e-15);
}

TEST_CASE("modulus identities on random samples") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> re(-3, 3), im(1e-3, 3);
  for (int i = 0; i < 10000; ++i) {
    Complex z(re(rng), im(rng));
    auto m = edge_moduli(z);
    CHECK(std::abs(m.z * m.z1 * m.z2 + 1.0) < 1e-13 * std::max(1.0, std::abs(m.z * m.z1 * m.z2)));
    double args = log_modulus(z, 0).imag() + log_modulus(z, 1).imag() + log_modulus(z, 2).imag();
    CHECK(std::abs(args - pi) < 1e-13);
  }
}

TEST_CASE("lobachevsky") {
  CHECK(lobachevsky(0.0) == 0.0);
  CHECK(std::abs(lobachevsky(pi / 2)) < 1e-15);
  CHECK(std::abs(lobachevsky(pi)) < 1e-15);
  double peak = lobachevsky(pi / 6);
  CHECK(std::abs(peak - testing::lobachevsky_quadrature(pi / 6)) < 1e-12);
  for (double t = 0.01; t < pi; t += 0.01) CHECK(lobachevsky(t) <= peak + 1e-15);
  // odd and pi-periodic
  for (double t : {0.3, 1.1, 2.5}) {
    CHECK(std::abs(lobachevsky(-t) + lobachevsky(t)) < 1e-14);
    CHECK(std::abs(lobachevsky(t + pi) - lobachevsky(t)) < 1e-12);
  }
}

TEST_CASE("tetrahedron volume") {
  Complex reg = std::polar(1.0, pi / 3);
  CHECK(std::abs(tet_volume(reg) - 3 * testing::lobachevsky_quadrature(pi / 3)) < 1e-12);
  CHECK(std::abs(tet_volume(Complex(0.5, 0.0))) < 1e-15);
  CHECK(std::abs(tet_volume(Complex(0.5, 1e-12))) < 1e-9);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> re(-2, 2), im(0.05, 2);
  for (int i = 0; i < 100; ++i) {
    Complex z(re(rng), im(rng));
    CHECK(std::abs(tet_volume(z) - tet_volume(edge_moduli(z).z1)) < 1e-12);
  }
}

TEST_CASE("cusp volume and equidistant height") {
  CHECK(cusp_volume(2, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cusp_volume(1, 1 / std::sqrt(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cusp_volume(3, 0.7) == doctest::Approx(cusp_volume(12, 1.4)).epsilon(1e-15));
  CHECK(equidistant_height(4, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(equidistant_height(1.7, 1.7) == doctest::Approx(1.7).epsilon(1e-15));
  CHECK_THROWS_AS(cusp_volume(-1, 1), Error);
  CHECK_THROWS_AS(equidistant_height(0, 1), Error);
}

TEST_CASE("minkowski form") {
  MinkowskiVector e0(1, 0, 0, 0), l(1, 1, 0, 0);
  CHECK(minkowski_inner(e0, e0) == -1.0);
  CHECK(minkowski_inner(l, l) == 0.0);
  CHECK(classify(e0) == MinkowskiClass::Hyperboloid);
  CHECK(classify(l) == MinkowskiClass::LightCone);
  CHECK(classify(MinkowskiVector(0, 1, 0, 0)) == MinkowskiClass::SpaceLike);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int i = 0; i < 100; ++i) {
    MinkowskiVector x(g(rng), g(rng), g(rng), g(rng)), y(g(rng), g(rng), g(rng), g(rng));
    CHECK(minkowski_inner(x, y) == minkowski_inner(y, x));
  }
  for (int i = 0; i < 20; ++i) {
    Complex w(g(rng), g(rng));
    double h = std::exp(g(rng));
    CHECK(classify(hyperboloid_point(w, h)) == MinkowskiClass::Hyperboloid);
    CHECK(classify(lightcone_at(w, h)) == MinkowskiClass::LightCone);
  }
}

TEST_CASE("horoball shrink") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  MinkowskiVector y = lightcone_at(Complex(0.3, -0.2), 0.8);
  auto same = horoball_shrink(y, 1.0);
  CHECK((same.y - y).norm() == 0.0);
  auto small = horoball_shrink(y, 2.5);
  CHECK((small.y / small.y[0] - y / y[0]).norm() < 1e-15);
  for (int i = 0; i < 1000; ++i) {
    auto x = hyperboloid_point(Complex(g(rng), g(rng)), std::exp(g(rng)));
    if (small.contains(x)) CHECK(Horoball{y}.contains(x));
  }
  CHECK_THROWS_AS(horoball_shrink(MinkowskiVector(1, 0, 0, 0), 2.0), Error);
  CHECK_THROWS_AS(horoball_shrink(y, 0.5), Error);
}
