#include <cmath>
#include <numbers>

#include "doctest.h"
#include "horocanon/error.hpp"
#include "horocanon/gluing.hpp"
#include "support.hpp"

using namespace horocanon;
using std::numbers::pi;

namespace {

const Complex kRegular = std::polar(1.0, pi / 3);

double max_abs(const std::vector<Complex>& v) {
  double m = 0;
  for (auto x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("fixture equations") {
  auto sys = assemble_equations(testing::figure_eight());
  CHECK(sys.n_edges == 2);
  CHECK(sys.n_cusps == 1);
  CHECK(sys.rows.size() == 4);
  for (int r = 0; r < 2; ++r) {
    int degree = 0;
    for (const auto& e : sys.rows[r].exponents) degree += e[0] + e[1] + e[2];
    CHECK(degree == 6);
    CHECK(sys.rows[r].target == Complex(0, 2 * pi));
  }
}

TEST_CASE("closed input has no cusp equations") {
  const auto& closed = testing::candidates(1, EnumerationTarget::Closed);
  REQUIRE_FALSE(closed.empty());
  try {
    assemble_equations(closed.front().triangulation);
    FAIL("expected NotCusped");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCusped);
  }
}

TEST_CASE("solve the fixture") {
  auto sys = assemble_equations(testing::figure_eight());
  auto sol = solve(sys);
  REQUIRE(sol.z.size() == 2);
  for (auto z : sol.z) CHECK(std::abs(z - kRegular) < 1e-9);
  CHECK(sol.residual < 1e-10);
  CHECK(sol.geometric());
  CHECK(std::abs(total_volume(sol.z) - 6 * testing::lobachevsky_quadrature(pi / 3)) < 1e-9);
  auto sums = angle_sum_check(sys, sol.z);
  for (double s : sums) CHECK(std::abs(s - 2 * pi) < 1e-8);

  auto again = solve(sys, sol.z);
  CHECK(again.iterations <= 2);
  for (std::size_t j = 0; j < sol.z.size(); ++j) CHECK(std::abs(again.z[j] - sol.z[j]) < 1e-12);
}

TEST_CASE("residual") {
  auto sys = assemble_equations(testing::figure_eight());
  std::vector<Complex> exact{kRegular, kRegular};
  CHECK(max_abs(residual(sys, exact)) < 1e-10);
  auto perturbed = exact;
  perturbed[0] += 1e-3;
  CHECK(max_abs(residual(sys, perturbed)) > 1e-4);

  // the jacobian matches finite differences in log coordinates
  auto jac = jacobian(sys, exact);
  const double h = 1e-7;
  for (int j = 0; j < 2; ++j) {
    auto bumped = exact;
    bumped[j] *= std::exp(Complex(h, 0));
    auto r0 = residual(sys, exact), r1 = residual(sys, bumped);
    for (std::size_t r = 0; r < r0.size(); ++r) CHECK(std::abs((r1[r] - r0[r]) / h - jac(r, j)) < 1e-5);
  }
}

TEST_CASE("volume of flat shapes") {
  std::vector<Complex> flat{Complex(0.3, 0), Complex(2.0, 0)};
  CHECK(std::abs(total_volume(flat)) < 1e-15);
}

TEST_CASE("valence-1 edge is infeasible") {
  auto tri = testing::with_edge_valence(2, 1);
  REQUIRE(tri);
  auto sys = assemble_equations(*tri);
  try {
    solve(sys);
    FAIL("expected a failure");
  } catch (const Error& e) {
    CHECK((e.code() == ErrorCode::DegenerateSolution || e.code() == ErrorCode::NoConvergence));
  }
}

TEST_CASE("angle sum 4 pi with product 1") {
  // Equal near-flat shapes z = x + i eps on both tetrahedra. For x < 0 every
  // z-corner has angle pi, the others 0, so an edge with four z-corners sums
  // to 4 pi; x is chosen to make the edge product 1.
  auto sys = assemble_equations(testing::figure_eight());
  const EquationRow* row = nullptr;
  std::array<int, 3> total{};
  for (const auto& r : sys.rows) {
    if (r.kind != EquationRow::Kind::Edge) continue;
    std::array<int, 3> t{};
    for (const auto& e : r.exponents)
      for (int p = 0; p < 3; ++p) t[p] += e[p];
    if (t[0] == 4) row = &r, total = t;
  }
  REQUIRE(row);
  auto log_product = [&](double x) {
    return total[0] * std::log(std::abs(x)) - total[1] * std::log(std::abs(1 - x)) +
           total[2] * std::log(std::abs(1 - 1 / x));
  };
  double lo = -10, hi = -1e-6;
  REQUIRE(log_product(lo) * log_product(hi) < 0);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (log_product(lo) * log_product(mid) <= 0 ? hi : lo) = mid;
  }
  Complex z(0.5 * (lo + hi), 1e-10);
  std::vector<Complex> shapes{z, z};
  auto res = residual(sys, shapes);
  CHECK(std::abs(res[row - sys.rows.data()] - Complex(0, 2 * pi)) < 1e-8);  // product 1, angle 4 pi
  try {
    angle_sum_check(sys, shapes);
    FAIL("expected AngleSumViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AngleSumViolation);
  }
}
