#include <cmath>
#include <numbers>

#include "doctest.h"
#include "horocanon/cusp.hpp"
#include "horocanon/error.hpp"
#include "horocanon/fixtures.hpp"
#include "horocanon/gluing.hpp"
#include "support.hpp"

using namespace horocanon;
using std::numbers::pi;

namespace {

struct Solved {
  Triangulation tri;
  std::vector<Complex> z;
};

Solved solved(const Triangulation& t) {
  auto sys = assemble_equations(t);
  return {sys.tri, solve(sys).z};
}

// Product of the corner moduli along a curve, left corners in the numerator.
Complex corner_product(const Solved& s, const CuspCurve& c) {
  Complex p = 1.0;
  for (const auto& st : c.steps) {
    int pair = edge_index(st.vertex, st.pivot());
    pair = pair < 3 ? pair : 5 - pair;  // opposite edges share a modulus
    Complex w = edge_moduli(s.z[st.tet])[pair];
    p *= st.pivot_on_left() ? w : 1.0 / w;
  }
  return p;
}

}  // namespace

TEST_CASE("fixture cross-section") {
  auto s = solved(testing::figure_eight());
  auto sections = build_cross_sections(s.tri, s.z);
  REQUIRE(sections.size() == 1);
  const auto& sec = sections[0];
  CHECK(sec.triangles.size() == 8);
  CHECK(sec.euler_characteristic == 0);
  for (std::size_t t = 0; t < sec.triangles.size(); ++t) {
    int v = sec.triangles[t][1];
    double sum = 0;
    for (int c = 0; c < 4; ++c)
      if (c != v) sum += sec.angle(static_cast<int>(t), c);
    CHECK(std::abs(sum - pi) < 1e-12);
  }
}

TEST_CASE("generators") {
  auto s = solved(testing::figure_eight());
  auto sections = build_cross_sections(s.tri, s.z);
  auto [lambda, mu] = cusp_generators(sections[0]);
  check_closed(s.tri, lambda);
  check_closed(s.tri, mu);
  CHECK(std::abs(intersection_number(s.tri, lambda, mu)) == 1);
  CHECK(std::abs(holonomy_dilation(sections[0], lambda) - 1.0) < 1e-9);
  CHECK(std::abs(holonomy_dilation(sections[0], mu) - 1.0) < 1e-9);

  // a curve followed by its reverse cancels exactly
  for (const auto& g : {lambda, mu}) {
    Complex forward = holonomy_log(s.tri, s.z, g);
    Complex back = holonomy_log(s.tri, s.z, g.reversed());
    CHECK(forward + back == Complex(0, 0));
  }
}

TEST_CASE("holonomy is the product of left corner moduli") {
  // perturbed shapes so the products are not all 1
  auto s = solved(testing::sibling());
  auto sections = build_cross_sections(s.tri, s.z);
  auto gens = cusp_generators(s.tri, 0);
  Solved off{s.tri, {s.z[0] * Complex(1.1, 0.05), s.z[1] * Complex(0.9, -0.02)}};
  for (const auto& g : gens) {
    Complex expect = corner_product(off, g);
    CHECK(std::abs(std::exp(holonomy_log(off.tri, off.z, g)) - expect) < 1e-12 * std::abs(expect));
    Complex back = std::exp(holonomy_log(off.tri, off.z, g.reversed()));
    CHECK(std::abs(back * expect - 1.0) < 1e-12);
  }
  // going twice around doubles the log and squares the product
  for (const auto& g : gens) {
    CuspCurve twice = g;
    twice.steps.insert(twice.steps.end(), g.steps.begin(), g.steps.end());
    check_closed(off.tri, twice);
    Complex expect = corner_product(off, twice);
    CHECK(std::abs(std::exp(holonomy_log(off.tri, off.z, twice)) - expect) < 1e-12 * std::abs(expect));
    CHECK(std::abs(holonomy_log(off.tri, off.z, twice) - 2.0 * holonomy_log(off.tri, off.z, g)) < 1e-12);
  }
}

TEST_CASE("loop around a link vertex gives the edge equation") {
  auto s = solved(testing::figure_eight());
  auto sections = build_cross_sections(s.tri, s.z);
  for (int v = 0; v < 4; ++v)
    for (int o = 0; o < 4; ++o) {
      if (o == v) continue;
      auto loop = vertex_loop(s.tri, 0, v, o);
      check_closed(s.tri, loop);
      CHECK(loop.steps.size() == 6);
      CHECK(std::abs(holonomy_log(s.tri, s.z, loop) - Complex(0, 2 * pi)) < 1e-9);
      CHECK(std::abs(holonomy_dilation(sections[0], loop) - 1.0) < 1e-9);
      CHECK(std::abs(holonomy_dilation(sections[0], loop.reversed()) - 1.0) < 1e-9);
    }
}

TEST_CASE("open curve") {
  auto s = solved(testing::figure_eight());
  auto loop = vertex_loop(s.tri, 0, 0, 1);
  loop.steps.pop_back();
  try {
    check_closed(s.tri, loop);
    FAIL("expected OpenCurve");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OpenCurve);
  }
}

TEST_CASE("inconsistent shapes") {
  auto s = solved(testing::figure_eight());
  std::vector<Complex> bad{Complex(0.4, 0.9), Complex(0.6, 0.7)};
  try {
    build_cross_sections(s.tri, bad);
    FAIL("expected NotConsistent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotConsistent);
  }
}

TEST_CASE("equal-volume normalization") {
  auto s = solved(testing::figure_eight());
  auto sections = build_cross_sections(s.tri, s.z);
  auto r1 = normalize_equal_volume(sections, s.tri.size(), 0.5);
  auto r2 = normalize_equal_volume(sections, s.tri.size(), 1.0);
  double first = r1.r[0][0];
  for (int t = 0; t < 2; ++t)
    for (int v = 0; v < 4; ++v) {
      CHECK(std::abs(r1.r[t][v] - first) < 1e-12);
      CHECK(std::abs(r2.r[t][v] - std::sqrt(2.0) * r1.r[t][v]) < 1e-12);
      CHECK(std::abs(r1.r[t][v] - std::exp(-r1.d[t][v])) < 1e-15);
    }

  // 2D sanity: triangle (0, 2, inf) under the horocycle at height h
  for (double h : {1.0, 2.0, std::exp(1.0), 7.5}) {
    auto c = fixtures::fixture_horocycle_2d(h);
    CHECK(std::abs(c.r - 1 / h) < 1e-15);
    CHECK(std::abs(c.d - std::log(h)) < 1e-15);
    CHECK(std::abs(c.r - std::exp(-c.d)) < 1e-15);
  }
}

TEST_CASE("incomplete structure") {
  // a nearby solution of the edge equations alone is consistent but not complete
  auto sys = assemble_equations(testing::figure_eight());
  GluingEquationSystem edges_only = sys;
  edges_only.rows.resize(sys.n_edges);
  auto z = solve(edges_only, std::vector<Complex>{Complex(0.45, 0.95), Complex(0.55, 0.8)}).z;
  auto sections = build_cross_sections(sys.tri, z);
  try {
    normalize_equal_volume(sections, sys.tri.size());
    FAIL("expected IncompleteStructure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompleteStructure);
  }
}
