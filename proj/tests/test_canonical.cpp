#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "horocanon/canonical.hpp"
#include "horocanon/error.hpp"
#include "horocanon/fixtures.hpp"
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

}  // namespace

TEST_CASE("tilts of a regular tetrahedron") {
  DihedralAngles theta;
  theta.fill(pi / 3);
  auto t = tilts(0, theta, {0.7, 0.7, 0.7, 0.7});
  for (double x : t.t) CHECK(std::abs(x + 0.35) < 1e-15);
  auto zero = tilts(0, theta, {0, 0, 0, 0});
  for (double x : zero.t) CHECK(x == 0.0);
  theta[2] = pi;
  CHECK_THROWS_AS(tilts(0, theta, {1, 1, 1, 1}), Error);
}

TEST_CASE("dihedral angles") {
  auto th = dihedral_angles(Complex(0.3, 1.2));
  for (int e = 0; e < 3; ++e) CHECK(th[e] == doctest::Approx(th[5 - e]).epsilon(1e-15));
  CHECK(th[0] + th[1] + th[2] == doctest::Approx(pi).epsilon(1e-15));
}

TEST_CASE("fixture verdicts") {
  auto s = solved(testing::figure_eight());
  auto radii = equal_volume_radii(s.tri, s.z);
  auto verdicts = face_verdicts(s.tri, s.z, radii);
  CHECK(verdicts.size() == 4);
  double r = radii.r[0][0];
  for (const auto& v : verdicts) {
    CHECK(v.verdict == Verdict::Convex);
    CHECK(std::abs(v.tilt_sum + r) < 1e-12);
  }
  auto lift = lift_to_lightcone(s.tri, s.z, radii);
  for (const auto& v : verdicts) {
    auto h = hull_oracle(s.tri, lift, v.face);
    CHECK(h.verdict == Verdict::Convex);
    CHECK(std::abs(h.offset - v.tilt_sum) < 1e-9);
  }
}

TEST_CASE("lift") {
  auto s = solved(testing::figure_eight());
  auto radii = equal_volume_radii(s.tri, s.z);
  auto lift = lift_to_lightcone(s.tri, s.z, radii);
  for (const auto& tet : lift.y)
    for (const auto& y : tet) {
      CHECK(std::abs(minkowski_inner(y, y)) < 1e-9 * y[0] * y[0]);
      CHECK(y[0] > 0);
    }
  // the tree faces carry the same three vectors on both sides
  for (int t = 0; t < s.tri.size(); ++t) {
    int f = lift.parent_face[t];
    if (f < 0) continue;
    int u = s.tri.neighbor(t, f);
    const auto& p = s.tri.gluing(t, f);
    for (int i = 0; i < 4; ++i)
      if (i != f) CHECK((lift.y[t][i] - lift.y[u][p[i]]).norm() < 1e-9 * lift.y[t][i].norm());
  }
  // quadrupling the cusp volume doubles the horoball heights, i.e. shrinks y by 1/2
  auto big = lift_to_lightcone(s.tri, s.z, equal_volume_radii(s.tri, s.z, 2.0));
  for (int t = 0; t < s.tri.size(); ++t)
    for (int i = 0; i < 4; ++i) CHECK((big.y[t][i] * 2.0 - lift.y[t][i]).norm() < 1e-9 * lift.y[t][i].norm());
}

TEST_CASE("hull oracle on the plane configuration") {
  for (auto [s1, s2, expect] : {std::tuple{1.0, 1.0, Verdict::Transparent}, {2.0, 2.0, Verdict::Convex},
                                {0.5, 1.0, Verdict::Concave}, {4.0, 4.0 / 7.0, Verdict::Transparent}}) {
    auto c = fixtures::tilt_1d_configuration(s1, s2);
    std::vector<Eigen::VectorXd> face{c.face_a, c.face_b};
    auto h = hull_verdict(face, c.apex1, c.apex2);
    CHECK(h.verdict == expect);
    CHECK(verdict_of(1 / s1 + 1 / s2 - 2) == expect);
    CHECK(std::abs(h.offset - (1 / s1 + 1 / s2 - 2)) < 1e-12);
  }
  auto c = fixtures::tilt_1d_configuration(2, 2);
  std::vector<Eigen::VectorXd> reflected{-c.face_a, -c.face_b};
  CHECK_THROWS_AS(hull_verdict(reflected, -c.apex1, -c.apex2), Error);
  std::vector<Eigen::VectorXd> repeated{c.face_a, c.face_a};
  CHECK_THROWS_AS(hull_verdict(repeated, c.apex1, c.apex2), Error);
}

TEST_CASE("canonize the fixture") {
  auto s = solved(testing::figure_eight());
  auto d = canonize(s.tri, s.z);
  CHECK(d.flips.empty());
  CHECK(d.n_cells == 2);
  CHECK(d.signature == decomposition_signature(d));
  auto other = canonize(solved(testing::sibling()).tri, solved(testing::sibling()).z);
  CHECK(other.signature != d.signature);
}

TEST_CASE("canonize after a 2-3 move") {
  auto base = canonize(solved(testing::figure_eight()).tri, solved(testing::figure_eight()).z);
  for (int f = 0; f < 4; ++f) {
    auto s = solved(move_2_3(testing::figure_eight(), {0, f}));
    auto d = canonize(s.tri, s.z);
    CHECK(d.signature == base.signature);
    CHECK(!d.flips.empty());
  }
}

TEST_CASE("signature ignores labelling") {
  std::mt19937_64 rng(11);
  auto s = solved(testing::figure_eight());
  auto d = canonize(s.tri, s.z);
  for (int k = 0; k < 5; ++k) {
    auto copy = testing::shuffled(d.tri, rng);
    std::vector<std::array<bool, 4>> none(copy.size(), {false, false, false, false});
    CHECK(decomposition_signature(copy, none) == d.signature);
  }
}

TEST_CASE("transparent faces merge cells") {
  // cone one canonical cell from an interior point; the cone faces are transparent
  auto s = solved(testing::figure_eight());
  auto d = canonize(s.tri, s.z);
  auto coned = move_1_4(d.tri, 0);
  auto vclass = vertex_class_index(coned);
  int apex = -1;
  for (const auto& link : vertex_links(coned))
    if (link.is_sphere()) apex = link.id;
  REQUIRE(apex >= 0);
  std::vector<std::array<bool, 4>> transparent(coned.size(), {false, false, false, false});
  for (int t = 0; t < coned.size(); ++t)
    for (int f = 0; f < 4; ++f)
      for (int v = 0; v < 4; ++v)
        if (v != f && vclass[t][v] == apex) transparent[t][f] = true;
  int n_cells = 0;
  merge_cells(coned, transparent, &n_cells);
  CHECK(n_cells == 2);
  CHECK(decomposition_signature(coned, transparent) == d.signature);

  std::vector<std::array<bool, 4>> all(coned.size(), {true, true, true, true});
  merge_cells(coned, all, &n_cells);
  CHECK(n_cells == 1);
}

TEST_CASE("shaped moves keep the volume") {
  auto s = solved(testing::figure_eight());
  ShapedTriangulation st{s.tri, s.z};
  double vol = total_volume(s.z);
  for (int f = 0; f < 4; ++f) {
    auto m = shaped_move_2_3(st, {0, f});
    REQUIRE(m);
    CHECK(m->tri.size() == 3);
    CHECK(std::abs(total_volume(m->shapes) - vol) < 1e-9);
    auto sys = assemble_equations(m->tri);
    auto res = residual(sys, m->shapes);
    for (auto r : res) CHECK(std::abs(r) < 1e-9);
  }
  std::mt19937_64 rng(5);
  auto walk = random_walk(st, 6, rng);
  CHECK(std::abs(total_volume(walk.shapes) - vol) < 1e-9);
}
