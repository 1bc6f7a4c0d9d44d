#include <cmath>
#include <queue>

#include <Eigen/Dense>

#include "horocanon/canonical.hpp"
#include "horocanon/error.hpp"

namespace horocanon {
namespace {

constexpr double kGramTolerance = 1e-9;

Eigen::MatrixXd metric_rows(std::span<const Eigen::VectorXd> vectors) {
  const auto dim = vectors.front().size();
  Eigen::MatrixXd a(vectors.size(), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    a.row(i) = vectors[i].transpose();
    a(i, 0) = -a(i, 0);
  }
  return a;
}

double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) { return x.dot(y) - 2.0 * x[0] * y[0]; }

void require_future_null(const Eigen::VectorXd& x) {
  if (!(x[0] > 0.0) || std::abs(inner(x, x)) > kGramTolerance * x[0] * x[0])
    throw Error(ErrorCode::DegenerateFace, "vertex is not on the future light cone");
}

// Unit space-like normal to the face, on the side away from `away`.
MinkowskiVector face_normal(const MinkowskiVector& a, const MinkowskiVector& b, const MinkowskiVector& c,
                            const MinkowskiVector& away) {
  std::array<Eigen::VectorXd, 3> face{a, b, c};
  Eigen::FullPivLU<Eigen::MatrixXd> lu(metric_rows(face));
  Eigen::MatrixXd kernel = lu.kernel();
  if (kernel.cols() != 1) throw Error(ErrorCode::DegenerateFace, "face vertices are dependent");
  MinkowskiVector n = kernel.col(0);
  double nn = minkowski_inner(n, n);
  if (!(nn > 0.0)) throw Error(ErrorCode::DegenerateFace, "face is not time-like");
  n /= std::sqrt(nn);
  if (minkowski_inner(n, away) > 0.0) n = -n;
  return n;
}

struct Glued {
  std::array<int, 3> face;  // labels in the first tetrahedron
  int apex;
};

Glued face_labels(int f) {
  Glued g{{}, f};
  for (int v = 0, k = 0; v < 4; ++v)
    if (v != f) g.face[k++] = v;
  return g;
}

// Lorentz map carrying the neighbour `yu` onto `yt` across face f of t.
Eigen::Matrix4d gluing_isometry(const std::array<MinkowskiVector, 4>& yt, const std::array<MinkowskiVector, 4>& yu,
                                int f, const Perm4& p) {
  Glued g = face_labels(f);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      double here = minkowski_inner(yt[g.face[i]], yt[g.face[j]]);
      double there = minkowski_inner(yu[p[g.face[i]]], yu[p[g.face[j]]]);
      if (std::abs(here - there) > kGramTolerance * std::max(1.0, std::abs(here)))
        throw Error(ErrorCode::DevelopingMismatch, "horoballs disagree across a face: " + std::to_string(here) +
                                                       " vs " + std::to_string(there));
    }
  Eigen::Matrix4d s, s2;
  s << yt[g.face[0]], yt[g.face[1]], yt[g.face[2]], face_normal(yt[g.face[0]], yt[g.face[1]], yt[g.face[2]], yt[f]);
  MinkowskiVector n2 = -face_normal(yu[p[g.face[0]]], yu[p[g.face[1]]], yu[p[g.face[2]]], yu[p[f]]);
  s2 << yu[p[g.face[0]]], yu[p[g.face[1]]], yu[p[g.face[2]]], n2;
  return s * s2.inverse();
}

}  // namespace

std::array<MinkowskiVector, 4> place_tetrahedron(Complex z, const std::array<double, 4>& r) {
  DihedralAngles theta = dihedral_angles(z);
  for (double x : r)
    if (!(x > 0.0)) throw Error(ErrorCode::NonPositiveInput, "circumradii must be positive");
  const std::array<Complex, 4> p{0.0, 0.0, 1.0, z};
  std::array<MinkowskiVector, 4> y;
  const double euclidean_radius = 1.0 / (2.0 * std::sin(theta[edge_index(0, 3)]));
  y[0] = lightcone_at_infinity(euclidean_radius / r[0]);
  for (int j = 1; j < 4; ++j) {
    int k = j % 3 + 1;
    int l = 6 - j - k;
    double side = 2.0 * r[j] * std::sin(theta[edge_index(j, l)]);
    y[j] = lightcone_at(p[j], side * std::abs(p[j] - p[k]));
  }
  return y;
}

LightConeLift lift_to_lightcone(const Triangulation& tri, std::span<const Complex> shapes, const CuspRadii& radii) {
  const int n = tri.size();
  LightConeLift lift;
  lift.y.resize(n);
  lift.parent_face.assign(n, -1);
  std::vector<bool> placed(n, false);
  lift.y[0] = place_tetrahedron(shapes[0], radii.r[0]);
  placed[0] = true;
  std::queue<int> queue;
  queue.push(0);
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop();
    for (int f = 0; f < 4; ++f) {
      int u = tri.neighbor(t, f);
      if (placed[u]) continue;
      auto local = place_tetrahedron(shapes[u], radii.r[u]);
      Eigen::Matrix4d map = gluing_isometry(lift.y[t], local, f, tri.gluing(t, f));
      for (int i = 0; i < 4; ++i) lift.y[u][i] = map * local[i];
      lift.parent_face[u] = tri.gluing(t, f)[f];
      placed[u] = true;
      queue.push(u);
    }
  }
  // Faces off the spanning tree must be consistent too.
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) gluing_isometry(lift.y[t], lift.y[tri.neighbor(t, f)], f, tri.gluing(t, f));
  return lift;
}

HullVerdict hull_verdict(std::span<const Eigen::VectorXd> face, const Eigen::VectorXd& apex1,
                         const Eigen::VectorXd& apex2) {
  const auto dim = apex1.size();
  if (static_cast<Eigen::Index>(face.size()) + 1 != dim)
    throw Error(ErrorCode::DegenerateFace, "face needs one vertex fewer than the dimension");
  for (const auto& x : face) require_future_null(x);
  require_future_null(apex1);
  require_future_null(apex2);

  std::vector<Eigen::VectorXd> simplex(face.begin(), face.end());
  simplex.push_back(apex1);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(metric_rows(simplex));
  if (!lu.isInvertible()) throw Error(ErrorCode::DegenerateFace, "simplex is degenerate");
  Eigen::VectorXd p1 = lu.solve(Eigen::VectorXd::Constant(dim, -1.0));

  Eigen::FullPivLU<Eigen::MatrixXd> face_lu(metric_rows(face));
  Eigen::MatrixXd kernel = face_lu.kernel();
  if (kernel.cols() != 1) throw Error(ErrorCode::DegenerateFace, "face vertices are dependent");
  Eigen::VectorXd m1 = kernel.col(0);
  double mm = inner(m1, m1);
  if (!(mm > 0.0)) throw Error(ErrorCode::DegenerateFace, "face is not time-like");
  m1 /= std::sqrt(mm);
  if (inner(m1, apex1) > 0.0) m1 = -m1;

  double across = inner(m1, apex2);
  if (!(std::abs(across) > kGramTolerance * apex2[0]))
    throw Error(ErrorCode::DegenerateFace, "second apex lies on the face");
  HullVerdict out;
  out.offset = (inner(p1, apex2) + 1.0) / across;
  out.verdict = verdict_of(out.offset);
  return out;
}

HullVerdict hull_oracle(const Triangulation& tri, const LightConeLift& lift, FaceRef face) {
  const int t = face.tet, f = face.face;
  const int u = tri.neighbor(t, f);
  const Perm4& p = tri.gluing(t, f);
  for (const auto& y : lift.y[t]) require_future_null(y);
  for (const auto& y : lift.y[u]) require_future_null(y);
  Eigen::Matrix4d map = gluing_isometry(lift.y[t], lift.y[u], f, p);
  Glued g = face_labels(f);
  std::array<Eigen::VectorXd, 3> shared{lift.y[t][g.face[0]], lift.y[t][g.face[1]], lift.y[t][g.face[2]]};
  Eigen::VectorXd apex1 = lift.y[t][f];
  Eigen::VectorXd apex2 = map * lift.y[u][p[f]];
  return hull_verdict(shared, apex1, apex2);
}

}  // namespace horocanon
