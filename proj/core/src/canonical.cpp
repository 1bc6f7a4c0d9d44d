#include "horocanon/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

#include <Eigen/Dense>

#include "horocanon/error.hpp"

namespace horocanon {
namespace {

constexpr double kTransparent = tol::kFlatness;

// Points of the Riemann sphere in homogeneous coordinates.
using Hom = Eigen::Vector2cd;
using Positions = std::array<Hom, 4>;

Hom unit(Hom h) { return h / h.norm(); }

Positions standard_positions(Complex z) {
  return {Hom(1.0, 0.0), Hom(0.0, 1.0), unit(Hom(1.0, 1.0)), unit(Hom(z, 1.0))};
}

// Matrix sending inf, 0, 1 to p1, p2, p3.
Eigen::Matrix2cd frame(const Hom& p1, const Hom& p2, const Hom& p3) {
  Eigen::Matrix2cd a;
  a << p1, p2;
  Eigen::Vector2cd c = a.fullPivLu().solve(p3);
  a.col(0) *= c[0];
  a.col(1) *= c[1];
  return a;
}

Complex bracket(const Hom& x, const Hom& y) { return x[0] * y[1] - x[1] * y[0]; }

Complex shape_of(const Positions& q) {
  return bracket(q[3], q[1]) * bracket(q[2], q[0]) / (bracket(q[2], q[1]) * bracket(q[3], q[0]));
}

// Positions of the neighbour across face f of a tetrahedron placed at `pos`.
Positions develop_across(const Triangulation& tri, std::span<const Complex> shapes, int t, const Positions& pos,
                         int f) {
  const int u = tri.neighbor(t, f);
  const Perm4& p = tri.gluing(t, f);
  Positions q = standard_positions(shapes[u]);
  std::array<int, 3> face{};
  for (int v = 0, k = 0; v < 4; ++v)
    if (v != f) face[k++] = v;
  Eigen::Matrix2cd m = frame(pos[face[0]], pos[face[1]], pos[face[2]]) *
                       frame(q[p[face[0]]], q[p[face[1]]], q[p[face[2]]]).inverse();
  Positions out;
  for (int i = 0; i < 4; ++i) out[i] = unit(m * q[i]);
  return out;
}

// Shapes of `result` from per-tetrahedron vertex positions, in an oriented
// labelling. Fails if some tetrahedron is not positively oriented.
std::optional<ShapedTriangulation> finish_move(const Triangulation& result, std::vector<Positions> pos) {
  const int n = result.size();
  std::vector<Perm4> maps(n);
  for (int t = 0; t < n; ++t)
    if (result.orientation(t) < 0) maps[t] = Perm4::swap(2, 3);
  std::vector<Complex> z(n);
  for (int t = 0; t < n; ++t) {
    Positions q;
    for (int i = 0; i < 4; ++i) q[maps[t][i]] = pos[t][i];
    pos[t] = q;
    z[t] = shape_of(q);
  }
  if (std::all_of(z.begin(), z.end(), [](Complex c) { return c.imag() < 0.0; })) {
    for (int t = 0; t < n; ++t) {
      maps[t] = Perm4::swap(2, 3) * maps[t];
      std::swap(pos[t][2], pos[t][3]);
      z[t] = shape_of(pos[t]);
    }
  }
  if (!std::all_of(z.begin(), z.end(), [](Complex c) { return c.imag() > tol::kFlatness; })) return std::nullopt;
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return ShapedTriangulation{result.relabeled(ids, maps), std::move(z)};
}

std::vector<Positions> kept_positions(const ShapedTriangulation& in, const MoveTrace& trace, int total) {
  std::vector<Positions> pos(total);
  for (int t = 0; t < in.tri.size(); ++t)
    if (trace.old_to_new[t] >= 0) pos[trace.old_to_new[t]] = standard_positions(in.shapes[t]);
  return pos;
}

bool flippable_3_2(const Triangulation& tri, const EdgeClass& edge) {
  if (edge.valence() != 3 || edge.reversed || tri.size() < 3) return false;
  const auto& m = edge.members;
  return m[0].tet != m[1].tet && m[1].tet != m[2].tet && m[0].tet != m[2].tet;
}

}  // namespace

namespace {

// Random 2-3 moves followed by random 3-2 moves, ignoring geometry, then a
// fresh solve. Kept only if the new solution is positively oriented.
std::optional<ShapedTriangulation> randomize(const Triangulation& start, std::mt19937_64& rng,
                                             const SolveOptions& solver) {
  Triangulation tri = start;
  const int grow = tri.size() + 2;
  for (int done = 0, tries = 0; done < grow && tries < 64 * grow; ++tries) {
    int t = std::uniform_int_distribution<int>(0, tri.size() - 1)(rng);
    int f = std::uniform_int_distribution<int>(0, 3)(rng);
    if (tri.neighbor(t, f) == t) continue;
    tri = move_2_3(tri, {t, f});
    ++done;
  }
  for (;;) {
    auto edges = edge_classes(tri);
    std::vector<const EdgeClass*> options;
    for (const auto& e : edges)
      if (flippable_3_2(tri, e)) options.push_back(&e);
    if (options.empty()) break;
    tri = move_3_2(tri, *options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
  }
  try {
    GluingEquationSystem system = assemble_equations(tri);
    ShapeAssignment s = solve(system, std::nullopt, solver);
    return ShapedTriangulation{system.tri, std::move(s.z)};
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

DihedralAngles dihedral_angles(Complex z) {
  EdgeModuli w = edge_moduli(z);
  DihedralAngles theta{};
  for (int e = 0; e < 6; ++e)
    theta[e] = std::arg(w[opposite_pair(kEdgeVertices[e][0], kEdgeVertices[e][1])]);
  return theta;
}

TiltVector tilts(int tet, const DihedralAngles& theta, const std::array<double, 4>& r) {
  for (double a : theta)
    if (!(a > 0.0 && a < M_PI))
      throw Error(ErrorCode::FlatTetrahedron, "tetrahedron " + std::to_string(tet) + " has a dihedral angle " +
                                                  std::to_string(a));
  TiltVector out{tet, {}};
  for (int i = 0; i < 4; ++i) {
    double s = r[i];
    for (int j = 0; j < 4; ++j)
      if (j != i) s -= std::cos(theta[edge_index(i, j)]) * r[j];
    out.t[i] = s;
  }
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Convex: return "convex";
    case Verdict::Transparent: return "transparent";
    case Verdict::Concave: return "concave";
  }
  return "?";
}

Verdict verdict_of(double tilt_sum) {
  if (tilt_sum < -kTransparent) return Verdict::Convex;
  if (tilt_sum > kTransparent) return Verdict::Concave;
  return Verdict::Transparent;
}

std::vector<FaceVerdict> face_verdicts(const Triangulation& tri, std::span<const Complex> shapes,
                                       const CuspRadii& radii) {
  std::vector<TiltVector> tv;
  for (int t = 0; t < tri.size(); ++t) tv.push_back(tilts(t, dihedral_angles(shapes[t]), radii.r[t]));
  std::vector<FaceVerdict> out;
  for (int t = 0; t < tri.size(); ++t) {
    for (int f = 0; f < 4; ++f) {
      FaceRef here{t, f};
      FaceRef there = tri.partner(here);
      if (there < here) continue;
      double s = tv[t].t[f] + tv[there.tet].t[there.face];
      out.push_back({here, there, s, verdict_of(s)});
    }
  }
  return out;
}

CuspRadii equal_volume_radii(const Triangulation& tri, std::span<const Complex> shapes, double volume) {
  return normalize_equal_volume(build_cross_sections(tri, shapes), tri.size(), volume);
}

// ---------------------------------------------------------------------------

std::optional<ShapedTriangulation> shaped_move_2_3(const ShapedTriangulation& in, FaceRef face) {
  const int t = face.tet, f = face.face;
  if (in.tri.neighbor(t, f) == t) return std::nullopt;
  MoveTrace trace;
  Triangulation result = move_2_3(in.tri, face, trace);
  auto pos = kept_positions(in, trace, result.size());

  Positions pt = standard_positions(in.shapes[t]);
  Positions pu = develop_across(in.tri, in.shapes, t, pt, f);
  const Hom apex_u = pu[in.tri.gluing(t, f)[f]];
  std::array<int, 3> e{};
  for (int v = 0, k = 0; v < 4; ++v)
    if (v != f) e[k++] = v;
  for (int k = 0; k < 3; ++k)
    pos[trace.first_new + k] = {pt[f], apex_u, pt[e[(k + 1) % 3]], pt[e[(k + 2) % 3]]};
  return finish_move(result, std::move(pos));
}

std::optional<ShapedTriangulation> shaped_move_3_2(const ShapedTriangulation& in, const EdgeClass& edge) {
  if (!flippable_3_2(in.tri, edge)) return std::nullopt;
  MoveTrace trace;
  Triangulation result = move_3_2(in.tri, edge, trace);
  auto pos = kept_positions(in, trace, result.size());

  const auto& m = edge.members;
  const auto [a, b, c, d] = m[0].verts;
  Positions p0 = standard_positions(in.shapes[m[0].tet]);
  Positions p1 = develop_across(in.tri, in.shapes, m[0].tet, p0, c);
  const Hom e1 = p1[m[1].verts[3]];
  pos[trace.first_new] = {p0[a], p0[d], e1, p0[c]};
  pos[trace.first_new + 1] = {p0[b], p0[d], e1, p0[c]};
  return finish_move(result, std::move(pos));
}

ShapedTriangulation random_walk(const ShapedTriangulation& start, int steps, std::mt19937_64& rng) {
  ShapedTriangulation cur = start;
  for (int s = 0; s < steps; ++s) {
    std::optional<ShapedTriangulation> next;
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
      int t = std::uniform_int_distribution<int>(0, cur.tri.size() - 1)(rng);
      int f = std::uniform_int_distribution<int>(0, 3)(rng);
      next = shaped_move_2_3(cur, {t, f});
    } else {
      auto edges = edge_classes(cur.tri);
      std::vector<const EdgeClass*> options;
      for (const auto& e : edges)
        if (flippable_3_2(cur.tri, e)) options.push_back(&e);
      if (!options.empty()) {
        auto k = std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng);
        next = shaped_move_3_2(cur, *options[k]);
      }
    }
    if (next) cur = std::move(*next);
  }
  return cur;
}

// ---------------------------------------------------------------------------

CanonicalDecomposition canonize(const Triangulation& tri, std::span<const Complex> shapes,
                                const CanonizeOptions& options) {
  if (!tri.is_oriented())
    throw Error(ErrorCode::NotOrientable, "canonize needs the oriented labelling used by the solver");
  ShapedTriangulation cur{tri, std::vector<Complex>(shapes.begin(), shapes.end())};
  std::vector<FlipRecord> flips;
  std::mt19937_64 rng(options.seed);
  int restarts = 0;

  for (int iteration = 0; iteration < options.max_iterations; ++iteration) {
    GluingEquationSystem system = assemble_equations(cur.tri);
    cur.shapes = solve(system, cur.shapes, options.solver).z;
    CuspRadii radii = equal_volume_radii(cur.tri, cur.shapes, options.volume);
    auto verdicts = face_verdicts(cur.tri, cur.shapes, radii);

    std::vector<const FaceVerdict*> concave;
    for (const auto& v : verdicts)
      if (v.verdict == Verdict::Concave) concave.push_back(&v);
    std::stable_sort(concave.begin(), concave.end(),
                     [](const FaceVerdict* x, const FaceVerdict* y) { return x->tilt_sum > y->tilt_sum; });

    if (concave.empty()) {
      CanonicalDecomposition out{cur.tri, cur.shapes, verdicts, {}, {}, 0, std::move(flips), {}};
      out.transparent.assign(cur.tri.size(), {false, false, false, false});
      for (const auto& v : verdicts) {
        if (v.verdict != Verdict::Transparent) continue;
        out.transparent[v.face.tet][v.face.face] = true;
        out.transparent[v.other.tet][v.other.face] = true;
      }
      out.cell = merge_cells(out.tri, out.transparent, &out.n_cells);
      out.signature = decomposition_signature(out);
      return out;
    }

    auto edges = edge_classes(cur.tri);
    auto edge_of = edge_class_index(cur.tri, edges);
    bool moved = false;
    for (const FaceVerdict* v : concave) {
      const int t = v->face.tet, u = v->other.tet, f = v->face.face;
      if (t == u) continue;
      std::optional<ShapedTriangulation> next;
      for (int a = 0; a < 4 && !moved; ++a) {
        for (int b = a + 1; b < 4 && !moved; ++b) {
          if (a == f || b == f) continue;
          const EdgeClass& e = edges[edge_of[t][edge_index(a, b)]];
          if (!flippable_3_2(cur.tri, e)) continue;
          bool around = std::any_of(e.members.begin(), e.members.end(), [&](const EdgeMember& m) { return m.tet == u; });
          if (around && (next = shaped_move_3_2(cur, e))) {
            flips.push_back({FlipRecord::Kind::ThreeTwo, v->face, v->tilt_sum});
            moved = true;
          }
        }
      }
      if (!moved && (next = shaped_move_2_3(cur, v->face))) {
        flips.push_back({FlipRecord::Kind::TwoThree, v->face, v->tilt_sum});
        moved = true;
      }
      if (moved) {
        cur = std::move(*next);
        break;
      }
    }
    if (!moved) {
      if (++restarts > options.max_restarts)
        throw Error(ErrorCode::Stuck, std::to_string(concave.size()) + " concave faces, none can be flipped");
      std::optional<ShapedTriangulation> fresh;
      for (int attempt = 0; attempt < 8 && !fresh; ++attempt) fresh = randomize(cur.tri, rng, options.solver);
      if (fresh) cur = std::move(*fresh);
    }
  }
  throw Error(ErrorCode::IterationCap, "no canonical decomposition after " +
                                           std::to_string(options.max_iterations) + " flips");
}

std::vector<int> merge_cells(const Triangulation& tri, const std::vector<std::array<bool, 4>>& transparent,
                             int* n_cells) {
  const int n = tri.size();
  std::vector<int> cell(n, -1);
  int count = 0;
  for (int s = 0; s < n; ++s) {
    if (cell[s] >= 0) continue;
    std::queue<int> queue;
    queue.push(s);
    cell[s] = count;
    while (!queue.empty()) {
      int t = queue.front();
      queue.pop();
      for (int f = 0; f < 4; ++f) {
        int u = tri.neighbor(t, f);
        if (transparent[t][f] && cell[u] < 0) {
          cell[u] = count;
          queue.push(u);
        }
      }
    }
    ++count;
  }
  if (n_cells) *n_cells = count;
  return cell;
}

// ---------------------------------------------------------------------------
// Cell complex signature. A dart is a side a->b of a non-transparent face
// of tetrahedron t, taken in the orientation induced from t, lying on a
// genuine edge of the complex. sigma moves to the next genuine side of the
// polygon, alpha to the adjacent polygon of the same cell across the edge,
// phi to the same side seen from the cell on the other side of the polygon.

namespace {

struct Dart {
  int tet, face, a, b;
  auto key() const { return std::array<int, 4>{tet, face, a, b}; }
};

class CellComplex {
 public:
  CellComplex(const Triangulation& tri, const std::vector<std::array<bool, 4>>& transparent)
      : tri_(tri), transparent_(transparent) {
    auto edges = edge_classes(tri);
    edge_of_ = edge_class_index(tri, edges);
    for (const EdgeClass& e : edges) {
      int walls = 0;
      for (const EdgeMember& m : e.members) walls += transparent[m.tet][m.verts[2]] ? 0 : 1;
      genuine_.push_back(walls != 2 && walls != 0);
    }
    for (int t = 0; t < tri.size(); ++t)
      for (int f = 0; f < 4; ++f) {
        if (transparent[t][f]) continue;
        auto [a, b, c] = oriented_face(f);
        for (Dart d : {Dart{t, f, a, b}, Dart{t, f, b, c}, Dart{t, f, c, a}})
          if (genuine(d)) {
            index_[d.key()] = static_cast<int>(darts_.size());
            darts_.push_back(d);
          }
      }
    const int n = static_cast<int>(darts_.size());
    sigma_.resize(n);
    alpha_.resize(n);
    phi_.resize(n);
    for (int i = 0; i < n; ++i) {
      alpha_[i] = id(mate(darts_[i]));
      Dart d = next_in_face(darts_[i]);
      for (int guard = 0; !genuine(d); ++guard) {
        if (guard > 4 * tri.size() * 12) throw Error(ErrorCode::DegenerateFace, "polygon does not close");
        d = next_in_face(mate(d));
      }
      sigma_[i] = id(d);
      const Dart& x = darts_[i];
      const Perm4& p = tri.gluing(x.tet, x.face);
      phi_[i] = id({tri.neighbor(x.tet, x.face), p[x.face], p[x.b], p[x.a]});
    }
  }

  int size() const { return static_cast<int>(darts_.size()); }

  std::vector<int> encode(int start, bool mirror) const {
    const int n = size();
    std::vector<int> sigma = sigma_;
    if (mirror)
      for (int i = 0; i < n; ++i) sigma[sigma_[i]] = i;
    std::vector<int> label(n, -1), order;
    order.reserve(n);
    auto visit = [&](int d) {
      if (label[d] < 0) {
        label[d] = static_cast<int>(order.size());
        order.push_back(d);
      }
      return label[d];
    };
    std::vector<int> code;
    code.reserve(3 * n);
    visit(start);
    for (std::size_t i = 0; i < order.size() || static_cast<int>(order.size()) < n; ++i) {
      if (i == order.size()) {
        // Disconnected remainder: continue from the first unlabelled dart.
        visit(static_cast<int>(std::find(label.begin(), label.end(), -1) - label.begin()));
      }
      int d = order[i];
      code.push_back(visit(sigma[d]));
      code.push_back(visit(alpha_[d]));
      code.push_back(visit(phi_[d]));
    }
    return code;
  }

 private:
  // (a, b, c) with (f, a, b, c) even.
  static std::array<int, 3> oriented_face(int f) {
    std::array<int, 3> v{};
    for (int x = 0, k = 0; x < 4; ++x)
      if (x != f) v[k++] = x;
    if (Perm4(f, v[0], v[1], v[2]).sign() < 0) std::swap(v[1], v[2]);
    return v;
  }

  bool genuine(const Dart& d) const { return genuine_[edge_of_[d.tet][edge_index(d.a, d.b)]]; }

  static Dart next_in_face(const Dart& d) { return {d.tet, d.face, d.b, 6 - d.face - d.a - d.b}; }

  Dart mate(Dart d) const {
    int t = d.tet, face = d.face, a = d.a, b = d.b;
    for (int guard = 0; guard <= 4 * tri_.size(); ++guard) {
      int g = 6 - face - a - b;
      if (!transparent_[t][g]) return {t, g, b, a};
      const Perm4& p = tri_.gluing(t, g);
      t = tri_.neighbor(t, g);
      face = p[g];
      a = p[a];
      b = p[b];
    }
    throw Error(ErrorCode::DegenerateFace, "edge is surrounded by transparent faces");
  }

  int id(const Dart& d) const { return index_.at(d.key()); }

  const Triangulation& tri_;
  const std::vector<std::array<bool, 4>>& transparent_;
  std::vector<std::array<int, 6>> edge_of_;
  std::vector<bool> genuine_;
  std::vector<Dart> darts_;
  std::map<std::array<int, 4>, int> index_;
  std::vector<int> sigma_, alpha_, phi_;
};

std::string base62(int value, int width) {
  static constexpr char kDigits[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
  std::string s(width, '0');
  for (int i = width - 1; i >= 0; --i) {
    s[i] = kDigits[value % 62];
    value /= 62;
  }
  return s;
}

}  // namespace

std::string decomposition_signature(const Triangulation& tri, const std::vector<std::array<bool, 4>>& transparent) {
  CellComplex complex(tri, transparent);
  int n_cells = 0;
  merge_cells(tri, transparent, &n_cells);
  const int n = complex.size();
  std::vector<int> best;
  for (int s = 0; s < n; ++s)
    for (bool mirror : {false, true}) {
      auto code = complex.encode(s, mirror);
      if (best.empty() || code < best) best = std::move(code);
    }
  int width = 1;
  for (int cap = 62; cap < n; cap *= 62) ++width;
  std::string sig = std::to_string(n_cells) + "c" + std::to_string(n) + "d";
  for (int x : best) sig += base62(x, width);
  return sig;
}

std::string decomposition_signature(const CanonicalDecomposition& d) {
  return decomposition_signature(d.tri, d.transparent);
}

}  // namespace horocanon
