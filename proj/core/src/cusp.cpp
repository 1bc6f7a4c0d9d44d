#include "horocanon/cusp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

#include "horocanon/error.hpp"

namespace horocanon {
namespace {

constexpr double kHolonomyTolerance = 1e-8;

void require_oriented(const Triangulation& tri) {
  if (!tri.is_oriented())
    throw Error(ErrorCode::NotOrientable, "cusp geometry needs an oriented labelling");
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

int side_key(int tet, int vertex, int face) { return tet * 16 + vertex * 4 + face; }

struct Side {
  int tri;
  int face;
};

// Link triangles of one cusp with the side adjacency between them.
struct LinkGraph {
  std::vector<std::array<int, 2>> triangles;
  std::map<std::array<int, 2>, int> index;
  std::vector<std::array<Side, 4>> across;  // across[i][f]: triangle and side reached through side f

  LinkGraph(const Triangulation& tri, const VertexLink& link) : triangles(link.triangles) {
    std::sort(triangles.begin(), triangles.end());
    for (int i = 0; i < static_cast<int>(triangles.size()); ++i) index[triangles[i]] = i;
    across.resize(triangles.size());
    for (int i = 0; i < static_cast<int>(triangles.size()); ++i) {
      auto [t, v] = triangles[i];
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        const Perm4& p = tri.gluing(t, f);
        across[i][f] = {index.at({tri.neighbor(t, f), p[v]}), p[f]};
      }
    }
  }
};

const VertexLink& torus_link(const std::vector<VertexLink>& links, int cusp) {
  if (cusp < 0 || cusp >= static_cast<int>(links.size()))
    throw Error(ErrorCode::NotCusped, "no cusp " + std::to_string(cusp));
  if (!links[cusp].is_torus())
    throw Error(ErrorCode::NotCusped, "vertex link " + std::to_string(cusp) + " is not a torus");
  return links[cusp];
}

std::array<CuspCurve, 2> generators_of(const Triangulation& tri, const VertexLink& link) {
  LinkGraph g(tri, link);
  const int nt = static_cast<int>(g.triangles.size());

  // Dual spanning tree by breadth-first search.
  std::vector<std::array<bool, 4>> in_tree(nt, {false, false, false, false});
  std::vector<std::vector<std::pair<int, Side>>> tree_adj(nt);  // (face, far side)
  std::vector<bool> seen(nt, false);
  std::queue<int> queue;
  queue.push(0);
  seen[0] = true;
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop();
    int v = g.triangles[i][1];
    for (int f = 0; f < 4; ++f) {
      if (f == v) continue;
      Side s = g.across[i][f];
      if (seen[s.tri]) continue;
      seen[s.tri] = true;
      in_tree[i][f] = in_tree[s.tri][s.face] = true;
      tree_adj[i].push_back({f, s});
      tree_adj[s.tri].push_back({s.face, {i, f}});
      queue.push(s.tri);
    }
  }

  // Link vertices are classes of corners.
  UnionFind corners(nt * 4);
  for (int i = 0; i < nt; ++i) {
    int v = g.triangles[i][1];
    for (int f = 0; f < 4; ++f) {
      if (f == v) continue;
      Side s = g.across[i][f];
      auto [t, _] = g.triangles[i];
      const Perm4& p = tri.gluing(t, f);
      for (int a = 0; a < 4; ++a)
        if (a != v && a != f) corners.unite(i * 4 + a, s.tri * 4 + p[a]);
    }
  }

  // Primal spanning tree on the remaining sides; what is left generates H1.
  UnionFind primal(nt * 4);
  std::vector<Side> leftover;
  for (int i = 0; i < nt; ++i) {
    int v = g.triangles[i][1];
    for (int f = 0; f < 4; ++f) {
      if (f == v || in_tree[i][f]) continue;
      Side s = g.across[i][f];
      if (side_key(s.tri, 0, s.face) < side_key(i, 0, f)) continue;  // each side pair once
      int x = -1, y = -1;
      for (int a = 0; a < 4; ++a) {
        if (a == v || a == f) continue;
        (x < 0 ? x : y) = a;
      }
      if (!primal.unite(corners.find(i * 4 + x), corners.find(i * 4 + y))) leftover.push_back({i, f});
    }
  }
  if (leftover.size() != 2)
    throw Error(ErrorCode::NotCusped, "cusp cross-section has first Betti number " +
                                          std::to_string(leftover.size()));

  auto cycle = [&](Side exit) {
    Side entry = g.across[exit.tri][exit.face];
    // Tree path from the entry triangle to the exit triangle.
    std::vector<std::pair<int, int>> back(nt, {-1, -1});  // (previous triangle, face used there)
    std::vector<int> in_face(nt, -1);
    std::queue<int> q;
    q.push(entry.tri);
    back[entry.tri] = {entry.tri, -1};
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (auto [f, s] : tree_adj[i]) {
        if (back[s.tri].first >= 0) continue;
        back[s.tri] = {i, f};
        in_face[s.tri] = s.face;
        q.push(s.tri);
      }
    }
    std::vector<int> path;
    for (int i = exit.tri; i != entry.tri; i = back[i].first) path.push_back(i);
    path.push_back(entry.tri);
    std::reverse(path.begin(), path.end());

    CuspCurve curve;
    curve.cusp = link.id;
    for (std::size_t k = 0; k < path.size(); ++k) {
      int i = path[k];
      CuspStep step;
      step.tet = g.triangles[i][0];
      step.vertex = g.triangles[i][1];
      step.in = k == 0 ? entry.face : in_face[i];
      step.out = k + 1 == path.size() ? exit.face : back[path[k + 1]].second;
      curve.steps.push_back(step);
    }
    return curve;
  };

  std::array<CuspCurve, 2> result{cycle(leftover[0]), cycle(leftover[1])};
  result[0].tag = CuspCurve::Tag::Lambda;
  result[1].tag = CuspCurve::Tag::Mu;
  if (intersection_number(tri, result[0], result[1]) < 0) {
    result[1] = result[1].reversed();
  }
  return result;
}

}  // namespace

CuspCurve CuspCurve::reversed() const {
  CuspCurve r = *this;
  std::reverse(r.steps.begin(), r.steps.end());
  for (auto& s : r.steps) std::swap(s.in, s.out);
  return r;
}

void check_closed(const Triangulation& tri, const CuspCurve& curve) {
  if (curve.steps.empty()) throw Error(ErrorCode::OpenCurve, "empty curve");
  const std::size_t k = curve.steps.size();
  for (std::size_t i = 0; i < k; ++i) {
    const CuspStep& s = curve.steps[i];
    const CuspStep& n = curve.steps[(i + 1) % k];
    if (s.in == s.out || s.in == s.vertex || s.out == s.vertex)
      throw Error(ErrorCode::OpenCurve, "step " + std::to_string(i) + " does not cross a triangle");
    const Perm4& p = tri.gluing(s.tet, s.out);
    if (n.tet != tri.neighbor(s.tet, s.out) || n.vertex != p[s.vertex] || n.in != p[s.out])
      throw Error(ErrorCode::OpenCurve, "step " + std::to_string(i) + " is not followed by its neighbour");
  }
}

std::array<CuspCurve, 2> cusp_generators(const Triangulation& tri, int cusp) {
  auto links = vertex_links(tri);
  return generators_of(tri, torus_link(links, cusp));
}

CuspCurve vertex_loop(const Triangulation& tri, int tet, int vertex, int other) {
  CuspCurve curve;
  curve.cusp = vertex_class_index(tri)[tet][vertex];
  int x = -1, y = -1;
  for (int a = 0; a < 4; ++a) {
    if (a == vertex || a == other) continue;
    (x < 0 ? x : y) = a;
  }
  CuspStep step{tet, vertex, x, y};
  if (!step.pivot_on_left()) std::swap(step.in, step.out);
  const CuspStep start = step;
  do {
    curve.steps.push_back(step);
    const Perm4& p = tri.gluing(step.tet, step.out);
    int pivot = p[step.pivot()];
    CuspStep next;
    next.tet = tri.neighbor(step.tet, step.out);
    next.vertex = p[step.vertex];
    next.in = p[step.out];
    next.out = 6 - next.vertex - next.in - pivot;
    step = next;
  } while (step.tet != start.tet || step.vertex != start.vertex || step.in != start.in);
  return curve;
}

int intersection_number(const Triangulation& tri, const CuspCurve& a, const CuspCurve& b) {
  check_closed(tri, a);
  check_closed(tri, b);
  // Push `a` onto the link edges by sliding each arc into its pivot corner,
  // then count signed crossings of `b` with the resulting edge path.
  int total = 0;
  const std::size_t k = a.steps.size();
  for (std::size_t i = 0; i < k; ++i) {
    const CuspStep& s = a.steps[i];
    const CuspStep& n = a.steps[(i + 1) % k];
    const Perm4& p = tri.gluing(s.tet, s.out);
    const int from = s.pivot();
    if (p[from] == n.pivot()) continue;
    const int to = 6 - s.vertex - s.out - from;
    const bool here_left = Perm4(s.vertex, from, to, s.out).sign() > 0;
    const int u = tri.neighbor(s.tet, s.out);
    for (const CuspStep& c : b.steps) {
      if (c.tet == s.tet && c.vertex == s.vertex && c.out == s.out) {
        total += here_left ? -1 : 1;
      } else if (c.tet == u && c.vertex == p[s.vertex] && c.out == p[s.out]) {
        total += here_left ? 1 : -1;
      }
    }
  }
  return total;
}

std::vector<std::array<int, 3>> curve_exponents(const Triangulation& tri, const CuspCurve& curve) {
  require_oriented(tri);
  check_closed(tri, curve);
  std::vector<std::array<int, 3>> exps(tri.size(), {0, 0, 0});
  for (const CuspStep& s : curve.steps)
    exps[s.tet][opposite_pair(s.vertex, s.pivot())] += s.pivot_on_left() ? 1 : -1;
  return exps;
}

Complex holonomy_log(const Triangulation& tri, std::span<const Complex> shapes, const CuspCurve& curve) {
  auto exps = curve_exponents(tri, curve);
  Complex sum = 0.0;
  for (int t = 0; t < tri.size(); ++t)
    for (int pair = 0; pair < 3; ++pair)
      if (exps[t][pair] != 0) sum += static_cast<double>(exps[t][pair]) * log_modulus(shapes[t], pair);
  return sum;
}

// ---------------------------------------------------------------------------

int CuspCrossSection::triangle_index(int tet, int vertex) const {
  auto it = std::lower_bound(triangles.begin(), triangles.end(), std::array<int, 2>{tet, vertex});
  if (it == triangles.end() || *it != std::array<int, 2>{tet, vertex})
    throw Error(ErrorCode::OpenCurve, "corner is not on cusp " + std::to_string(cusp));
  return static_cast<int>(it - triangles.begin());
}

std::vector<CuspCrossSection> build_cross_sections(const Triangulation& tri, std::span<const Complex> shapes) {
  require_oriented(tri);
  if (static_cast<int>(shapes.size()) != tri.size())
    throw Error(ErrorCode::NotConsistent, "expected one shape per tetrahedron");
  for (Complex z : shapes) edge_moduli(z);

  for (const EdgeClass& edge : edge_classes(tri)) {
    Complex sum = 0.0;
    for (const EdgeMember& m : edge.members)
      sum += log_modulus(shapes[m.tet], opposite_pair(m.verts[0], m.verts[1]));
    if (std::abs(sum - Complex(0.0, 2.0 * M_PI)) > kHolonomyTolerance)
      throw Error(ErrorCode::NotConsistent, "edge equation off by " + std::to_string(std::abs(sum - Complex(0.0, 2.0 * M_PI))));
  }

  auto links = vertex_links(tri);
  std::vector<CuspCrossSection> sections;
  for (const VertexLink& link : links) {
    torus_link(links, link.id);
    LinkGraph g(tri, link);
    const int nt = static_cast<int>(g.triangles.size());
    CuspCrossSection cs;
    cs.cusp = link.id;
    cs.triangles = g.triangles;
    cs.euler_characteristic = link.euler_characteristic;
    cs.corner_log.resize(nt);
    for (int i = 0; i < nt; ++i) {
      auto [t, v] = g.triangles[i];
      cs.corner_log[i] = {0.0, 0.0, 0.0, 0.0};
      for (int a = 0; a < 4; ++a) {
        if (a == v) continue;
        cs.corner_log[i][a] = log_modulus(shapes[t], opposite_pair(v, a));
        double angle = cs.corner_log[i][a].imag();
        if (!(angle > tol::kFlatness && angle < M_PI - tol::kFlatness))
          throw Error(ErrorCode::FlatTetrahedron, "tetrahedron " + std::to_string(t) + " is not positively oriented");
      }
    }

    cs.circumradius.assign(nt, 0.0);
    cs.circumradius[0] = 1.0;
    std::queue<int> queue;
    queue.push(0);
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop();
      int v = g.triangles[i][1];
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        Side s = g.across[i][f];
        double here = cs.circumradius[i] * std::sin(cs.angle(i, f));
        double there_sin = std::sin(cs.angle(s.tri, s.face));
        if (cs.circumradius[s.tri] == 0.0) {
          cs.circumradius[s.tri] = here / there_sin;
          queue.push(s.tri);
        } else {
          double there = cs.circumradius[s.tri] * there_sin;
          cs.scale_mismatch = std::max(cs.scale_mismatch, std::abs(here - there) / std::max(here, there));
        }
      }
    }

    for (int i = 0; i < nt; ++i) {
      int v = g.triangles[i][1];
      double prod = 2.0 * cs.circumradius[i] * cs.circumradius[i];
      for (int a = 0; a < 4; ++a)
        if (a != v) prod *= std::sin(cs.angle(i, a));
      cs.area += prod;
    }
    cs.generators = generators_of(tri, link);
    sections.push_back(std::move(cs));
  }
  return sections;
}

std::array<CuspCurve, 2> cusp_generators(const CuspCrossSection& section) { return section.generators; }

Complex holonomy_dilation(const CuspCrossSection& section, const CuspCurve& curve) {
  Complex sum = 0.0;
  for (const CuspStep& s : curve.steps) {
    Complex w = section.corner_log[section.triangle_index(s.tet, s.vertex)][s.pivot()];
    sum += s.pivot_on_left() ? w : -w;
  }
  return std::exp(sum);
}

CuspRadii normalize_equal_volume(const std::vector<CuspCrossSection>& sections, int n_tetrahedra, double volume) {
  if (!(volume > 0.0)) throw Error(ErrorCode::NonPositiveInput, "cusp volume must be positive");
  CuspRadii radii;
  radii.r.assign(n_tetrahedra, {0.0, 0.0, 0.0, 0.0});
  radii.d.assign(n_tetrahedra, {0.0, 0.0, 0.0, 0.0});
  for (const CuspCrossSection& cs : sections) {
    for (const CuspCurve& g : cs.generators) {
      Complex rho = holonomy_dilation(cs, g);
      if (std::abs(rho - 1.0) > kHolonomyTolerance)
        throw Error(ErrorCode::IncompleteStructure, "cusp " + std::to_string(cs.cusp) +
                                                        " generator dilation off by " +
                                                        std::to_string(std::abs(rho - 1.0)));
    }
    if (cs.scale_mismatch > kHolonomyTolerance)
      throw Error(ErrorCode::IncompleteStructure, "cusp " + std::to_string(cs.cusp) + " does not close up");
    double scale = std::sqrt(2.0 * volume / cs.area);
    for (std::size_t i = 0; i < cs.triangles.size(); ++i) {
      auto [t, v] = cs.triangles[i];
      radii.r[t][v] = cs.circumradius[i] * scale;
      radii.d[t][v] = -std::log(radii.r[t][v]);
    }
  }
  return radii;
}

}  // namespace horocanon
