#include "horocanon/triangulation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include "horocanon/error.hpp"

namespace horocanon {

namespace {

std::string face_name(int tet, int face) {
  return "tetrahedron " + std::to_string(tet) + " face " + std::to_string(face);
}

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

}  // namespace

Triangulation::Triangulation(GluingTable table) : table_(std::move(table)) {
  const int n = size();
  if (n == 0) throw Error(ErrorCode::NotConnected, "empty triangulation");

  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const Slot& s = table_[t][f];
      if (s.tet < 0 || s.tet >= n)
        throw Error(ErrorCode::NotInvolution, face_name(t, f) + " is not glued");
      if (!s.perm.is_valid())
        throw Error(ErrorCode::NotInvolution, face_name(t, f) + " has an invalid vertex map");
      const int g = s.perm[f];
      if (s.tet == t && g == f)
        throw Error(ErrorCode::NotInvolution, face_name(t, f) + " is glued to itself");
      const Slot& back = table_[s.tet][g];
      if (back.tet != t || !(back.perm == s.perm.inverse()))
        throw Error(ErrorCode::NotInvolution,
                    face_name(t, f) + " -> " + face_name(s.tet, g) + " is not reciprocated");
    }
  }

  // Connectivity and orientation by breadth-first 2-colouring.
  sign_.assign(n, 0);
  sign_[0] = 1;
  std::queue<int> queue;
  queue.push(0);
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop();
    for (int f = 0; f < 4; ++f) {
      const Slot& s = table_[t][f];
      // Orientation-reversing on faces: odd maps join equally signed tetrahedra.
      int expected = s.perm.sign() < 0 ? sign_[t] : -sign_[t];
      if (sign_[s.tet] == 0) {
        sign_[s.tet] = expected;
        queue.push(s.tet);
      } else if (sign_[s.tet] != expected) {
        throw Error(ErrorCode::NotOrientable,
                    "gluing at " + face_name(t, f) + " contradicts the orientation");
      }
    }
  }
  for (int t = 0; t < n; ++t)
    if (sign_[t] == 0)
      throw Error(ErrorCode::NotConnected,
                  "tetrahedron " + std::to_string(t) + " is not reachable from tetrahedron 0");
}

Triangulation Triangulation::from_table(GluingTable table) { return Triangulation(std::move(table)); }

Triangulation Triangulation::build(int n, std::span<const FaceGluing> gluings) {
  if (n <= 0) throw Error(ErrorCode::NotConnected, "need at least one tetrahedron");
  GluingTable table(n);
  for (const auto& g : gluings) {
    const auto [t, f] = g.source;
    if (t < 0 || t >= n || f < 0 || f > 3)
      throw Error(ErrorCode::NotInvolution, face_name(t, f) + " is out of range");
    if (table[t][f].tet != -1)
      throw Error(ErrorCode::NotInvolution, face_name(t, f) + " appears twice as a source");
    if (g.target.tet < 0 || g.target.tet >= n || !g.vertex_map.is_valid() ||
        g.vertex_map[f] != g.target.face)
      throw Error(ErrorCode::NotInvolution,
                  face_name(t, f) + " has a vertex map inconsistent with its target face");
    table[t][f] = Slot{g.target.tet, g.vertex_map};
  }
  return Triangulation(std::move(table));
}

bool Triangulation::is_oriented() const {
  return std::all_of(sign_.begin(), sign_.end(), [](int s) { return s > 0; });
}

Triangulation Triangulation::oriented() const {
  if (is_oriented()) return *this;
  std::vector<int> tets(size());
  std::iota(tets.begin(), tets.end(), 0);
  std::vector<Perm4> maps(size());
  for (int t = 0; t < size(); ++t)
    if (sign_[t] < 0) maps[t] = Perm4::swap(2, 3);
  // Tetrahedron 0 roots the sign colouring, so it never needs relabelling.
  return relabeled(tets, maps);
}

Triangulation Triangulation::relabeled(std::span<const int> tet_map,
                                       std::span<const Perm4> vertex_maps) const {
  GluingTable out(size());
  for (int t = 0; t < size(); ++t) {
    for (int f = 0; f < 4; ++f) {
      const Slot& s = table_[t][f];
      const Perm4 perm = vertex_maps[s.tet] * s.perm * vertex_maps[t].inverse();
      out[tet_map[t]][vertex_maps[t][f]] = Slot{tet_map[s.tet], perm};
    }
  }
  return Triangulation(std::move(out));
}

std::vector<FaceGluing> Triangulation::gluings() const {
  std::vector<FaceGluing> out;
  out.reserve(4 * size());
  for (int t = 0; t < size(); ++t)
    for (int f = 0; f < 4; ++f)
      out.push_back({{t, f}, partner({t, f}), table_[t][f].perm});
  return out;
}

bool operator==(const Triangulation& a, const Triangulation& b) {
  if (a.size() != b.size()) return false;
  for (int t = 0; t < a.size(); ++t)
    for (int f = 0; f < 4; ++f)
      if (a.table_[t][f].tet != b.table_[t][f].tet || !(a.table_[t][f].perm == b.table_[t][f].perm))
        return false;
  return true;
}

// ---------------------------------------------------------------------------

std::vector<EdgeClass> edge_classes(const Triangulation& tri) {
  const int n = tri.size();
  std::vector<std::array<bool, 6>> seen(n);
  for (auto& s : seen) s.fill(false);

  std::vector<EdgeClass> classes;
  for (int t = 0; t < n; ++t) {
    for (int e = 0; e < 6; ++e) {
      if (seen[t][e]) continue;
      const auto [a, b] = kEdgeVertices[e];
      std::array<int, 4> start{a, b, 0, 0};
      int k = 2;
      for (int v = 0; v < 4; ++v)
        if (v != a && v != b) start[k++] = v;

      EdgeClass ec;
      EdgeMember cur{t, start};
      do {
        const int ce = cur.edge();
        if (seen[cur.tet][ce]) ec.reversed = true;
        seen[cur.tet][ce] = true;
        ec.members.push_back(cur);
        const auto [va, vb, vc, vd] = cur.verts;
        const Perm4& p = tri.gluing(cur.tet, vc);
        cur = EdgeMember{tri.neighbor(cur.tet, vc), {p[va], p[vb], p[vd], p[vc]}};
      } while (!(cur.tet == t && cur.verts == start));
      classes.push_back(std::move(ec));
    }
  }
  return classes;
}

std::vector<std::array<int, 6>> edge_class_index(const Triangulation& tri,
                                                 const std::vector<EdgeClass>& classes) {
  std::vector<std::array<int, 6>> index(tri.size());
  for (int c = 0; c < static_cast<int>(classes.size()); ++c)
    for (const auto& m : classes[c].members) index[m.tet][m.edge()] = c;
  return index;
}

std::vector<std::array<int, 4>> vertex_class_index(const Triangulation& tri) {
  const int n = tri.size();
  UnionFind uf(4 * n);
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f)
      for (int v = 0; v < 4; ++v)
        if (v != f) uf.unite(4 * t + v, 4 * tri.neighbor(t, f) + tri.gluing(t, f)[v]);

  std::vector<std::array<int, 4>> index(n);
  std::vector<int> label(4 * n, -1);
  int next = 0;
  for (int i = 0; i < 4 * n; ++i) {
    int r = uf.find(i);
    if (label[r] < 0) label[r] = next++;
    index[i / 4][i % 4] = label[r];
  }
  return index;
}

std::vector<VertexLink> vertex_links(const Triangulation& tri) {
  const int n = tri.size();
  const auto vclass = vertex_class_index(tri);
  int n_classes = 0;
  for (const auto& row : vclass)
    for (int c : row) n_classes = std::max(n_classes, c + 1);

  std::vector<VertexLink> links(n_classes);
  for (int c = 0; c < n_classes; ++c) links[c].id = c;
  for (int t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v) links[vclass[t][v]].triangles.push_back({t, v});

  // Link vertices are ends of edges: corner (t, v, a) is the end at v of edge va.
  auto corner = [](int t, int v, int a) { return 16 * t + 4 * v + a; };
  UnionFind uf(16 * n);
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      const Perm4& p = tri.gluing(t, f);
      const int u = tri.neighbor(t, f);
      for (int v = 0; v < 4; ++v)
        for (int a = 0; a < 4; ++a)
          if (v != a && v != f && a != f) uf.unite(corner(t, v, a), corner(u, p[v], p[a]));
    }

  std::vector<std::vector<int>> roots(n_classes);
  for (int t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v)
      for (int a = 0; a < 4; ++a)
        if (a != v) roots[vclass[t][v]].push_back(uf.find(corner(t, v, a)));

  for (auto& link : links) {
    auto& r = roots[link.id];
    std::sort(r.begin(), r.end());
    link.n_vertices = static_cast<int>(std::unique(r.begin(), r.end()) - r.begin());
    const int faces = static_cast<int>(link.triangles.size());
    link.n_edges = 3 * faces / 2;
    link.euler_characteristic = link.n_vertices - link.n_edges + faces;
    // Links of an orientable triangulation inherit its orientation.
    link.orientable = true;
  }
  return links;
}

LinkType classify_links(const Triangulation& tri) {
  for (const auto& ec : edge_classes(tri))
    if (ec.reversed) return LinkType::Other;
  const auto links = vertex_links(tri);
  if (std::all_of(links.begin(), links.end(), [](const VertexLink& l) { return l.is_sphere(); }))
    return LinkType::Closed;
  if (std::all_of(links.begin(), links.end(), [](const VertexLink& l) { return l.is_torus(); }))
    return LinkType::Cusped;
  return LinkType::Other;
}

std::string_view to_string(LinkType type) {
  switch (type) {
    case LinkType::Closed: return "closed";
    case LinkType::Cusped: return "cusped";
    case LinkType::Other: return "other";
  }
  return "other";
}

// ---------------------------------------------------------------------------

std::string to_text(const Triangulation& tri) {
  std::string out = "tri " + std::to_string(tri.size()) + "\n";
  for (int t = 0; t < tri.size(); ++t) {
    for (int f = 0; f < 4; ++f) {
      if (f) out += ' ';
      out += std::to_string(tri.neighbor(t, f));
      out += ':';
      out += tri.gluing(t, f).str();
    }
    out += '\n';
  }
  return out;
}

Triangulation parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) -> Error {
    return Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
  };

  ++line_no;
  if (!std::getline(in, line)) throw fail("missing header");
  std::istringstream header(line);
  std::string tag;
  long n = 0;
  std::string extra;
  if (!(header >> tag >> n) || tag != "tri" || (header >> extra))
    throw fail("expected 'tri <n>'");
  if (n <= 0 || n > 100000) throw fail("tetrahedron count out of range");

  GluingTable table(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) {
    ++line_no;
    if (!std::getline(in, line)) throw fail("missing tetrahedron line");
    std::istringstream row(line);
    for (int f = 0; f < 4; ++f) {
      std::string token;
      if (!(row >> token)) throw fail("expected 4 gluing tokens");
      const auto colon = token.find(':');
      if (colon == std::string::npos || colon == 0 || token.size() != colon + 5)
        throw fail("malformed token '" + token + "'");
      int target = 0;
      for (size_t i = 0; i < colon; ++i) {
        if (token[i] < '0' || token[i] > '9') throw fail("malformed token '" + token + "'");
        target = target * 10 + (token[i] - '0');
        if (target > n) throw fail("tetrahedron index out of range in '" + token + "'");
      }
      std::array<int, 4> img{};
      for (int i = 0; i < 4; ++i) {
        char c = token[colon + 1 + i];
        if (c < '0' || c > '3') throw fail("bad vertex map in '" + token + "'");
        img[i] = c - '0';
      }
      Perm4 perm(img[0], img[1], img[2], img[3]);
      if (!perm.is_valid()) throw fail("vertex map is not a permutation in '" + token + "'");
      if (target >= n) throw fail("tetrahedron index out of range in '" + token + "'");
      table[t][f] = Slot{target, perm};
    }
    std::string extra_token;
    if (row >> extra_token) throw fail("unexpected token '" + extra_token + "'");
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw fail("trailing content");
  }
  return Triangulation::from_table(std::move(table));
}

Triangulation read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

void write_file(const Triangulation& tri, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << to_text(tri);
}

}  // namespace horocanon
