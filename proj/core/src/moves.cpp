#include <algorithm>
#include <map>

#include "horocanon/error.hpp"
#include "horocanon/triangulation.hpp"

namespace horocanon {

namespace {

// Face of a tetrahedron created by a move: either glued to another new
// tetrahedron, or taking over an external face of a removed one.
struct NewFace {
  bool internal = false;
  int partner = 0;   // internal: new tetrahedron index
  Perm4 perm;        // internal: gluing map
  int old_tet = 0;   // external: removed tetrahedron owning the face
  Perm4 label_map;   // external: new labels -> labels of old_tet
};

Triangulation rewrite(const Triangulation& tri, const std::vector<int>& removed,
                      const std::vector<std::array<NewFace, 4>>& fresh, MoveTrace& trace) {
  const int n = tri.size();
  trace.old_to_new.assign(n, -1);
  int kept = 0;
  for (int t = 0; t < n; ++t)
    if (std::find(removed.begin(), removed.end(), t) == removed.end()) trace.old_to_new[t] = kept++;
  trace.first_new = kept;

  GluingTable table(kept + fresh.size());
  for (int t = 0; t < n; ++t) {
    if (trace.old_to_new[t] < 0) continue;
    for (int f = 0; f < 4; ++f) {
      Slot s = tri.table()[t][f];
      s.tet = trace.old_to_new[s.tet];  // -1 placeholders are overwritten below
      table[trace.old_to_new[t]][f] = s;
    }
  }

  // Where each external face of the removed tetrahedra went.
  struct Home {
    int tet;
    int face;
    Perm4 label_map;
  };
  std::map<FaceRef, Home> home;
  for (int k = 0; k < static_cast<int>(fresh.size()); ++k)
    for (int f = 0; f < 4; ++f)
      if (!fresh[k][f].internal)
        home[{fresh[k][f].old_tet, fresh[k][f].label_map[f]}] = {kept + k, f, fresh[k][f].label_map};

  for (int k = 0; k < static_cast<int>(fresh.size()); ++k) {
    for (int f = 0; f < 4; ++f) {
      const NewFace& nf = fresh[k][f];
      if (nf.internal) {
        table[kept + k][f] = Slot{kept + nf.partner, nf.perm};
        continue;
      }
      const int g = nf.label_map[f];
      const Slot& old = tri.table()[nf.old_tet][g];
      const Perm4 out = old.perm * nf.label_map;
      if (trace.old_to_new[old.tet] < 0) {
        const Home& h = home.at({old.tet, old.perm[g]});
        table[kept + k][f] = Slot{h.tet, h.label_map.inverse() * out};
      } else {
        table[kept + k][f] = Slot{trace.old_to_new[old.tet], out};
        table[trace.old_to_new[old.tet]][old.perm[g]] = Slot{kept + k, out.inverse()};
      }
    }
  }
  return Triangulation::from_table(std::move(table));
}

}  // namespace

Triangulation move_2_3(const Triangulation& tri, FaceRef face, MoveTrace& trace) {
  const int t = face.tet;
  const int f = face.face;
  const int u = tri.neighbor(t, f);
  if (u == t)
    throw Error(ErrorCode::SelfAdjacentFace, "face " + std::to_string(f) + " of tetrahedron " +
                                                 std::to_string(t) + " is glued to its own tetrahedron");
  const Perm4& p = tri.gluing(t, f);
  std::array<int, 3> e{};
  for (int v = 0, k = 0; v < 4; ++v)
    if (v != f) e[k++] = v;

  // New tetrahedron k has vertices (apex of t, apex of u, e[k+1], e[k+2]).
  std::vector<std::array<NewFace, 4>> fresh(3);
  for (int k = 0; k < 3; ++k) {
    const int e0 = e[k], e1 = e[(k + 1) % 3], e2 = e[(k + 2) % 3];
    NewFace toward_t;
    toward_t.old_tet = t;
    toward_t.label_map = Perm4(f, e0, e1, e2);
    NewFace toward_u;
    toward_u.old_tet = u;
    toward_u.label_map = Perm4(p[e0], p[f], p[e1], p[e2]);
    fresh[k][0] = toward_u;
    fresh[k][1] = toward_t;
    fresh[k][2] = NewFace{true, (k + 1) % 3, Perm4(0, 1, 3, 2), 0, {}};
    fresh[k][3] = NewFace{true, (k + 2) % 3, Perm4(0, 1, 3, 2), 0, {}};
  }
  return rewrite(tri, {t, u}, fresh, trace);
}

Triangulation move_2_3(const Triangulation& tri, FaceRef face) {
  MoveTrace trace;
  return move_2_3(tri, face, trace);
}

Triangulation move_3_2(const Triangulation& tri, const EdgeClass& edge, MoveTrace& trace) {
  if (edge.valence() != 3 || edge.reversed)
    throw Error(ErrorCode::BadValence, "edge has valence " + std::to_string(edge.valence()) +
                                           ", the 3-to-2 move needs 3");
  const auto& m = edge.members;
  if (m[0].tet == m[1].tet || m[1].tet == m[2].tet || m[0].tet == m[2].tet)
    throw Error(ErrorCode::RepeatedTetrahedron, "a tetrahedron appears twice around the edge");
  if (tri.size() - 1 < 2)
    throw Error(ErrorCode::TooSmall, "the result would have fewer than two tetrahedra");

  // Top (0) is (A, E0, E1, E2), bottom (1) is (B, E0, E1, E2), where member
  // k spans A, B, E_k = d_k and E_{k+2} = c_k.
  std::vector<std::array<NewFace, 4>> fresh(2);
  fresh[0][0] = NewFace{true, 1, Perm4(), 0, {}};
  fresh[1][0] = NewFace{true, 0, Perm4(), 0, {}};
  for (int k = 0; k < 3; ++k) {
    const auto [a, b, c, d] = m[k].verts;
    std::array<int, 4> top{}, bottom{};
    top[0] = a;
    bottom[0] = b;
    top[1 + k] = bottom[1 + k] = d;
    top[1 + (k + 2) % 3] = bottom[1 + (k + 2) % 3] = c;
    top[1 + (k + 1) % 3] = b;
    bottom[1 + (k + 1) % 3] = a;
    const int face = 1 + (k + 1) % 3;
    fresh[0][face].old_tet = m[k].tet;
    fresh[0][face].label_map = Perm4(top[0], top[1], top[2], top[3]);
    fresh[1][face].old_tet = m[k].tet;
    fresh[1][face].label_map = Perm4(bottom[0], bottom[1], bottom[2], bottom[3]);
  }
  return rewrite(tri, {m[0].tet, m[1].tet, m[2].tet}, fresh, trace);
}

Triangulation move_3_2(const Triangulation& tri, const EdgeClass& edge) {
  MoveTrace trace;
  return move_3_2(tri, edge, trace);
}

Triangulation move_1_4(const Triangulation& tri, int tet) {
  // New tetrahedron k replaces vertex k of `tet` by the new interior vertex.
  std::vector<std::array<NewFace, 4>> fresh(4);
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j) {
      if (j == k) {
        fresh[k][j].old_tet = tet;
        fresh[k][j].label_map = Perm4();
      } else {
        fresh[k][j] = NewFace{true, j, Perm4::swap(j, k), 0, {}};
      }
    }
  MoveTrace trace;
  return rewrite(tri, {tet}, fresh, trace);
}

}  // namespace horocanon
