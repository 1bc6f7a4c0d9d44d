#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "horocanon/permutation.hpp"

namespace horocanon {

struct FaceRef {
  int tet = 0;
  int face = 0;
  friend constexpr bool operator==(const FaceRef&, const FaceRef&) = default;
  friend constexpr auto operator<=>(const FaceRef&, const FaceRef&) = default;
};

/// Face `source.face` of tetrahedron `source.tet` is glued to face
/// `target.face` of `target.tet`; vertex i of the source tetrahedron goes to
/// vertex vertex_map[i] of the target.
struct FaceGluing {
  FaceRef source;
  FaceRef target;
  Perm4 vertex_map;
};

/// Gluing data for a single face, as stored per tetrahedron.
struct Slot {
  int tet = -1;
  Perm4 perm;
};

using GluingTable = std::vector<std::array<Slot, 4>>;

/// A validated, connected, orientable triangulation: n tetrahedra with all
/// 4n faces paired. Face f of a tetrahedron is the face opposite vertex f.
/// Immutable after construction.
class Triangulation {
 public:
  /// Validates involution, connectivity and orientability.
  static Triangulation build(int n, std::span<const FaceGluing> gluings);
  static Triangulation from_table(GluingTable table);

  int size() const { return static_cast<int>(table_.size()); }
  int neighbor(int tet, int face) const { return table_[tet][face].tet; }
  const Perm4& gluing(int tet, int face) const { return table_[tet][face].perm; }
  FaceRef partner(FaceRef f) const {
    return {table_[f.tet][f.face].tet, table_[f.tet][f.face].perm[f.face]};
  }
  const GluingTable& table() const { return table_; }

  /// +1 or -1; a gluing between tetrahedra of equal sign is an odd permutation.
  int orientation(int tet) const { return sign_[tet]; }

  /// True when every tetrahedron's labelling is positively oriented.
  bool is_oriented() const;

  /// Copy relabelled so that every tetrahedron has orientation +1.
  Triangulation oriented() const;

  /// One-tetrahedron inputs are accepted but the move calculus excludes them.
  bool single_tetrahedron() const { return size() == 1; }

  std::vector<FaceGluing> gluings() const;

  /// Relabel: tetrahedron t becomes tet_map[t], its vertex i becomes vertex_maps[t][i].
  Triangulation relabeled(std::span<const int> tet_map, std::span<const Perm4> vertex_maps) const;

  friend bool operator==(const Triangulation& a, const Triangulation& b);

 private:
  explicit Triangulation(GluingTable table);

  GluingTable table_;
  std::vector<int> sign_;
};

// ---------------------------------------------------------------------------
// Derived incidence data

/// One step of the cyclic walk around an edge: the edge is {a, b} of `tet`,
/// the walk leaves through the face opposite c and entered through the face
/// opposite d.
struct EdgeMember {
  int tet = 0;
  std::array<int, 4> verts{};  // a, b, c, d
  int edge() const { return edge_index(verts[0], verts[1]); }
};

struct EdgeClass {
  std::vector<EdgeMember> members;
  /// The edge is identified with itself in reverse (non-manifold).
  bool reversed = false;
  int valence() const { return static_cast<int>(members.size()); }
};

std::vector<EdgeClass> edge_classes(const Triangulation& tri);

/// Index of the edge class containing edge e of each tetrahedron.
std::vector<std::array<int, 6>> edge_class_index(const Triangulation& tri,
                                                 const std::vector<EdgeClass>& classes);

struct VertexLink {
  int id = 0;
  /// (tetrahedron, vertex) corners, one link triangle each.
  std::vector<std::array<int, 2>> triangles;
  int n_vertices = 0;
  int n_edges = 0;
  int euler_characteristic = 0;
  bool orientable = true;
  bool is_sphere() const { return euler_characteristic == 2; }
  bool is_torus() const { return euler_characteristic == 0 && orientable; }
};

std::vector<VertexLink> vertex_links(const Triangulation& tri);

/// Vertex class of each (tetrahedron, vertex).
std::vector<std::array<int, 4>> vertex_class_index(const Triangulation& tri);

enum class LinkType { Closed, Cusped, Other };
LinkType classify_links(const Triangulation& tri);
std::string_view to_string(LinkType type);

// ---------------------------------------------------------------------------
// Moves

/// 2-to-3 move across the face; the new edge is edge 01 of the last three
/// tetrahedra of the result.
Triangulation move_2_3(const Triangulation& tri, FaceRef face);

/// 3-to-2 move removing a valence-3 edge surrounded by distinct tetrahedra.
Triangulation move_3_2(const Triangulation& tri, const EdgeClass& edge);

/// 1-to-4 move: cones the tetrahedron off from a new interior vertex.
Triangulation move_1_4(const Triangulation& tri, int tet);

/// Tetrahedra removed and appended by the moves above, for callers that
/// need to carry per-tetrahedron data across a move.
struct MoveTrace {
  std::vector<int> old_to_new;  // -1 for removed tetrahedra
  int first_new = 0;
};
Triangulation move_2_3(const Triangulation& tri, FaceRef face, MoveTrace& trace);
Triangulation move_3_2(const Triangulation& tri, const EdgeClass& edge, MoveTrace& trace);

// ---------------------------------------------------------------------------
// Isomorphism signatures

/// Canonical string: lexicographically minimal breadth-first encoding over
/// every starting tetrahedron and every labelling of it.
std::string iso_signature(const Triangulation& tri);

/// Rebuilds a triangulation from its signature (in canonical labelling).
Triangulation from_iso_signature(std::string_view sig);

bool are_isomorphic(const Triangulation& a, const Triangulation& b);

// ---------------------------------------------------------------------------
// Text format
//
//   tri <n>
//   g:abcd g:abcd g:abcd g:abcd      (one line per tetrahedron)

std::string to_text(const Triangulation& tri);
Triangulation parse_text(std::string_view text);
Triangulation read_file(const std::string& path);
void write_file(const Triangulation& tri, const std::string& path);

}  // namespace horocanon
