#pragma once

#include <array>
#include <span>
#include <vector>

#include "horocanon/hyperbolic.hpp"
#include "horocanon/triangulation.hpp"

namespace horocanon {

// The cross-section of a cusp is triangulated by the corners of the
// tetrahedra: link triangle (tet, v) has corners labelled by the other three
// vertices of the tetrahedron, and its side opposite corner f lies in face f.
// Corners run counter-clockwise as (a, b, c) whenever (v, a, b, c) is an even
// permutation; the corner a carries the modulus of the edge va.
//
// All functions here expect an oriented labelling (Triangulation::oriented()).

/// A normal curve on a cusp cross-section crosses link triangle (tet, vertex)
/// entering through side `in` and leaving through side `out`; the corner it
/// turns around is the label that is none of vertex, in, out.
struct CuspStep {
  int tet = 0;
  int vertex = 0;
  int in = 0;
  int out = 0;
  int pivot() const { return 6 - vertex - in - out; }
  /// The pivot corner lies to the left of the curve.
  bool pivot_on_left() const { return Perm4(vertex, out, in, pivot()).sign() > 0; }
};

struct CuspCurve {
  enum class Tag { Lambda, Mu, Other };
  int cusp = 0;
  Tag tag = Tag::Other;
  std::vector<CuspStep> steps;

  CuspCurve reversed() const;
};

/// Throws OpenCurve unless consecutive steps are glued to each other.
void check_closed(const Triangulation& tri, const CuspCurve& curve);

/// Homology generators (lambda, mu) of the cusp from a spanning tree of the
/// dual graph and the two edges left over by a tree-cotree decomposition.
std::array<CuspCurve, 2> cusp_generators(const Triangulation& tri, int cusp);

/// Small loop around the end at `vertex` of edge {vertex, other} of `tet`,
/// turning counter-clockwise.
CuspCurve vertex_loop(const Triangulation& tri, int tet, int vertex, int other);

/// Algebraic intersection number of two closed curves on the same cusp.
int intersection_number(const Triangulation& tri, const CuspCurve& a, const CuspCurve& b);

/// Per-tetrahedron signed counts of opposite-edge pairs turned around:
/// +1 for a pivot on the left, -1 on the right.
std::vector<std::array<int, 3>> curve_exponents(const Triangulation& tri, const CuspCurve& curve);

/// Log of the dilation: sum of log-moduli of left pivots minus right ones.
Complex holonomy_log(const Triangulation& tri, std::span<const Complex> shapes, const CuspCurve& curve);

// ---------------------------------------------------------------------------

/// Similarity torus at one cusp, developed along a spanning tree.
struct CuspCrossSection {
  int cusp = 0;
  std::vector<std::array<int, 2>> triangles;  // (tet, vertex)
  std::vector<std::array<Complex, 4>> corner_log;  // log-modulus at each corner label
  std::vector<double> circumradius;  // relative scale from the tree development
  double area = 0.0;
  int euler_characteristic = 0;
  std::array<CuspCurve, 2> generators;
  /// Largest relative mismatch of side lengths across non-tree sides.
  double scale_mismatch = 0.0;

  int triangle_index(int tet, int vertex) const;
  double angle(int tri, int corner) const { return corner_log[tri][corner].imag(); }
};

/// Throws NotConsistent if some edge equation is not satisfied.
std::vector<CuspCrossSection> build_cross_sections(const Triangulation& tri, std::span<const Complex> shapes);

std::array<CuspCurve, 2> cusp_generators(const CuspCrossSection& section);

Complex holonomy_dilation(const CuspCrossSection& section, const CuspCurve& curve);

/// Circumradius r and signed distance d = -log r for every link triangle.
struct CuspRadii {
  std::vector<std::array<double, 4>> r;
  std::vector<std::array<double, 4>> d;
};

/// Scales every cusp to volume v (cross-section area 2v at height 1).
/// Throws IncompleteStructure if a generator dilation differs from 1.
CuspRadii normalize_equal_volume(const std::vector<CuspCrossSection>& sections, int n_tetrahedra,
                                 double volume = 0.5);

}  // namespace horocanon
