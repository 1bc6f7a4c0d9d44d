#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "horocanon/cusp.hpp"
#include "horocanon/gluing.hpp"
#include "horocanon/hyperbolic.hpp"
#include "horocanon/triangulation.hpp"

namespace horocanon {

struct TiltVector {
  int tet = 0;
  std::array<double, 4> t{};  // t[i]: tilt of the face opposite vertex i
};

/// Dihedral angles indexed by edge_index(i, j).
using DihedralAngles = std::array<double, 6>;

DihedralAngles dihedral_angles(Complex z);

/// t = M(theta) r with 1 on the diagonal and -cos(theta_ij) off it.
/// Throws FlatTetrahedron if an angle is outside (0, pi).
TiltVector tilts(int tet, const DihedralAngles& theta, const std::array<double, 4>& r);

enum class Verdict { Convex, Transparent, Concave };
std::string_view to_string(Verdict v);
Verdict verdict_of(double tilt_sum);

struct FaceVerdict {
  FaceRef face;   // the smaller side of the glued pair
  FaceRef other;
  double tilt_sum = 0.0;
  Verdict verdict = Verdict::Convex;
};

/// One verdict per glued pair of faces, ordered by `face`.
std::vector<FaceVerdict> face_verdicts(const Triangulation& tri, std::span<const Complex> shapes,
                                       const CuspRadii& radii);

/// Radii for an equal-volume normalization with common cusp volume v.
CuspRadii equal_volume_radii(const Triangulation& tri, std::span<const Complex> shapes, double volume = 0.5);

// ---------------------------------------------------------------------------
// Light-cone lift and the convex hull oracle

struct LightConeLift {
  std::vector<std::array<MinkowskiVector, 4>> y;  // developed, per (tetrahedron, vertex)
  std::vector<int> parent_face;                   // face crossed to reach the tetrahedron, -1 at the root
};

/// Light-cone vectors of one tetrahedron placed with vertices (inf, 0, 1, z).
std::array<MinkowskiVector, 4> place_tetrahedron(Complex z, const std::array<double, 4>& r);

/// Throws DevelopingMismatch if the horoballs do not agree across a face.
LightConeLift lift_to_lightcone(const Triangulation& tri, std::span<const Complex> shapes, const CuspRadii& radii);

struct HullVerdict {
  Verdict verdict = Verdict::Convex;
  double offset = 0.0;  // <p1, v2> + 1 normalized by <m1, v2>
};

/// Convexity of the dihedral angle along the straight face spanned by `face`
/// between the simplices with apexes `apex1` and `apex2`, in any R^{1,d}.
/// Throws DegenerateFace for dependent face vertices or vectors off the
/// future light-cone.
HullVerdict hull_verdict(std::span<const Eigen::VectorXd> face, const Eigen::VectorXd& apex1,
                         const Eigen::VectorXd& apex2);

/// Develops the neighbour across `face` onto the lifted tetrahedron and
/// tests the straight dihedral angle between them.
HullVerdict hull_oracle(const Triangulation& tri, const LightConeLift& lift, FaceRef face);

// ---------------------------------------------------------------------------
// Flip loop and canonical cells

struct FlipRecord {
  enum class Kind { TwoThree, ThreeTwo };
  Kind kind = Kind::TwoThree;
  FaceRef face;
  double tilt_sum = 0.0;
};

struct CanonicalDecomposition {
  Triangulation tri;
  std::vector<Complex> shapes;
  std::vector<FaceVerdict> verdicts;
  std::vector<std::array<bool, 4>> transparent;
  std::vector<int> cell;  // cell id of each tetrahedron
  int n_cells = 0;
  std::vector<FlipRecord> flips;
  std::string signature;
};

struct CanonizeOptions {
  int max_iterations = 200;
  int max_restarts = 10;  // random retriangulations tried when no concave face can be flipped
  std::uint64_t seed = 0xca70;
  double volume = 0.5;
  SolveOptions solver;
};

/// Flips concave faces away until every face is convex or transparent.
/// Throws Stuck, IterationCap, or the solver's errors.
CanonicalDecomposition canonize(const Triangulation& tri, std::span<const Complex> shapes,
                                const CanonizeOptions& options = {});

/// Cells of a triangulation with the given transparent faces.
std::vector<int> merge_cells(const Triangulation& tri, const std::vector<std::array<bool, 4>>& transparent,
                             int* n_cells = nullptr);

/// Canonical string of the polyhedral complex left after deleting the
/// transparent faces, independent of labelling and orientation.
std::string decomposition_signature(const Triangulation& tri, const std::vector<std::array<bool, 4>>& transparent);
std::string decomposition_signature(const CanonicalDecomposition& d);

// ---------------------------------------------------------------------------
// Geometric moves

/// A triangulation with a positively oriented shape assignment.
struct ShapedTriangulation {
  Triangulation tri;
  std::vector<Complex> shapes;
};

/// Shapes of the tetrahedra created by a move, read off from the developed
/// vertex positions; empty if some new tetrahedron is not positively oriented.
std::optional<ShapedTriangulation> shaped_move_2_3(const ShapedTriangulation& in, FaceRef face);
std::optional<ShapedTriangulation> shaped_move_3_2(const ShapedTriangulation& in, const EdgeClass& edge);

/// Random walk of geometric 2-3 and 3-2 moves; rejected proposals are skipped.
ShapedTriangulation random_walk(const ShapedTriangulation& start, int steps, std::mt19937_64& rng);

}  // namespace horocanon
