#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "horocanon/cusp.hpp"
#include "horocanon/hyperbolic.hpp"
#include "horocanon/triangulation.hpp"

namespace horocanon {

/// One equation  sum_j a_j log z_j + b_j log z'_j + c_j log z''_j = target.
struct EquationRow {
  enum class Kind { Edge, Cusp };
  Kind kind = Kind::Edge;
  int source = 0;  // edge class, or 2 * cusp + generator
  std::vector<std::array<int, 3>> exponents;
  Complex target;
};

/// Edge equations (target 2 pi i) followed by two completeness equations per
/// cusp (target 0), all in the oriented labelling `tri`.
struct GluingEquationSystem {
  Triangulation tri;
  std::vector<EquationRow> rows;
  std::vector<EdgeClass> edges;
  std::vector<std::array<CuspCurve, 2>> cusp_curves;
  int n_edges = 0;
  int n_cusps = 0;
};

/// Throws NotCusped unless every vertex link is a torus.
GluingEquationSystem assemble_equations(const Triangulation& tri);

std::vector<Complex> residual(const GluingEquationSystem& system, std::span<const Complex> shapes);

/// Derivatives of the rows with respect to w_j = log z_j.
Eigen::MatrixXcd jacobian(const GluingEquationSystem& system, std::span<const Complex> shapes);

struct ShapeAssignment {
  std::vector<Complex> z;
  double residual = 0.0;  // max-norm of the residual
  int iterations = 0;
  int restarts = 0;
  bool geometric() const;
};

struct SolveOptions {
  double tolerance = tol::kResidual;
  int max_iterations = 100;
  int restarts = 5;
  std::uint64_t seed = 0x5eed;
};

/// Damped Gauss-Newton in log coordinates. Throws NoConvergence, or
/// DegenerateSolution when the iteration runs into flat tetrahedra.
ShapeAssignment solve(const GluingEquationSystem& system,
                      std::optional<std::vector<Complex>> initial = std::nullopt,
                      const SolveOptions& options = {});

/// Sum of tetrahedron volumes; throws DegenerateSolution on negative ones.
double total_volume(std::span<const Complex> shapes);

/// Dihedral angle sums around each edge; throws AngleSumViolation if one
/// differs from 2 pi.
std::vector<double> angle_sum_check(const GluingEquationSystem& system, std::span<const Complex> shapes);

}  // namespace horocanon
