#pragma once

#include <random>
#include <string>
#include <vector>

#include "horocanon/census.hpp"
#include "horocanon/enumeration.hpp"
#include "horocanon/triangulation.hpp"

namespace testing {

using namespace horocanon;

/// First homology as free rank plus torsion coefficients (each > 1).
struct Homology {
  int rank = 0;
  std::vector<long> torsion;
  bool operator==(const Homology&) const = default;
};

/// H1 of the manifold, from the dual spine: dual vertices are tetrahedra,
/// dual edges glued face pairs, dual 2-cells edge classes.
Homology first_homology(const Triangulation& tri);

/// Invariant factors of an integer matrix (row-major), nonzero ones only.
std::vector<long> invariant_factors(std::vector<std::vector<long>> m);

/// -integral_0^theta log|2 sin t| dt by tanh-sinh quadrature.
double lobachevsky_quadrature(double theta);

const std::vector<Candidate>& candidates(int n, EnumerationTarget target = EnumerationTarget::Cusped);

/// The geometric n = 2 manifolds, told apart by homology: the figure-eight
/// complement has H1 = Z, its sibling Z + Z/5.
const Triangulation& figure_eight();
const Triangulation& sibling();

/// Pipeline results for every cusped candidate with n tetrahedra, cached.
const std::vector<PipelineResult>& pipeline(int n);

/// Random relabelling of tetrahedra and vertices.
Triangulation shuffled(const Triangulation& tri, std::mt19937_64& rng);

/// First cusped candidate with n tetrahedra having an edge of the given valence.
std::optional<Triangulation> with_edge_valence(int n, int valence);

std::string test_data_dir();

}  // namespace testing
