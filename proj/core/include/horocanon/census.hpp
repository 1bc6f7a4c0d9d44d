#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "horocanon/canonical.hpp"
#include "horocanon/enumeration.hpp"
#include "horocanon/gluing.hpp"
#include "horocanon/triangulation.hpp"

namespace horocanon {

enum class Status { Geometric, Degenerate, Undecided, Stuck };
std::string_view to_string(Status s);

/// Everything the pipeline learned about one triangulation.
struct PipelineResult {
  Status status = Status::Undecided;
  std::string iso_signature;
  int n_cusps = 0;
  double volume = 0.0;
  std::string canonical_signature;
  std::string detail;  // failure reason
  std::vector<Complex> shapes;
  ShapeAssignment solution;
  std::optional<CanonicalDecomposition> decomposition;
};

struct PipelineOptions {
  SolveOptions solver;
  CanonizeOptions canonize;
};

/// Solve, then canonize. Never throws for mathematical failures; they are
/// reported through `status`.
PipelineResult run_pipeline(const Triangulation& tri, const PipelineOptions& options = {});

enum class Comparison { Equal, Distinct, Undecided };
std::string_view to_string(Comparison c);

Comparison manifolds_equal(const Triangulation& a, const Triangulation& b, const PipelineOptions& options = {});

struct CensusRecord {
  std::string canonical_signature;  // "-" unless geometric
  std::vector<std::string> iso_signatures;
  Status status = Status::Undecided;
  int n_cusps = 0;
  double volume = 0.0;
};

/// Runs the pipeline over every cusped candidate with n tetrahedra and
/// collapses triangulations of the same manifold into one record.
std::vector<CensusRecord> run_census(int n, int threads, const EnumerationFilter& filter = {},
                                     const PipelineOptions& options = {});

std::vector<CensusRecord> collapse_records(std::vector<PipelineResult> results);

std::string format_database(int n, const std::vector<CensusRecord>& records);

/// Applies `work` to 0..count-1 on `threads` workers pulling indices from a
/// shared counter.
void parallel_for(int count, int threads, const std::function<void(int)>& work);

}  // namespace horocanon
