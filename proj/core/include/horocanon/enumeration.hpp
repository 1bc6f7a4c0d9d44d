#pragma once

#include <string>
#include <vector>

#include "horocanon/triangulation.hpp"

namespace horocanon {

enum class EnumerationTarget { Closed, Cusped, Any };

struct EnumerationFilter {
  EnumerationTarget target = EnumerationTarget::Cusped;
  int max_n = 4;
  bool require_connected = true;  // disconnected pairings are never generated

  bool accepts(const Triangulation& tri) const;
};

struct Candidate {
  std::string signature;
  Triangulation triangulation;  // in the canonical labelling of `signature`
};

struct SearchStats {
  long nodes = 0;
  long leaves = 0;
};

struct SearchOptions {
  /// Discard branches whose partial encoding from another start is already
  /// smaller than the branch's own encoding.
  bool prune = true;
  int threads = 1;
};

/// Backtracking over partial gluing tables in breadth-first normal form:
/// tetrahedron 0 is fixed, new tetrahedra are only introduced by gluing them
/// (identically labelled) to the current component. Returns every complete
/// table reached, deduplicated by signature and sorted.
std::vector<Candidate> symmetry_reduced_search(int n, const EnumerationFilter& filter,
                                               const SearchOptions& options = {},
                                               SearchStats* stats = nullptr);

/// Every connected orientable n-tetrahedron triangulation passing the
/// filter, once per isomorphism class, sorted by signature.
std::vector<Candidate> enumerate_pairings(int n, const EnumerationFilter& filter, int threads = 1);

/// Unpruned reference: every perfect matching of the 4n faces with every
/// face map, validated and deduplicated afterwards. Only practical for n <= 2.
std::vector<Candidate> enumerate_brute_force(int n, const EnumerationFilter& filter,
                                             SearchStats* stats = nullptr);

/// Writes one triangulation file per candidate, named by its signature.
void write_candidates(const std::vector<Candidate>& candidates, const std::string& directory);

}  // namespace horocanon
