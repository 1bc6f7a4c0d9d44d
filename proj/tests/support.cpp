#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace testing {

std::vector<long> invariant_factors(std::vector<std::vector<long>> m) {
  std::vector<long> out;
  if (m.empty()) return out;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest nonzero entry in the remaining block
    int pr = -1, pc = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr < 0 || std::abs(m[i][j]) < std::abs(m[pr][pc]))) pr = i, pc = j;
    if (pr < 0) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      long q = m[i][t] / m[t][t];
      for (int j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
      if (m[i][t] != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      long q = m[t][j] / m[t][t];
      for (int i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
      if (m[t][j] != 0) clean = false;
    }
    if (!clean) continue;
    // the pivot must divide the rest of the block
    bool divides = true;
    for (int i = t + 1; i < rows && divides; ++i)
      for (int j = t + 1; j < cols; ++j)
        if (m[i][j] % m[t][t] != 0) {
          for (int k = t; k < cols; ++k) m[t][k] += m[i][k];
          divides = false;
          break;
        }
    if (!divides) continue;
    out.push_back(std::abs(m[t][t]));
    ++t;
  }
  return out;
}

Homology first_homology(const Triangulation& tri) {
  // dual edges: one per glued pair, oriented from the smaller face reference
  std::map<FaceRef, int> dual_edge;
  std::vector<std::pair<int, int>> ends;
  for (int t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      FaceRef a{t, f};
      FaceRef b = tri.partner(a);
      if (b < a) continue;
      dual_edge[a] = static_cast<int>(ends.size());
      ends.emplace_back(a.tet, b.tet);
    }
  int n_edges = static_cast<int>(ends.size());
  std::vector<std::vector<long>> d1(tri.size(), std::vector<long>(n_edges, 0));
  for (int e = 0; e < n_edges; ++e) {
    d1[ends[e].first][e] -= 1;
    d1[ends[e].second][e] += 1;
  }
  auto classes = edge_classes(tri);
  std::vector<std::vector<long>> d2(n_edges, std::vector<long>(classes.size(), 0));
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (const auto& m : classes[c].members) {
      FaceRef out{m.tet, m.verts[2]};
      FaceRef in = tri.partner(out);
      if (out < in) d2[dual_edge[out]][c] += 1;
      else d2[dual_edge[in]][c] -= 1;
    }
  }
  int rank_d1 = static_cast<int>(invariant_factors(d1).size());
  auto f2 = invariant_factors(d2);
  Homology h;
  h.rank = n_edges - rank_d1 - static_cast<int>(f2.size());
  for (long d : f2)
    if (d > 1) h.torsion.push_back(d);
  std::sort(h.torsion.begin(), h.torsion.end());
  return h;
}

double lobachevsky_quadrature(double theta) {
  if (theta == 0.0) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [](double t) { return std::log(std::abs(2.0 * std::sin(t))); };
  // split at the interior zeros of sin so each piece has endpoint singularities only
  double lo = std::min(0.0, theta), hi = std::max(0.0, theta);
  std::vector<double> cuts{lo};
  for (double k = std::ceil(lo / std::numbers::pi); k * std::numbers::pi < hi; ++k)
    if (k * std::numbers::pi > lo) cuts.push_back(k * std::numbers::pi);
  cuts.push_back(hi);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += integrator.integrate(f, cuts[i], cuts[i + 1]);
  return theta > 0 ? -sum : sum;
}

const std::vector<Candidate>& candidates(int n, EnumerationTarget target) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<Candidate>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(n, static_cast<int>(target));
  auto it = cache.find(key);
  if (it == cache.end()) {
    EnumerationFilter filter;
    filter.target = target;
    it = cache.emplace(key, enumerate_pairings(n, filter)).first;
  }
  return it->second;
}

const std::vector<PipelineResult>& pipeline(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<PipelineResult>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<PipelineResult> results;
    for (const auto& c : candidates(n)) results.push_back(run_pipeline(c.triangulation));
    it = cache.emplace(n, std::move(results)).first;
  }
  return it->second;
}

namespace {

const Triangulation& n2_with_homology(const Homology& want) {
  const auto& all = candidates(2);
  const auto& results = pipeline(2);
  for (std::size_t i = 0; i < all.size(); ++i)
    if (results[i].status == Status::Geometric && first_homology(all[i].triangulation) == want)
      return all[i].triangulation;
  throw std::runtime_error("no n=2 candidate with the requested homology");
}

}  // namespace

const Triangulation& figure_eight() {
  static const Triangulation& t = n2_with_homology({1, {}});
  return t;
}

const Triangulation& sibling() {
  static const Triangulation& t = n2_with_homology({1, {5}});
  return t;
}

Triangulation shuffled(const Triangulation& tri, std::mt19937_64& rng) {
  std::vector<int> tets(tri.size());
  std::iota(tets.begin(), tets.end(), 0);
  std::shuffle(tets.begin(), tets.end(), rng);
  std::vector<Perm4> perms;
  std::uniform_int_distribution<int> pick(0, 23);
  for (int t = 0; t < tri.size(); ++t) perms.push_back(Perm4::from_index(pick(rng)));
  return tri.relabeled(tets, perms);
}

std::optional<Triangulation> with_edge_valence(int n, int valence) {
  for (const auto& c : candidates(n))
    for (const auto& e : edge_classes(c.triangulation))
      if (e.valence() == valence) return c.triangulation;
  return std::nullopt;
}

std::string test_data_dir() {
  auto dir = std::filesystem::temp_directory_path() / "horocanon-tests";
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace testing
