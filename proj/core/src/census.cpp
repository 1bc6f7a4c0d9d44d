#include "horocanon/census.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "horocanon/error.hpp"

namespace horocanon {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Geometric: return "GEOMETRIC";
    case Status::Degenerate: return "DEGENERATE";
    case Status::Undecided: return "UNDECIDED";
    case Status::Stuck: return "STUCK";
  }
  return "?";
}

std::string_view to_string(Comparison c) {
  switch (c) {
    case Comparison::Equal: return "EQUAL";
    case Comparison::Distinct: return "DISTINCT";
    case Comparison::Undecided: return "UNDECIDED";
  }
  return "?";
}

PipelineResult run_pipeline(const Triangulation& tri, const PipelineOptions& options) {
  PipelineResult r;
  r.iso_signature = iso_signature(tri);
  r.n_cusps = static_cast<int>(vertex_links(tri).size());
  std::optional<GluingEquationSystem> system;
  try {
    system = assemble_equations(tri);
    r.solution = solve(*system, std::nullopt, options.solver);
    r.shapes = r.solution.z;
    r.volume = total_volume(r.shapes);
  } catch (const Error& e) {
    r.status = e.code() == ErrorCode::DegenerateSolution ? Status::Degenerate : Status::Undecided;
    r.detail = e.what();
    return r;
  }
  try {
    r.decomposition = canonize(system->tri, r.shapes, options.canonize);
    r.canonical_signature = r.decomposition->signature;
    r.status = Status::Geometric;
  } catch (const Error& e) {
    r.status = e.code() == ErrorCode::Stuck ? Status::Stuck : Status::Undecided;
    r.detail = e.what();
  }
  return r;
}

Comparison manifolds_equal(const Triangulation& a, const Triangulation& b, const PipelineOptions& options) {
  PipelineResult ra = run_pipeline(a, options);
  PipelineResult rb = run_pipeline(b, options);
  if (ra.status != Status::Geometric || rb.status != Status::Geometric) return Comparison::Undecided;
  return ra.canonical_signature == rb.canonical_signature ? Comparison::Equal : Comparison::Distinct;
}

void parallel_for(int count, int threads, const std::function<void(int)>& work) {
  const int workers = std::max(1, std::min(threads, count));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<CensusRecord> collapse_records(std::vector<PipelineResult> results) {
  std::sort(results.begin(), results.end(),
            [](const PipelineResult& x, const PipelineResult& y) { return x.iso_signature < y.iso_signature; });
  std::map<std::string, CensusRecord> manifolds;
  std::vector<CensusRecord> records;
  for (const PipelineResult& r : results) {
    if (r.status != Status::Geometric) {
      records.push_back({"-", {r.iso_signature}, r.status, r.n_cusps, 0.0});
      continue;
    }
    auto [it, fresh] = manifolds.try_emplace(r.canonical_signature);
    if (fresh) it->second = {r.canonical_signature, {}, Status::Geometric, r.n_cusps, r.volume};
    it->second.iso_signatures.push_back(r.iso_signature);
  }
  for (auto& [sig, rec] : manifolds) records.push_back(std::move(rec));
  std::sort(records.begin(), records.end(), [](const CensusRecord& x, const CensusRecord& y) {
    return std::tie(x.canonical_signature, x.iso_signatures) < std::tie(y.canonical_signature, y.iso_signatures);
  });
  return records;
}

std::vector<CensusRecord> run_census(int n, int threads, const EnumerationFilter& filter,
                                     const PipelineOptions& options) {
  EnumerationFilter cusped = filter;
  cusped.target = EnumerationTarget::Cusped;
  auto candidates = enumerate_pairings(n, cusped, threads);
  std::vector<PipelineResult> results(candidates.size());
  parallel_for(static_cast<int>(candidates.size()), threads,
               [&](int i) { results[i] = run_pipeline(candidates[i].triangulation, options); });
  return collapse_records(std::move(results));
}

std::string format_database(int n, const std::vector<CensusRecord>& records) {
  std::string out = "# horocanon census v1 n=" + std::to_string(n) + "\n";
  for (const CensusRecord& r : records) {
    std::string isos;
    for (const auto& s : r.iso_signatures) isos += (isos.empty() ? "" : ",") + s;
    char volume[64] = "-";
    if (r.status == Status::Geometric) std::snprintf(volume, sizeof volume, "%.10f", r.volume);
    out += r.canonical_signature + "\t" + isos + "\t" + std::string(to_string(r.status)) + "\t" +
           std::to_string(r.n_cusps) + "\t" + volume + "\n";
  }
  return out;
}

}  // namespace horocanon
