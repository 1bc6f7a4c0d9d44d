#include <map>

#include <benchmark/benchmark.h>

#include "horocanon/canonical.hpp"
#include "horocanon/census.hpp"
#include "horocanon/enumeration.hpp"
#include "horocanon/error.hpp"
#include "horocanon/gluing.hpp"
#include "horocanon/hyperbolic.hpp"

namespace hc = horocanon;

namespace {

// Geometric cusped candidates with n tetrahedra, solved once.
struct Solved {
  hc::Triangulation tri;
  std::vector<hc::Complex> z;
};

const std::vector<Solved>& solved(int n) {
  static std::map<int, std::vector<Solved>> cache;
  auto [it, fresh] = cache.try_emplace(n);
  if (fresh)
    for (const auto& c : hc::enumerate_pairings(n, {})) {
      try {
        auto sys = hc::assemble_equations(c.triangulation);
        auto sol = hc::solve(sys);
        if (sol.geometric()) it->second.push_back({sys.tri, sol.z});
      } catch (const hc::Error&) {
      }
    }
  return it->second;
}

void BM_Lobachevsky(benchmark::State& state) {
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hc::lobachevsky(t));
    t = t < 3.0 ? t + 0.01 : 0.1;
  }
}
BENCHMARK(BM_Lobachevsky);

void BM_Enumerate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hc::enumerate_pairings(n, {}));
}
BENCHMARK(BM_Enumerate)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_IsoSignature(benchmark::State& state) {
  auto list = hc::enumerate_pairings(4, {});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hc::iso_signature(list[i].triangulation));
    i = (i + 1) % list.size();
  }
}
BENCHMARK(BM_IsoSignature);

void BM_Solve(benchmark::State& state) {
  const auto& list = solved(static_cast<int>(state.range(0)));
  std::vector<hc::GluingEquationSystem> systems;
  for (const auto& s : list) systems.push_back(hc::assemble_equations(s.tri));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hc::solve(systems[i]));
    i = (i + 1) % systems.size();
  }
}
BENCHMARK(BM_Solve)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_FaceVerdicts(benchmark::State& state) {
  const auto& list = solved(4);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& s = list[i];
    auto radii = hc::equal_volume_radii(s.tri, s.z);
    benchmark::DoNotOptimize(hc::face_verdicts(s.tri, s.z, radii));
    i = (i + 1) % list.size();
  }
}
BENCHMARK(BM_FaceVerdicts)->Unit(benchmark::kMicrosecond);

void BM_Canonize(benchmark::State& state) {
  const auto& list = solved(3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hc::canonize(list[i].tri, list[i].z));
    i = (i + 1) % list.size();
  }
}
BENCHMARK(BM_Canonize)->Unit(benchmark::kMicrosecond);

void BM_Census(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hc::run_census(n, 1));
}
BENCHMARK(BM_Census)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
