#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "horocanon/canonical.hpp"
#include "horocanon/census.hpp"
#include "horocanon/enumeration.hpp"
#include "horocanon/error.hpp"
#include "horocanon/gluing.hpp"
#include "horocanon/triangulation.hpp"

namespace hc = horocanon;

namespace {

enum Exit { kOk = 0, kDistinct = 1, kUsage = 2, kUnsolved = 3, kStuck = 4, kIterationCap = 5 };

int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

std::string format_complex(hc::Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.16f %+.16fi", z.real(), z.imag());
  return buf;
}

std::string face_name(hc::FaceRef f) { return std::to_string(f.tet) + ":" + std::to_string(f.face); }

// Returns the parsed triangulation, or prints the error and sets `code`.
std::optional<hc::Triangulation> load(const std::string& path, int& code) {
  try {
    return hc::read_file(path);
  } catch (const hc::Error& e) {
    std::cerr << path << ": " << e.what() << "\n";
    code = kUsage;
    return std::nullopt;
  }
}

bool check_ceiling(int n, int ceiling) {
  if (n < 1 || n > ceiling) {
    std::cerr << "error: n must lie in [1, " << ceiling << "], got " << n << "\n";
    return false;
  }
  return true;
}

int cmd_enumerate(int n, int ceiling, hc::EnumerationTarget target, const std::string& out, int threads) {
  if (!check_ceiling(n, ceiling)) return kUsage;
  hc::EnumerationFilter filter;
  filter.target = target;
  filter.max_n = ceiling;
  auto candidates = hc::enumerate_pairings(n, filter, threads);
  if (!out.empty()) hc::write_candidates(candidates, out);
  std::cout << candidates.size() << "\n";
  return kOk;
}

int cmd_solve(const std::string& path, double tol) {
  int code = kOk;
  auto tri = load(path, code);
  if (!tri) return code;
  hc::SolveOptions options;
  options.tolerance = tol;
  try {
    auto system = hc::assemble_equations(*tri);
    auto sol = hc::solve(system, std::nullopt, options);
    std::cout << "status " << hc::to_string(hc::Status::Geometric) << "\n";
    for (std::size_t t = 0; t < sol.z.size(); ++t) std::cout << "z" << t << " " << format_complex(sol.z[t]) << "\n";
    std::printf("residual %.3e\n", sol.residual);
    std::printf("volume %.16f\n", hc::total_volume(sol.z));
    return kOk;
  } catch (const hc::Error& e) {
    auto status = e.code() == hc::ErrorCode::DegenerateSolution ? hc::Status::Degenerate : hc::Status::Undecided;
    std::cout << "status " << hc::to_string(status) << "\n";
    std::cout << "reason " << e.what() << "\n";
    return kUnsolved;
  }
}

int cmd_canonize(const std::string& path) {
  int code = kOk;
  auto tri = load(path, code);
  if (!tri) return code;
  std::optional<hc::GluingEquationSystem> system;
  hc::ShapeAssignment sol;
  try {
    system = hc::assemble_equations(*tri);
    sol = hc::solve(*system);
  } catch (const hc::Error& e) {
    std::cout << "unsolvable " << e.what() << "\n";
    return kUnsolved;
  }
  try {
    auto dec = hc::canonize(system->tri, sol.z);
    for (const auto& f : dec.flips) {
      std::printf("flip %s %s %.12f\n", f.kind == hc::FlipRecord::Kind::TwoThree ? "2-3" : "3-2",
                  face_name(f.face).c_str(), f.tilt_sum);
    }
    for (const auto& v : dec.verdicts) {
      std::printf("face %s|%s %+.12f %s\n", face_name(v.face).c_str(), face_name(v.other).c_str(), v.tilt_sum,
                  std::string(hc::to_string(v.verdict)).c_str());
    }
    std::cout << "cells " << dec.n_cells << "\n";
    std::cout << "signature " << dec.signature << "\n";
    return kOk;
  } catch (const hc::Error& e) {
    std::cout << "failed " << e.what() << "\n";
    if (e.code() == hc::ErrorCode::Stuck) return kStuck;
    if (e.code() == hc::ErrorCode::IterationCap) return kIterationCap;
    return kUnsolved;
  }
}

int cmd_compare(const std::string& a, const std::string& b) {
  int code = kOk;
  auto ta = load(a, code);
  if (!ta) return code;
  auto tb = load(b, code);
  if (!tb) return code;
  auto c = hc::manifolds_equal(*ta, *tb);
  std::cout << hc::to_string(c) << "\n";
  switch (c) {
    case hc::Comparison::Equal: return kOk;
    case hc::Comparison::Distinct: return kDistinct;
    case hc::Comparison::Undecided: return kUnsolved;
  }
  return kUnsolved;
}

int cmd_census(int n, int ceiling, const std::string& out, int threads) {
  if (!check_ceiling(n, ceiling)) return kUsage;
  hc::EnumerationFilter filter;
  filter.max_n = ceiling;
  auto records = hc::run_census(n, threads, filter);
  auto text = hc::format_database(n, records);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << out << "\n";
      return kUsage;
    }
    f << text;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Census of cusped hyperbolic 3-manifolds from ideal triangulations"};
  app.require_subcommand(1);
  int exit_code = kOk;

  int n = 0;
  int ceiling = 4;
  int threads = default_threads();
  std::string out;

  auto* enumerate = app.add_subcommand("enumerate", "list triangulations with n tetrahedra");
  enumerate->add_option("-n", n, "number of tetrahedra")->required();
  enumerate->add_option("--max-n", ceiling, "ceiling on n")->check(CLI::PositiveNumber);
  enumerate->add_option("--out", out, "directory for one file per triangulation");
  enumerate->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  auto* cusped = enumerate->add_flag("--cusped", "only torus-cusped triangulations (default)");
  auto* closed = enumerate->add_flag("--closed", "only closed triangulations")->excludes(cusped);
  enumerate->add_flag("--any", "every orientable triangulation")->excludes(cusped)->excludes(closed);

  std::string file;
  double tol = hc::SolveOptions{}.tolerance;
  auto* solve = app.add_subcommand("solve", "solve the gluing equations");
  solve->add_option("file", file)->required();
  solve->add_option("--tol", tol, "residual tolerance")->check(CLI::PositiveNumber);

  auto* canonize = app.add_subcommand("canonize", "compute the canonical decomposition");
  canonize->add_option("file", file)->required();

  std::string file_b;
  auto* compare = app.add_subcommand("compare", "decide whether two triangulations give the same manifold");
  compare->add_option("fileA", file)->required();
  compare->add_option("fileB", file_b)->required();

  auto* census = app.add_subcommand("census", "run the pipeline over every cusped candidate");
  census->add_option("-n", n, "number of tetrahedra")->required();
  census->add_option("--max-n", ceiling, "ceiling on n")->check(CLI::PositiveNumber);
  census->add_option("--out", out, "database file (stdout if omitted)");
  census->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*enumerate) {
      auto target = hc::EnumerationTarget::Cusped;
      if (enumerate->count("--closed")) target = hc::EnumerationTarget::Closed;
      if (enumerate->count("--any")) target = hc::EnumerationTarget::Any;
      exit_code = cmd_enumerate(n, ceiling, target, out, threads);
    } else if (*solve) {
      exit_code = cmd_solve(file, tol);
    } else if (*canonize) {
      exit_code = cmd_canonize(file);
    } else if (*compare) {
      exit_code = cmd_compare(file, file_b);
    } else if (*census) {
      exit_code = cmd_census(n, ceiling, out, threads);
    }
  } catch (const hc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == hc::ErrorCode::ParseError || e.code() == hc::ErrorCode::CeilingExceeded ? kUsage : kUnsolved;
  }
  return exit_code;
}
