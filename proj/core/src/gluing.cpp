#include "horocanon/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "horocanon/error.hpp"

namespace horocanon {
namespace {

constexpr double kPolish = 1e-14;
constexpr double kNearlyFlat = 1e-6;

double max_norm(const std::vector<Complex>& r) {
  double m = 0.0;
  for (Complex c : r) m = std::max(m, std::abs(c));
  return m;
}

double two_norm(const std::vector<Complex>& r) {
  double s = 0.0;
  for (Complex c : r) s += std::norm(c);
  return std::sqrt(s);
}

double min_arg(const std::vector<Complex>& z) {
  double m = M_PI;
  for (Complex c : z) m = std::min({m, std::arg(c), M_PI - std::arg(c)});
  return m;
}

struct Attempt {
  std::vector<Complex> z;
  double residual = 0.0;
  int iterations = 0;
};

Attempt newton(const GluingEquationSystem& system, std::vector<Complex> z, const SolveOptions& options) {
  const int n = system.tri.size();
  Attempt a;
  std::vector<Complex> w(n);
  for (int j = 0; j < n; ++j) w[j] = std::log(z[j]);
  auto r = residual(system, z);
  for (int it = 0; it < options.max_iterations && max_norm(r) > kPolish; ++it) {
    Eigen::MatrixXcd J = jacobian(system, z);
    Eigen::VectorXcd rhs(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) rhs[i] = -r[i];
    Eigen::VectorXcd delta = J.completeOrthogonalDecomposition().solve(rhs);

    const double current = two_norm(r);
    bool accepted = false;
    for (double s = 1.0; s > 1e-9; s *= 0.5) {
      std::vector<Complex> wn(n), zn(n);
      bool inside = true;
      for (int j = 0; j < n && inside; ++j) {
        wn[j] = w[j] + s * delta[j];
        inside = wn[j].imag() > 0.0 && wn[j].imag() < M_PI;
        zn[j] = std::exp(wn[j]);
      }
      if (!inside) continue;
      auto rn = residual(system, zn);
      if (two_norm(rn) < current) {
        w = std::move(wn);
        z = std::move(zn);
        r = std::move(rn);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    ++a.iterations;
  }
  a.z = std::move(z);
  a.residual = max_norm(r);
  return a;
}

}  // namespace

bool ShapeAssignment::geometric() const {
  return std::all_of(z.begin(), z.end(), [](Complex c) { return c.imag() > tol::kFlatness; });
}

GluingEquationSystem assemble_equations(const Triangulation& input) {
  if (classify_links(input) != LinkType::Cusped)
    throw Error(ErrorCode::NotCusped, "every vertex link must be a torus");
  GluingEquationSystem sys{input.oriented(), {}, {}, {}, 0, 0};
  const int n = sys.tri.size();
  sys.edges = edge_classes(sys.tri);
  sys.n_edges = static_cast<int>(sys.edges.size());
  for (int e = 0; e < sys.n_edges; ++e) {
    EquationRow row{EquationRow::Kind::Edge, e, std::vector<std::array<int, 3>>(n, {0, 0, 0}),
                    Complex(0.0, 2.0 * M_PI)};
    for (const EdgeMember& m : sys.edges[e].members) row.exponents[m.tet][opposite_pair(m.verts[0], m.verts[1])] += 1;
    sys.rows.push_back(std::move(row));
  }
  sys.n_cusps = static_cast<int>(vertex_links(sys.tri).size());
  for (int c = 0; c < sys.n_cusps; ++c) {
    sys.cusp_curves.push_back(cusp_generators(sys.tri, c));
    for (int g = 0; g < 2; ++g)
      sys.rows.push_back({EquationRow::Kind::Cusp, 2 * c + g, curve_exponents(sys.tri, sys.cusp_curves[c][g]), 0.0});
  }
  return sys;
}

std::vector<Complex> residual(const GluingEquationSystem& system, std::span<const Complex> shapes) {
  const int n = system.tri.size();
  std::vector<std::array<Complex, 3>> logs(n);
  for (int j = 0; j < n; ++j)
    for (int p = 0; p < 3; ++p) logs[j][p] = log_modulus(shapes[j], p);
  std::vector<Complex> r;
  r.reserve(system.rows.size());
  for (const EquationRow& row : system.rows) {
    Complex s = -row.target;
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < 3; ++p)
        if (row.exponents[j][p] != 0) s += static_cast<double>(row.exponents[j][p]) * logs[j][p];
    r.push_back(s);
  }
  return r;
}

Eigen::MatrixXcd jacobian(const GluingEquationSystem& system, std::span<const Complex> shapes) {
  const int n = system.tri.size();
  Eigen::MatrixXcd J(system.rows.size(), n);
  for (std::size_t i = 0; i < system.rows.size(); ++i) {
    for (int j = 0; j < n; ++j) {
      Complex z = shapes[j];
      const auto& e = system.rows[i].exponents[j];
      J(i, j) = static_cast<double>(e[0]) + static_cast<double>(e[1]) * z / (1.0 - z) +
                static_cast<double>(e[2]) / (z - 1.0);
    }
  }
  return J;
}

ShapeAssignment solve(const GluingEquationSystem& system, std::optional<std::vector<Complex>> initial,
                      const SolveOptions& options) {
  const int n = system.tri.size();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> re(-1.0, 2.0);
  std::uniform_real_distribution<double> im(0.0, 2.0);

  std::vector<Complex> start = initial ? *initial : std::vector<Complex>(n, Complex(0.5, std::sqrt(3.0) / 2.0));
  if (static_cast<int>(start.size()) != n)
    throw Error(ErrorCode::NoConvergence, "initial guess has the wrong length");

  bool nearly_flat = false;
  double best = INFINITY;
  for (int attempt = 0; attempt <= options.restarts; ++attempt) {
    if (attempt > 0) {
      for (auto& z : start) {
        double y = 0.0;
        while (y <= 0.0) y = im(rng);
        z = Complex(re(rng), y);
      }
    }
    bool usable = std::all_of(start.begin(), start.end(), [](Complex z) { return z.imag() > 0.0; });
    if (!usable) continue;
    Attempt a = newton(system, start, options);
    best = std::min(best, a.residual);
    if (a.residual <= options.tolerance) {
      ShapeAssignment out{std::move(a.z), a.residual, a.iterations, attempt};
      if (!out.geometric())
        throw Error(ErrorCode::DegenerateSolution, "solution has a flat tetrahedron");
      return out;
    }
    if (min_arg(a.z) < kNearlyFlat) nearly_flat = true;
  }
  if (nearly_flat)
    throw Error(ErrorCode::DegenerateSolution, "iteration collapses onto flat tetrahedra");
  throw Error(ErrorCode::NoConvergence, "best residual " + std::to_string(best));
}

double total_volume(std::span<const Complex> shapes) {
  double v = 0.0;
  for (Complex z : shapes) {
    if (z.imag() < -tol::kFlatness)
      throw Error(ErrorCode::DegenerateSolution, "negatively oriented tetrahedron");
    v += tet_volume(z);
  }
  return v;
}

std::vector<double> angle_sum_check(const GluingEquationSystem& system, std::span<const Complex> shapes) {
  std::vector<double> sums;
  for (const EquationRow& row : system.rows) {
    if (row.kind != EquationRow::Kind::Edge) continue;
    double s = 0.0;
    for (std::size_t j = 0; j < row.exponents.size(); ++j)
      for (int p = 0; p < 3; ++p)
        if (row.exponents[j][p] != 0) s += row.exponents[j][p] * std::arg(edge_moduli(shapes[j])[p]);
    if (std::abs(s - 2.0 * M_PI) > 1e-8)
      throw Error(ErrorCode::AngleSumViolation, "edge " + std::to_string(row.source) + " has angle sum " +
                                                    std::to_string(s));
    sums.push_back(s);
  }
  return sums;
}

}  // namespace horocanon
