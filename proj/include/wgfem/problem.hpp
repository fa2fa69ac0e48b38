#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "wgfem/mesh.hpp"
#include "wgfem/space.hpp"

namespace wgfem {

using MatrixField = std::function<Eigen::Matrix2d(const Eigen::Vector2d&)>;
using ScalarField = std::function<double(const Eigen::Vector2d&)>;

/// Lame constants from elastic modulus and Poisson ratio in [0, 0.5).
/// Throws std::invalid_argument outside the admissible range.
std::pair<double, double> lame_constants(double youngs_modulus, double poisson_ratio);

/// Displacement problem
///   -mu Laplace(u) - (lambda + mu) grad(div u) = f  in Omega,  u = g on the boundary.
struct ProblemSpec {
  Domain domain = Domain::unit_square;
  double mu = 0.5;
  double lambda = 1.0;
  VectorField body_force;     // f
  VectorField boundary_data;  // g

  // Exact solution for error reporting, when known.
  bool has_exact = false;
  VectorField exact;            // u
  MatrixField exact_gradient;   // (grad u)(i,j) = d u_i / d x_j
  ScalarField exact_divergence;

  void validate() const;  // mu > 0, lambda >= 0
};

enum class BenchmarkId { patch_linear, square_smooth, lshape2d_singular };

/// Built-in benchmarks with manufactured data:
///  - patch_linear:  u = (x + y, x - y) on the unit square, f = 0.
///  - square_smooth: u1 = u2 = sin(pi x) sin(pi y) on the unit square, g = 0.
///  - lshape2d_singular: u1 = u2 = r^{2/3} sin(2 theta / 3) on the L-shaped
///    domain, with theta in [0, 3 pi / 2] so the branch cut lies inside the
///    removed quadrant.
ProblemSpec make_problem(BenchmarkId id, double mu, double lambda);

}  // namespace wgfem
