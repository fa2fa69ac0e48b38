#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <stdexcept>
#include <vector>

#include "wgfem/problem.hpp"
#include "wgfem/space.hpp"
#include "wgfem/weak_ops.hpp"

namespace wgfem {

/// Assembled discrete problem. `full` carries the complete symmetric bilinear
/// form over all dofs (useful for consistency checks); `free_mat`/`rhs` are
/// the reduced SPD system over unconstrained dofs with Dirichlet
/// contributions moved to the right side.
struct SparseSymSystem {
  Eigen::SparseMatrix<double> full;
  Eigen::SparseMatrix<double> free_mat;
  Eigen::VectorXd rhs;
  Eigen::VectorXd load;                // (f, phi_0) against every basis function
  Eigen::VectorXd constrained_values;  // projected boundary data, zero on free dofs
  std::vector<int> free_to_global;
  std::vector<int> global_to_free;
};

/// Element stiffness of the bilinear form
///   a_w(w,v) = mu (grad_w w, grad_w v) + (mu+lambda)(div_w w, div_w v) + s(w,v)
/// in local dof ordering.
Eigen::Matrix<double, DofLayout::dofs_per_element, DofLayout::dofs_per_element> element_stiffness(
    const ProblemSpec& problem, const DofLayout& layout, int t);

/// Penalty term of one element: h_tau^{-1} <Q_b w_0 - w_b, Q_b v_0 - v_b> over
/// the element boundary.
double element_stabilizer(const DofLayout& layout, int t, const Eigen::VectorXd& w,
                          const Eigen::VectorXd& v);

/// s(w, v) summed over all elements.
double stabilizer_product(const DofLayout& layout, const Eigen::VectorXd& w,
                          const Eigen::VectorXd& v);

SparseSymSystem assemble(const ProblemSpec& problem, const DofLayout& layout);

class solve_error : public std::runtime_error {
 public:
  solve_error(const std::string& what, double residual)
      : std::runtime_error(what), relative_residual(residual) {}
  double relative_residual;
};

/// Diagonally preconditioned conjugate gradients with explicit-residual
/// restarts. Converges to a true relative residual of 1e-12 (or returns zero
/// when the right side vanishes); throws solve_error with the final residual
/// if the iteration cap of 20 * n is exhausted.
Eigen::VectorXd conjugate_gradient_spd(const Eigen::SparseMatrix<double>& a,
                                       const Eigen::VectorXd& b);

/// Solves the reduced system and re-attaches the projected boundary values
/// on constrained dofs.
WgFunction solve_spd(const SparseSymSystem& system, const DofLayout& layout);

struct EnergyError {
  double energy;         // E_h: mu- and (mu+lambda)-weighted discretization error
  double stabilizer_sq;  // s(u_h, u_h)
  double total;          // sqrt(E_h^2 + s(u_h, u_h))
};

/// Energy-norm distance to the exact solution, element-wise by quadrature.
/// Throws std::invalid_argument when the problem has no exact solution.
EnergyError energy_error(const ProblemSpec& problem, const DofLayout& layout,
                         const WgFunction& u_h);

}  // namespace wgfem
