#pragma once

#include <Eigen/Dense>

#include "wgfem/mesh.hpp"
#include "wgfem/space.hpp"

namespace wgfem {

/// Element-local linear maps from the local dof vector (6 interior + 3 x 3
/// edge coefficients) to the weak gradient and weak divergence. At k = 1 the
/// weak gradient is a constant 2x2 matrix per element, stored row-major as
/// (W00, W01, W10, W11) with W(i,j) the j-derivative of component i, and the
/// weak divergence is a scalar.
struct ElementWeakOps {
  int tri = -1;
  Eigen::Matrix<double, 4, DofLayout::dofs_per_element> grad;
  Eigen::Matrix<double, 1, DofLayout::dofs_per_element> div;
};

/// Closed-form boundary-integral evaluation: at k = 1 the defining identity
/// collapses to grad_w v = (1/|tau|) * integral over the element boundary of
/// v_b (x) n, and div_w v = trace of the same.
ElementWeakOps element_weak_ops(const Mesh& mesh, int t);

/// Generic route: assemble the mass matrix of the matrix-valued test space
/// [P_{k-1}]^{2x2} and the right side of the defining identity by quadrature,
/// then solve. Mutual oracle for the closed form; the shape extends to k = 2.
ElementWeakOps element_weak_ops_generic(const Mesh& mesh, int t);

using LocalDofs = Eigen::Matrix<double, DofLayout::dofs_per_element, 1>;

Eigen::Matrix2d weak_gradient(const ElementWeakOps& ops, const LocalDofs& local);
double weak_divergence(const ElementWeakOps& ops, const LocalDofs& local);

}  // namespace wgfem
