#include "wgfem/weak_ops.hpp"

#include "wgfem/quadrature.hpp"

namespace wgfem {

ElementWeakOps element_weak_ops(const Mesh& mesh, int t) {
  ElementWeakOps ops;
  ops.tri = t;
  ops.grad.setZero();
  ops.div.setZero();
  const double inv_area = 1.0 / mesh.area(t);
  for (int le = 0; le < 3; ++le) {
    const int e = mesh.triangle_edge(t, le);
    const double h = mesh.edge_length(e);
    const Eigen::Vector2d n = mesh.outward_normal(t, le);
    const int col = 6 + 3 * le;
    // Only the constant edge functions have nonzero mean; the recentered
    // rotation integrates to zero along its edge.
    for (int i = 0; i < 2; ++i) {
      ops.grad(2 * i + 0, col + i) += h * n.x() * inv_area;
      ops.grad(2 * i + 1, col + i) += h * n.y() * inv_area;
      ops.div(0, col + i) += h * n(i) * inv_area;
    }
  }
  return ops;
}

ElementWeakOps element_weak_ops_generic(const Mesh& mesh, int t) {
  // Test bases at k = 1: the four constant matrices E_ij for the gradient,
  // the constant 1 for the divergence. Their divergence/gradient terms
  // against the interior field vanish identically, so the interior block
  // contributes nothing; only the boundary functional is assembled.
  const QuadratureRule tri_q = triangle_rule(triangle_quad_degree);
  const QuadratureRule edge_q = edge_rule(edge_quad_degree);

  Eigen::Matrix4d mass_grad = Eigen::Matrix4d::Zero();
  double mass_div = 0.0;
  for (int q = 0; q < tri_q.size(); ++q) {
    const double w = tri_q.weights(q) * mesh.area(t) / 0.5;
    mass_grad += w * Eigen::Matrix4d::Identity();
    mass_div += w;
  }

  Eigen::Matrix<double, 4, DofLayout::dofs_per_element> rhs_grad;
  Eigen::Matrix<double, 1, DofLayout::dofs_per_element> rhs_div;
  rhs_grad.setZero();
  rhs_div.setZero();
  for (int le = 0; le < 3; ++le) {
    const int e = mesh.triangle_edge(t, le);
    const EdgeBasis basis(mesh, e);
    const Eigen::Vector2d n = mesh.outward_normal(t, le);
    for (int q = 0; q < edge_q.size(); ++q) {
      const Eigen::Vector2d x = basis.point(edge_q.points(q, 0));
      const double w = edge_q.weights(q) * basis.length();
      for (int j = 0; j < 3; ++j) {
        const Eigen::Vector2d phi = basis.evaluate(j, x);
        const int col = 6 + 3 * le + j;
        for (int i = 0; i < 2; ++i)
          for (int d = 0; d < 2; ++d) rhs_grad(2 * i + d, col) += w * phi(i) * n(d);
        rhs_div(0, col) += w * phi.dot(n);
      }
    }
  }

  ElementWeakOps ops;
  ops.tri = t;
  ops.grad = mass_grad.llt().solve(rhs_grad);
  ops.div = rhs_div / mass_div;
  return ops;
}

Eigen::Matrix2d weak_gradient(const ElementWeakOps& ops, const LocalDofs& local) {
  const Eigen::Vector4d g = ops.grad * local;
  Eigen::Matrix2d out;
  out << g(0), g(1), g(2), g(3);
  return out;
}

double weak_divergence(const ElementWeakOps& ops, const LocalDofs& local) {
  return (ops.div * local)(0);
}

}  // namespace wgfem
