#include "wgfem/estimator.hpp"

#include "wgfem/quadrature.hpp"
#include "wgfem/system.hpp"
#include "wgfem/weak_ops.hpp"

namespace wgfem {

namespace {

int local_edge_index(const Mesh& mesh, int t, int e) {
  for (int le = 0; le < 3; ++le)
    if (mesh.triangle_edge(t, le) == e) return le;
  throw mesh_error("estimator: edge not part of triangle");
}

}  // namespace

EdgeJump stress_jump(const Mesh& mesh, int e, const Eigen::Matrix2d& sigma1,
                     const Eigen::Matrix2d& sigma2) {
  EdgeJump jump;
  jump.edge = e;
  const Edge& edge = mesh.edge(e);
  if (edge.boundary) return jump;
  const Eigen::Vector2d n1 = mesh.outward_normal(edge.tri[0], local_edge_index(mesh, edge.tri[0], e));
  const Eigen::Vector2d n2 = mesh.outward_normal(edge.tri[1], local_edge_index(mesh, edge.tri[1], e));
  jump.value = sigma1 * n1 + sigma2 * n2;
  return jump;
}

ErrorIndicators estimate(const ProblemSpec& problem, const DofLayout& layout,
                         const WgFunction& u_h) {
  const Mesh& mesh = layout.mesh();
  const int nt = mesh.num_triangles();
  const double mu = problem.mu;
  const double weight = 1.0 / mu + 1.0 / (mu + problem.lambda);

  // Element-wise stress mu grad_w u + (mu + lambda)(div_w u) I; constant at k = 1.
  std::vector<Eigen::Matrix2d> stress(nt);
  for (int t = 0; t < nt; ++t) {
    const ElementWeakOps ops = element_weak_ops(mesh, t);
    const auto local = layout.gather(u_h.coeffs, t);
    stress[t] = mu * weak_gradient(ops, local) +
                (mu + problem.lambda) * weak_divergence(ops, local) * Eigen::Matrix2d::Identity();
  }

  std::vector<Eigen::Vector2d> jumps(mesh.num_edges(), Eigen::Vector2d::Zero());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (edge.boundary) continue;
    jumps[e] = stress_jump(mesh, e, stress[edge.tri[0]], stress[edge.tri[1]]).value;
  }

  ErrorIndicators ind;
  ind.eta_c_sq.setZero(nt);
  ind.eta_nc_sq.setZero(nt);
  ind.osc_sq.setZero(nt);
  ind.stab.setZero(nt);

  const QuadratureRule rule = triangle_rule(triangle_quad_degree);
  for (int t = 0; t < nt; ++t) {
    const double h_t = mesh.diameter(t);
    const auto corners = mesh.corners(t);

    // At k = 1 the weak stress is element-wise constant, so the strong
    // residual reduces to the body force itself.
    const Eigen::MatrixXd f_mean = project_element(problem.body_force, mesh, t, 0);
    double f_sq = 0.0, osc_sq = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector2d x = rule.points(q, 0) * corners[0] + rule.points(q, 1) * corners[1] +
                                rule.points(q, 2) * corners[2];
      const double wq = rule.weights(q) * mesh.area(t) / 0.5;
      const Eigen::Vector2d f = problem.body_force(x);
      f_sq += wq * f.squaredNorm();
      osc_sq += wq * (f - f_mean.col(0)).squaredNorm();
    }
    ind.eta_c_sq(t) = h_t * h_t * weight * f_sq;
    ind.osc_sq(t) = h_t * h_t * weight * osc_sq;

    for (int le = 0; le < 3; ++le) {
      const int e = mesh.triangle_edge(t, le);
      if (mesh.edge(e).boundary) continue;
      const double h_e = mesh.edge_length(e);
      // ||J||^2_e = |J|^2 h_e for the constant jump; half per adjacent element.
      ind.eta_nc_sq(t) += 0.5 / mu * h_e * jumps[e].squaredNorm() * h_e;
    }

    ind.stab(t) = element_stabilizer(layout, t, u_h.coeffs, u_h.coeffs);
  }

  ind.eta_c_sq_total = ind.eta_c_sq.sum();
  ind.eta_nc_sq_total = ind.eta_nc_sq.sum();
  ind.osc_sq_total = ind.osc_sq.sum();
  ind.stab_total = ind.stab.sum();
  ind.total_sq = ind.eta_c_sq_total + ind.eta_nc_sq_total + ind.osc_sq_total + ind.stab_total;
  return ind;
}

}  // namespace wgfem
