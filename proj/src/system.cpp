#include "wgfem/system.hpp"

#include <cmath>

#include "wgfem/quadrature.hpp"

namespace wgfem {

namespace {

using LocalMatrix =
    Eigen::Matrix<double, DofLayout::dofs_per_element, DofLayout::dofs_per_element>;
using StabRow = Eigen::Matrix<double, 3, DofLayout::dofs_per_element>;

// Map from the local dof vector to the edge-basis coefficients of
// Q_b v_0 - v_b on local edge le.
StabRow stab_operator(const DofLayout& layout, int t, int le, const EdgeBasis& basis) {
  StabRow r = StabRow::Zero();
  const Eigen::Matrix<double, 3, 6> moments = edge_trace_moments(layout.mesh(), t, le);
  r.leftCols<6>() = basis.gram().llt().solve(moments);
  r.block<3, 3>(0, 6 + 3 * le) = -Eigen::Matrix3d::Identity();
  return r;
}

}  // namespace

Eigen::Matrix<double, DofLayout::dofs_per_element, DofLayout::dofs_per_element> element_stiffness(
    const ProblemSpec& problem, const DofLayout& layout, int t) {
  const Mesh& mesh = layout.mesh();
  const ElementWeakOps ops = element_weak_ops(mesh, t);
  const double area = mesh.area(t);

  LocalMatrix k = problem.mu * area * ops.grad.transpose() * ops.grad;
  k += (problem.mu + problem.lambda) * area * ops.div.transpose() * ops.div;

  const double inv_h = 1.0 / mesh.diameter(t);
  for (int le = 0; le < 3; ++le) {
    const EdgeBasis basis(mesh, mesh.triangle_edge(t, le));
    const StabRow r = stab_operator(layout, t, le, basis);
    k += inv_h * r.transpose() * basis.gram() * r;
  }
  return k;
}

double element_stabilizer(const DofLayout& layout, int t, const Eigen::VectorXd& w,
                          const Eigen::VectorXd& v) {
  const Mesh& mesh = layout.mesh();
  const auto wl = layout.gather(w, t);
  const auto vl = layout.gather(v, t);
  double s = 0.0;
  for (int le = 0; le < 3; ++le) {
    const EdgeBasis basis(mesh, mesh.triangle_edge(t, le));
    const StabRow r = stab_operator(layout, t, le, basis);
    s += (r * wl).dot(basis.gram() * (r * vl));
  }
  return s / mesh.diameter(t);
}

double stabilizer_product(const DofLayout& layout, const Eigen::VectorXd& w,
                          const Eigen::VectorXd& v) {
  double s = 0.0;
  for (int t = 0; t < layout.mesh().num_triangles(); ++t) s += element_stabilizer(layout, t, w, v);
  return s;
}

SparseSymSystem assemble(const ProblemSpec& problem, const DofLayout& layout) {
  problem.validate();
  const Mesh& mesh = layout.mesh();
  const int n = layout.total();

  SparseSymSystem sys;
  sys.load = Eigen::VectorXd::Zero(n);
  sys.constrained_values = Eigen::VectorXd::Zero(n);
  sys.free_to_global = layout.free_to_global();
  sys.global_to_free.resize(n);
  for (int g = 0; g < n; ++g) sys.global_to_free[g] = layout.global_to_free(g);

  std::vector<Eigen::Triplet<double>> full_trips;
  std::vector<Eigen::Triplet<double>> free_trips;
  full_trips.reserve(static_cast<std::size_t>(mesh.num_triangles()) * 225);
  free_trips.reserve(full_trips.capacity());

  const QuadratureRule tri_q = triangle_rule(triangle_quad_degree);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const LocalMatrix k = element_stiffness(problem, layout, t);
    const auto dofs = layout.element_dofs(t);
    for (int i = 0; i < DofLayout::dofs_per_element; ++i) {
      for (int j = 0; j < DofLayout::dofs_per_element; ++j) {
        if (k(i, j) == 0.0) continue;
        full_trips.emplace_back(dofs[i], dofs[j], k(i, j));
        const int fi = layout.global_to_free(dofs[i]);
        const int fj = layout.global_to_free(dofs[j]);
        if (fi >= 0 && fj >= 0) free_trips.emplace_back(fi, fj, k(i, j));
      }
    }

    // Load (f, v_0): only interior basis functions test the body force.
    const auto corners = mesh.corners(t);
    for (int q = 0; q < tri_q.size(); ++q) {
      const Eigen::Vector2d x = tri_q.points(q, 0) * corners[0] + tri_q.points(q, 1) * corners[1] +
                                tri_q.points(q, 2) * corners[2];
      const double wq = tri_q.weights(q) * mesh.area(t) / 0.5;
      const Eigen::Vector2d f = problem.body_force(x);
      for (int c = 0; c < 2; ++c)
        for (int j = 0; j < 3; ++j)
          sys.load(layout.interior_offset(t) + c * 3 + j) +=
              wq * f(c) * scalar_basis_value(mesh, t, j, x);
    }
  }

  sys.full.resize(n, n);
  sys.full.setFromTriplets(full_trips.begin(), full_trips.end());
  sys.free_mat.resize(layout.num_free(), layout.num_free());
  sys.free_mat.setFromTriplets(free_trips.begin(), free_trips.end());

  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!layout.edge_constrained(e)) continue;
    sys.constrained_values.segment<3>(layout.edge_offset(e)) =
        project_edge(problem.boundary_data, EdgeBasis(mesh, e));
  }

  const Eigen::VectorXd coupled = sys.full * sys.constrained_values;
  sys.rhs.resize(layout.num_free());
  for (int i = 0; i < layout.num_free(); ++i) {
    const int g = sys.free_to_global[i];
    sys.rhs(i) = sys.load(g) - coupled(g);
  }
  return sys;
}

namespace {

// Jacobi-preconditioned CG for A d = r, run until the recursive residual
// drops below target (absolute) or the shared iteration budget is spent.
void pcg_sweep(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& inv_diag,
               const Eigen::VectorXd& rhs, Eigen::VectorXd& d, double target_abs, long& budget) {
  d.setZero();
  Eigen::VectorXd r = rhs;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  while (budget > 0) {
    --budget;
    const Eigen::VectorXd ap = a * p;
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) break;  // numerically exhausted search direction
    const double alpha = rz / pap;
    d += alpha * p;
    r -= alpha * ap;
    if (r.norm() <= target_abs) break;
    z = inv_diag.cwiseProduct(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
}

}  // namespace

Eigen::VectorXd conjugate_gradient_spd(const Eigen::SparseMatrix<double>& a,
                                       const Eigen::VectorXd& b) {
  constexpr double tol = 1e-12;
  const int n = static_cast<int>(b.size());

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const double rhs_norm = b.norm();
  if (!b.allFinite()) throw solve_error("conjugate_gradient_spd: non-finite right side", 1.0);
  if (rhs_norm == 0.0) return x;

  Eigen::VectorXd inv_diag = a.diagonal();
  for (int i = 0; i < n; ++i) inv_diag(i) = inv_diag(i) > 0.0 ? 1.0 / inv_diag(i) : 1.0;

  long budget = 20L * std::max(n, 1);
  // Outer restarts recompute the true residual, so convergence is judged on
  // ||b - A x|| rather than the drifting recursive residual.
  for (int restart = 0; restart < 60; ++restart) {
    const Eigen::VectorXd r = b - a * x;
    const double rel = r.norm() / rhs_norm;
    if (rel <= tol) return x;
    if (budget <= 0 || !r.allFinite()) break;
    Eigen::VectorXd d(n);
    pcg_sweep(a, inv_diag, r, d, 0.05 * tol * rhs_norm, budget);
    x += d;
  }
  const double final_rel = (b - a * x).norm() / rhs_norm;
  if (!(final_rel <= tol))
    throw solve_error("conjugate_gradient_spd: residual tolerance not reached", final_rel);
  return x;
}

WgFunction solve_spd(const SparseSymSystem& system, const DofLayout& layout) {
  const Eigen::VectorXd x = conjugate_gradient_spd(system.free_mat, system.rhs);
  Eigen::VectorXd coeffs = system.constrained_values;
  for (int i = 0; i < static_cast<int>(x.size()); ++i) coeffs(system.free_to_global[i]) = x(i);
  return WgFunction(layout, std::move(coeffs));
}

EnergyError energy_error(const ProblemSpec& problem, const DofLayout& layout,
                         const WgFunction& u_h) {
  if (!problem.has_exact)
    throw std::invalid_argument("energy_error: problem has no exact solution");
  const Mesh& mesh = layout.mesh();
  const QuadratureRule rule = triangle_rule(triangle_quad_degree);

  double err_sq = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementWeakOps ops = element_weak_ops(mesh, t);
    const auto local = layout.gather(u_h.coeffs, t);
    const Eigen::Matrix2d wg = weak_gradient(ops, local);
    const double wd = weak_divergence(ops, local);

    const auto corners = mesh.corners(t);
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector2d x = rule.points(q, 0) * corners[0] + rule.points(q, 1) * corners[1] +
                                rule.points(q, 2) * corners[2];
      const double wq = rule.weights(q) * mesh.area(t) / 0.5;
      const Eigen::Matrix2d dg = problem.exact_gradient(x) - wg;
      const double dd = problem.exact_divergence(x) - wd;
      err_sq += wq * (problem.mu * dg.squaredNorm() +
                      (problem.mu + problem.lambda) * dd * dd);
    }
  }

  EnergyError out;
  out.energy = std::sqrt(err_sq);
  out.stabilizer_sq = stabilizer_product(layout, u_h.coeffs, u_h.coeffs);
  out.total = std::sqrt(err_sq + out.stabilizer_sq);
  return out;
}

}  // namespace wgfem
