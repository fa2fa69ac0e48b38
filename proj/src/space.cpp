#include "wgfem/space.hpp"

#include <stdexcept>

namespace wgfem {

EdgeBasis::EdgeBasis(const Eigen::Vector2d& a, const Eigen::Vector2d& b)
    : a_(a), b_(b), mid_(0.5 * (a + b)), length_((b - a).norm()) {
  const QuadratureRule rule = edge_rule(edge_quad_degree);
  gram_.setZero();
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::Vector2d x = point(rule.points(q, 0));
    Eigen::Matrix<double, 2, 3> vals;
    for (int i = 0; i < size; ++i) vals.col(i) = evaluate(i, x);
    gram_ += rule.weights(q) * length_ * (vals.transpose() * vals);
  }
  llt_.compute(gram_);
  if (llt_.info() != Eigen::Success || !(length_ > 0.0))
    throw mesh_error("EdgeBasis: degenerate edge, Gram matrix not SPD");
}

EdgeBasis::EdgeBasis(const Mesh& mesh, int edge)
    : EdgeBasis(mesh.vertex(mesh.edge(edge).v[0]), mesh.vertex(mesh.edge(edge).v[1])) {}

Eigen::Vector2d EdgeBasis::evaluate(int i, const Eigen::Vector2d& x) const {
  switch (i) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    default:
      return {-(x.y() - mid_.y()), x.x() - mid_.x()};
  }
}

Eigen::Vector3d EdgeBasis::solve_gram(const Eigen::Vector3d& moments) const {
  return llt_.solve(moments);
}

Eigen::Vector3d project_edge(const VectorField& g, const EdgeBasis& basis, int quad_degree) {
  const QuadratureRule rule = edge_rule(quad_degree);
  Eigen::Vector3d moments = Eigen::Vector3d::Zero();
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::Vector2d x = basis.point(rule.points(q, 0));
    const Eigen::Vector2d gx = g(x);
    for (int i = 0; i < EdgeBasis::size; ++i)
      moments(i) += rule.weights(q) * basis.length() * gx.dot(basis.evaluate(i, x));
  }
  return basis.solve_gram(moments);
}

int scalar_basis_dim(int degree) { return (degree + 1) * (degree + 2) / 2; }

double scalar_basis_value(const Mesh& mesh, int t, int j, const Eigen::Vector2d& x) {
  const Eigen::Vector2d c = mesh.centroid(t);
  switch (j) {
    case 0:
      return 1.0;
    case 1:
      return x.x() - c.x();
    default:
      return x.y() - c.y();
  }
}

Eigen::Vector2d scalar_basis_gradient(const Mesh&, int, int j) {
  switch (j) {
    case 0:
      return {0.0, 0.0};
    case 1:
      return {1.0, 0.0};
    default:
      return {0.0, 1.0};
  }
}

namespace {

// Integrates fn over triangle t with the given rule; fn sees physical points.
template <typename F>
void for_each_quad_point(const Mesh& mesh, int t, const QuadratureRule& rule, F&& fn) {
  const auto corners = mesh.corners(t);
  const double jac = mesh.area(t) / 0.5;  // physical / reference measure
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::Vector2d x = rule.points(q, 0) * corners[0] + rule.points(q, 1) * corners[1] +
                              rule.points(q, 2) * corners[2];
    fn(x, rule.weights(q) * jac);
  }
}

}  // namespace

Eigen::MatrixXd project_element(const VectorField& w, const Mesh& mesh, int t, int degree,
                                int quad_degree) {
  const int dim = scalar_basis_dim(degree);
  const QuadratureRule rule = triangle_rule(quad_degree);
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(dim, 2);
  for_each_quad_point(mesh, t, rule, [&](const Eigen::Vector2d& x, double wq) {
    Eigen::VectorXd vals(dim);
    for (int j = 0; j < dim; ++j) vals(j) = scalar_basis_value(mesh, t, j, x);
    mass += wq * vals * vals.transpose();
    rhs += wq * vals * w(x).transpose();
  });
  return mass.llt().solve(rhs).transpose();
}

DofLayout::DofLayout(const Mesh& mesh, SpaceOrder order) : mesh_(&mesh), k_(order.k) {
  if (k_ != 1) throw std::invalid_argument("DofLayout: only k = 1 is supported");
  edge_base_ = mesh.num_triangles() * interior_block_size();
  total_ = edge_base_ + mesh.num_edges() * edge_block_size();

  global_to_free_.assign(total_, -1);
  free_to_global_.reserve(total_);
  for (int g = 0; g < edge_base_; ++g) {
    global_to_free_[g] = static_cast<int>(free_to_global_.size());
    free_to_global_.push_back(g);
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (edge_constrained(e)) continue;
    for (int j = 0; j < edge_block_size(); ++j) {
      const int g = edge_offset(e) + j;
      global_to_free_[g] = static_cast<int>(free_to_global_.size());
      free_to_global_.push_back(g);
    }
  }
}

DofLayout build_space(const Mesh& mesh, SpaceOrder order) { return DofLayout(mesh, order); }

std::array<int, DofLayout::dofs_per_element> DofLayout::element_dofs(int t) const {
  std::array<int, dofs_per_element> dofs{};
  const int base = interior_offset(t);
  for (int j = 0; j < 6; ++j) dofs[j] = base + j;
  for (int le = 0; le < 3; ++le) {
    const int eoff = edge_offset(mesh_->triangle_edge(t, le));
    for (int j = 0; j < 3; ++j) dofs[6 + 3 * le + j] = eoff + j;
  }
  return dofs;
}

Eigen::Matrix<double, DofLayout::dofs_per_element, 1> DofLayout::gather(
    const Eigen::VectorXd& global, int t) const {
  Eigen::Matrix<double, dofs_per_element, 1> local;
  const auto dofs = element_dofs(t);
  for (int i = 0; i < dofs_per_element; ++i) local(i) = global(dofs[i]);
  return local;
}

Eigen::Vector2d interior_value(const DofLayout& layout, const Eigen::VectorXd& coeffs, int t,
                               const Eigen::Vector2d& x) {
  const int dim = scalar_basis_dim(layout.order());
  const int base = layout.interior_offset(t);
  Eigen::Vector2d value = Eigen::Vector2d::Zero();
  for (int c = 0; c < 2; ++c)
    for (int j = 0; j < dim; ++j)
      value(c) += coeffs(base + c * dim + j) * scalar_basis_value(layout.mesh(), t, j, x);
  return value;
}

WgFunction interpolate(const VectorField& f, const DofLayout& layout) {
  const Mesh& mesh = layout.mesh();
  const int dim = scalar_basis_dim(layout.order());
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(layout.total());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Eigen::MatrixXd p = project_element(f, mesh, t, layout.order());
    for (int c = 0; c < 2; ++c)
      for (int j = 0; j < dim; ++j) coeffs(layout.interior_offset(t) + c * dim + j) = p(c, j);
  }
  for (int e = 0; e < mesh.num_edges(); ++e)
    coeffs.segment<3>(layout.edge_offset(e)) = project_edge(f, EdgeBasis(mesh, e));
  return WgFunction(layout, std::move(coeffs));
}

Eigen::Matrix<double, 3, 6> edge_trace_moments(const Mesh& mesh, int t, int le, int quad_degree) {
  const int e = mesh.triangle_edge(t, le);
  const EdgeBasis basis(mesh, e);
  const QuadratureRule rule = edge_rule(quad_degree);
  Eigen::Matrix<double, 3, 6> moments = Eigen::Matrix<double, 3, 6>::Zero();
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::Vector2d x = basis.point(rule.points(q, 0));
    const double w = rule.weights(q) * basis.length();
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector2d phi = basis.evaluate(i, x);
      for (int c = 0; c < 2; ++c)
        for (int j = 0; j < 3; ++j)
          moments(i, c * 3 + j) += w * phi(c) * scalar_basis_value(mesh, t, j, x);
    }
  }
  return moments;
}

}  // namespace wgfem
