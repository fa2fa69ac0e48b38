#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "wgfem/mesh.hpp"
#include "wgfem/quadrature.hpp"

namespace wgfem {

using VectorField = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

/// Polynomial order of the discrete space (interior fields in [P_k]^2).
struct SpaceOrder {
  int k = 1;
};

/// Module-wide quadrature degrees. Over-integration is cheap at k = 1 and
/// keeps the singular benchmark's error integrals acceptable away from the
/// corner.
constexpr int triangle_quad_degree = 6;
constexpr int edge_quad_degree = 7;

/// Vector-valued basis of the edge space [P_0(e)]^2 + rigid-motion traces:
///   phi_0 = (1,0), phi_1 = (0,1), phi_2 = (-(y - my), x - mx)
/// with (mx,my) the edge midpoint. phi_2 is the in-plane rotation trace
/// recentered at the midpoint, so it is L2(e)-orthogonal to the constants.
/// The functions are defined in global coordinates, hence identical as seen
/// from either adjacent triangle.
class EdgeBasis {
 public:
  static constexpr int size = 3;

  EdgeBasis(const Eigen::Vector2d& a, const Eigen::Vector2d& b);
  EdgeBasis(const Mesh& mesh, int edge);

  Eigen::Vector2d evaluate(int i, const Eigen::Vector2d& x) const;
  Eigen::Vector2d point(double s) const { return a_ + s * (b_ - a_); }
  double length() const { return length_; }

  const Eigen::Matrix3d& gram() const { return gram_; }
  /// Solves the Gram system; throws mesh_error when the edge is degenerate.
  Eigen::Vector3d solve_gram(const Eigen::Vector3d& moments) const;

 private:
  Eigen::Vector2d a_, b_, mid_;
  double length_;
  Eigen::Matrix3d gram_;
  Eigen::LLT<Eigen::Matrix3d> llt_;
};

/// L2(e) projection onto the edge space: coefficients c with
/// <g - sum_i c_i phi_i, phi_j>_e = 0 for all j.
Eigen::Vector3d project_edge(const VectorField& g, const EdgeBasis& basis,
                             int quad_degree = edge_quad_degree);

/// Scalar monomial basis of P_m on a triangle, centered at the centroid:
/// {1, x - xc, y - yc} for m = 1. Centering keeps local systems conditioned.
int scalar_basis_dim(int degree);
double scalar_basis_value(const Mesh& mesh, int t, int j, const Eigen::Vector2d& x);
Eigen::Vector2d scalar_basis_gradient(const Mesh& mesh, int t, int j);

/// Element-wise L2 projection of a vector field onto [P_m(tau)]^2. Returns a
/// 2 x dim(P_m) matrix of coefficients in the centered monomial basis.
Eigen::MatrixXd project_element(const VectorField& w, const Mesh& mesh, int t, int degree,
                                int quad_degree = triangle_quad_degree);

/// Global indexing of the weak space: one interior block of size 2*dim(P_k)
/// per triangle followed by one block of size 3 per edge. Edge blocks are
/// single-valued (shared by both adjacent triangles); blocks on boundary
/// edges are constrained to projected Dirichlet data.
class DofLayout {
 public:
  DofLayout(const Mesh& mesh, SpaceOrder order);

  const Mesh& mesh() const { return *mesh_; }
  int order() const { return k_; }

  int total() const { return total_; }
  int interior_block_size() const { return 2 * scalar_basis_dim(k_); }
  int edge_block_size() const { return 3; }
  int interior_offset(int t) const { return t * interior_block_size(); }
  int edge_offset(int e) const { return edge_base_ + e * edge_block_size(); }
  bool edge_constrained(int e) const { return mesh_->edge(e).boundary; }

  int num_free() const { return static_cast<int>(free_to_global_.size()); }
  const std::vector<int>& free_to_global() const { return free_to_global_; }
  /// -1 for constrained dofs.
  int global_to_free(int g) const { return global_to_free_[g]; }

  static constexpr int dofs_per_element = 15;  // k = 1: 6 interior + 3 edges * 3
  /// Global indices of an element's local dof vector:
  /// [interior(6), block of edge opposite v0, v1, v2].
  std::array<int, dofs_per_element> element_dofs(int t) const;
  Eigen::Matrix<double, dofs_per_element, 1> gather(const Eigen::VectorXd& global, int t) const;

 private:
  const Mesh* mesh_;
  int k_;
  int edge_base_;
  int total_;
  std::vector<int> free_to_global_;
  std::vector<int> global_to_free_;
};

/// Builds the dof indexing for a conforming mesh. Only k = 1 is supported;
/// other orders raise std::invalid_argument.
DofLayout build_space(const Mesh& mesh, SpaceOrder order);

/// A weak function is one global coefficient vector read through a layout.
struct WgFunction {
  const DofLayout* layout = nullptr;
  Eigen::VectorXd coeffs;

  WgFunction() = default;
  WgFunction(const DofLayout& l, Eigen::VectorXd c) : layout(&l), coeffs(std::move(c)) {
    if (coeffs.size() != layout->total())
      throw std::invalid_argument("WgFunction: coefficient count does not match the layout");
  }
};

/// Interior field of a weak function on triangle t at point x.
Eigen::Vector2d interior_value(const DofLayout& layout, const Eigen::VectorXd& coeffs, int t,
                               const Eigen::Vector2d& x);

/// Interpolant {Q_0 f, Q_b f}: element-wise L2 projection inside, edge
/// projection on every edge.
WgFunction interpolate(const VectorField& f, const DofLayout& layout);

/// Moments <phi_i, b_j>_e of the interior vector basis of triangle t against
/// the basis of its local edge le; the 3x6 block used by stabilizer and
/// projection assembly.
Eigen::Matrix<double, 3, 6> edge_trace_moments(const Mesh& mesh, int t, int le,
                                               int quad_degree = edge_quad_degree);

}  // namespace wgfem
