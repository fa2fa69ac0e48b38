#pragma once

#include <Eigen/Dense>

namespace wgfem {

/// Numerical quadrature on the reference triangle {(0,0),(1,0),(0,1)} or the
/// reference edge [0,1]. Triangle nodes are stored as barycentric triples,
/// edge nodes as a single parametric coordinate. Weights carry the reference
/// measure (1/2 for the triangle, 1 for the edge), so mapping to a physical
/// element only needs the measure ratio.
struct QuadratureRule {
  enum class Kind { triangle, edge };

  Kind kind;
  int exactness;            // every polynomial up to this degree is integrated exactly
  Eigen::MatrixXd points;   // one node per row: 3 barycentric columns or 1 parametric
  Eigen::VectorXd weights;  // positive, sum to the reference measure

  int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss-Legendre nodes and weights on [0,1]; n points are exact to degree 2n-1.
void gauss_legendre_unit(int n, Eigen::VectorXd& points, Eigen::VectorXd& weights);

/// Rule on the reference triangle exact for all polynomials of total degree
/// <= degree (conical Gauss product; interior nodes, positive weights).
/// Throws std::invalid_argument outside the supported range.
QuadratureRule triangle_rule(int degree);

/// Gauss rule on [0,1] exact up to the requested degree.
/// Throws std::invalid_argument outside the supported range.
QuadratureRule edge_rule(int degree);

/// Largest exactness degrees the factory supports.
constexpr int max_triangle_degree = 20;
constexpr int max_edge_degree = 29;

}  // namespace wgfem
