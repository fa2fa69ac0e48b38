#pragma once

#include <Eigen/Dense>

#include "wgfem/problem.hpp"
#include "wgfem/space.hpp"

namespace wgfem {

/// Per-element indicator quadruple in squared energy units, plus totals.
/// The element total eta_c^2 + eta_nc^2 + osc^2 + s_tau drives the marking.
struct ErrorIndicators {
  Eigen::VectorXd eta_c_sq;   // element residual
  Eigen::VectorXd eta_nc_sq;  // stress jump across interior edges
  Eigen::VectorXd osc_sq;     // data oscillation of the body force
  Eigen::VectorXd stab;       // element stabilizer value (already quadratic)

  double eta_c_sq_total = 0.0;
  double eta_nc_sq_total = 0.0;
  double osc_sq_total = 0.0;
  double stab_total = 0.0;
  double total_sq = 0.0;  // grand eta^2

  int size() const { return static_cast<int>(eta_c_sq.size()); }
  double element_total(int t) const {
    return eta_c_sq(t) + eta_nc_sq(t) + osc_sq(t) + stab(t);
  }
};

/// Jump of a piecewise-constant stress across an edge:
/// sigma_1 n_1 + sigma_2 n_2 on interior edges, zero on boundary edges.
struct EdgeJump {
  int edge = -1;
  Eigen::Vector2d value = Eigen::Vector2d::Zero();
};

EdgeJump stress_jump(const Mesh& mesh, int e, const Eigen::Matrix2d& sigma1,
                     const Eigen::Matrix2d& sigma2);

/// Residual indicators of a discrete field. Interior-edge jump terms are
/// split half-and-half between the two adjacent elements so the grand total
/// counts every edge once.
ErrorIndicators estimate(const ProblemSpec& problem, const DofLayout& layout,
                         const WgFunction& u_h);

}  // namespace wgfem
