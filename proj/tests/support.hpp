#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "wgfem/mesh.hpp"
#include "wgfem/problem.hpp"
#include "wgfem/quadrature.hpp"
#include "wgfem/space.hpp"
#include "wgfem/weak_ops.hpp"

namespace wgtest {

inline wgfem::Mesh make_triangle_mesh(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                      const Eigen::Vector2d& c) {
  wgfem::Triangle tri;
  tri.v = {0, 1, 2};
  // Longest-edge label, matching the initial-mesh convention.
  const std::array<Eigen::Vector2d, 3> p{a, b, c};
  double best = -1.0;
  for (int le = 0; le < 3; ++le) {
    const double len = (p[(le + 2) % 3] - p[(le + 1) % 3]).norm();
    if (len > best) {
      best = len;
      tri.refinement_edge = le;
    }
  }
  return wgfem::Mesh({a, b, c}, {tri});
}

inline wgfem::Mesh reference_triangle() {
  return make_triangle_mesh({0, 0}, {1, 0}, {0, 1});
}

/// Random counter-clockwise triangle in [-1,1]^2 with area bounded away from 0.
inline wgfem::Mesh random_triangle(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  while (true) {
    Eigen::Vector2d a(dist(rng), dist(rng));
    Eigen::Vector2d b(dist(rng), dist(rng));
    Eigen::Vector2d c(dist(rng), dist(rng));
    const double doubled = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    if (doubled < 0.0) std::swap(b, c);
    if (std::abs(doubled) > 0.1) return make_triangle_mesh(a, b, c);
  }
}

inline Eigen::VectorXd random_vector(std::mt19937& rng, int n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Direct-quadrature evaluation of a_w(w, v), independent of the assembly
/// path: weak operators come from the generic local solve and the stabilizer
/// re-projects the interior trace as a plain function before integrating
/// pointwise.
inline double aw_direct(const wgfem::ProblemSpec& problem, const wgfem::DofLayout& layout,
                        const Eigen::VectorXd& w, const Eigen::VectorXd& v) {
  using namespace wgfem;
  const Mesh& mesh = layout.mesh();
  const QuadratureRule rule = edge_rule(edge_quad_degree);
  double result = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementWeakOps ops = element_weak_ops_generic(mesh, t);
    const auto wl = layout.gather(w, t);
    const auto vl = layout.gather(v, t);
    result += problem.mu * mesh.area(t) *
              (weak_gradient(ops, wl).cwiseProduct(weak_gradient(ops, vl))).sum();
    result += (problem.mu + problem.lambda) * mesh.area(t) * weak_divergence(ops, wl) *
              weak_divergence(ops, vl);

    for (int le = 0; le < 3; ++le) {
      const int e = mesh.triangle_edge(t, le);
      const EdgeBasis basis(mesh, e);
      const auto trace_w = [&](const Eigen::Vector2d& x) {
        return interior_value(layout, w, t, x);
      };
      const auto trace_v = [&](const Eigen::Vector2d& x) {
        return interior_value(layout, v, t, x);
      };
      const Eigen::Vector3d qw = project_edge(trace_w, basis);
      const Eigen::Vector3d qv = project_edge(trace_v, basis);
      const int off = layout.edge_offset(e);
      double edge_term = 0.0;
      for (int q = 0; q < rule.size(); ++q) {
        const Eigen::Vector2d x = basis.point(rule.points(q, 0));
        Eigen::Vector2d dw = Eigen::Vector2d::Zero();
        Eigen::Vector2d dv = Eigen::Vector2d::Zero();
        for (int i = 0; i < 3; ++i) {
          dw += (qw(i) - w(off + i)) * basis.evaluate(i, x);
          dv += (qv(i) - v(off + i)) * basis.evaluate(i, x);
        }
        edge_term += rule.weights(q) * basis.length() * dw.dot(dv);
      }
      result += edge_term / mesh.diameter(t);
    }
  }
  return result;
}

/// Interior-trace jump of v_0 across interior edge e at point x; zero on the
/// boundary (the estimator never uses it, only the penalty lemma does).
inline Eigen::Vector2d interior_trace_jump(const wgfem::DofLayout& layout,
                                           const Eigen::VectorXd& v, int e,
                                           const Eigen::Vector2d& x) {
  const wgfem::Edge& edge = layout.mesh().edge(e);
  if (edge.boundary) return Eigen::Vector2d::Zero();
  return wgfem::interior_value(layout, v, edge.tri[0], x) -
         wgfem::interior_value(layout, v, edge.tri[1], x);
}

}  // namespace wgtest
