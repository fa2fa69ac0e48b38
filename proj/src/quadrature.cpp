#include "wgfem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace wgfem {

namespace {

// Legendre polynomial value and derivative at x via the three-term recurrence.
void legendre_eval(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = p0;
    dp = 0.0;
    return;
  }
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

void gauss_legendre_unit(int n, Eigen::VectorXd& points, Eigen::VectorXd& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_unit: need n >= 1");
  points.resize(n);
  weights.resize(n);
  for (int i = 0; i < n / 2 + n % 2; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre_eval(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_eval(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    points(i) = 0.5 * (1.0 + x);
    weights(i) = 0.5 * w;
    points(n - 1 - i) = 0.5 * (1.0 - x);
    weights(n - 1 - i) = 0.5 * w;
  }
}

QuadratureRule triangle_rule(int degree) {
  if (degree < 0 || degree > max_triangle_degree)
    throw std::invalid_argument("triangle_rule: unsupported degree");
  const int d = std::max(degree, 1);
  // Collapsed-square product rule: x = u, y = v(1-u), Jacobian (1-u).
  // In u the integrand has degree d+1 (Jacobian included), in v degree d.
  const int nu = (d + 2 + 1) / 2;
  const int nv = (d + 1 + 1) / 2;
  Eigen::VectorXd pu, wu, pv, wv;
  gauss_legendre_unit(nu, pu, wu);
  gauss_legendre_unit(nv, pv, wv);

  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::triangle;
  rule.exactness = degree;
  rule.points.resize(nu * nv, 3);
  rule.weights.resize(nu * nv);
  int q = 0;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j, ++q) {
      const double x = pu(i);
      const double y = pv(j) * (1.0 - pu(i));
      rule.points(q, 0) = 1.0 - x - y;
      rule.points(q, 1) = x;
      rule.points(q, 2) = y;
      rule.weights(q) = wu(i) * wv(j) * (1.0 - pu(i));
    }
  }
  return rule;
}

QuadratureRule edge_rule(int degree) {
  if (degree < 0 || degree > max_edge_degree)
    throw std::invalid_argument("edge_rule: unsupported degree");
  const int n = (degree + 1 + 1) / 2;
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::edge;
  rule.exactness = degree;
  Eigen::VectorXd p, w;
  gauss_legendre_unit(std::max(n, 1), p, w);
  rule.points = p;
  rule.weights = w;
  return rule;
}

}  // namespace wgfem
