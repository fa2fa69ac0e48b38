#include "wgfem/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace wgfem {

std::pair<double, double> lame_constants(double youngs_modulus, double poisson_ratio) {
  if (!(youngs_modulus > 0.0)) throw std::invalid_argument("lame_constants: E must be positive");
  if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5))
    throw std::invalid_argument("lame_constants: nu must lie in [0, 0.5)");
  const double mu = youngs_modulus / (2.0 * (1.0 + poisson_ratio));
  const double lambda =
      youngs_modulus * poisson_ratio / ((1.0 + poisson_ratio) * (1.0 - 2.0 * poisson_ratio));
  return {mu, lambda};
}

void ProblemSpec::validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("ProblemSpec: mu must be positive");
  if (!(lambda >= 0.0)) throw std::invalid_argument("ProblemSpec: lambda must be nonnegative");
}

namespace {

// Polar angle measured counterclockwise from the positive x axis into
// [0, 2 pi); on the L-shaped domain the values stay within [0, 3 pi / 2].
double corner_angle(const Eigen::Vector2d& x) {
  double theta = std::atan2(x.y(), x.x());
  if (theta < 0.0) theta += 2.0 * M_PI;
  return theta;
}

ProblemSpec patch_linear(double mu, double lambda) {
  ProblemSpec p;
  p.domain = Domain::unit_square;
  p.mu = mu;
  p.lambda = lambda;
  auto u = [](const Eigen::Vector2d& x) {
    return Eigen::Vector2d(x.x() + x.y(), x.x() - x.y());
  };
  p.body_force = [](const Eigen::Vector2d&) { return Eigen::Vector2d::Zero().eval(); };
  p.boundary_data = u;
  p.has_exact = true;
  p.exact = u;
  p.exact_gradient = [](const Eigen::Vector2d&) {
    Eigen::Matrix2d g;
    g << 1, 1, 1, -1;
    return g;
  };
  p.exact_divergence = [](const Eigen::Vector2d&) { return 0.0; };
  return p;
}

ProblemSpec square_smooth(double mu, double lambda) {
  ProblemSpec p;
  p.domain = Domain::unit_square;
  p.mu = mu;
  p.lambda = lambda;
  const double pi = M_PI;
  auto w = [pi](const Eigen::Vector2d& x) { return std::sin(pi * x.x()) * std::sin(pi * x.y()); };
  p.exact = [w](const Eigen::Vector2d& x) {
    const double v = w(x);
    return Eigen::Vector2d(v, v);
  };
  p.exact_gradient = [pi](const Eigen::Vector2d& x) {
    const double wx = pi * std::cos(pi * x.x()) * std::sin(pi * x.y());
    const double wy = pi * std::sin(pi * x.x()) * std::cos(pi * x.y());
    Eigen::Matrix2d g;
    g << wx, wy, wx, wy;
    return g;
  };
  p.exact_divergence = [pi](const Eigen::Vector2d& x) {
    return pi * std::cos(pi * x.x()) * std::sin(pi * x.y()) +
           pi * std::sin(pi * x.x()) * std::cos(pi * x.y());
  };
  // f = -mu Lap(u) - (lambda + mu) grad(div u); both components coincide:
  // f_i = pi^2 (2 mu w + (lambda + mu)(w - cos(pi x) cos(pi y))).
  p.body_force = [pi, mu, lambda, w](const Eigen::Vector2d& x) {
    const double cc = std::cos(pi * x.x()) * std::cos(pi * x.y());
    const double v = pi * pi * (2.0 * mu * w(x) + (lambda + mu) * (w(x) - cc));
    return Eigen::Vector2d(v, v);
  };
  p.boundary_data = [](const Eigen::Vector2d&) { return Eigen::Vector2d::Zero().eval(); };
  p.has_exact = true;
  return p;
}

ProblemSpec lshape_singular(double mu, double lambda) {
  ProblemSpec p;
  p.domain = Domain::lshape2d;
  p.mu = mu;
  p.lambda = lambda;

  auto phi = [](const Eigen::Vector2d& x) {
    const double r = x.norm();
    if (r == 0.0) return 0.0;
    return std::pow(r, 2.0 / 3.0) * std::sin(2.0 * corner_angle(x) / 3.0);
  };
  // grad(phi) = (2/3) r^{-1/3} (-sin(theta/3), cos(theta/3)).
  auto phi_grad = [](const Eigen::Vector2d& x) {
    const double r = x.norm();
    if (r == 0.0) return Eigen::Vector2d::Zero().eval();
    const double theta = corner_angle(x);
    const double s = (2.0 / 3.0) * std::pow(r, -1.0 / 3.0);
    return Eigen::Vector2d(-s * std::sin(theta / 3.0), s * std::cos(theta / 3.0)).eval();
  };

  p.exact = [phi](const Eigen::Vector2d& x) {
    const double v = phi(x);
    return Eigen::Vector2d(v, v);
  };
  p.exact_gradient = [phi_grad](const Eigen::Vector2d& x) {
    const Eigen::Vector2d g = phi_grad(x);
    Eigen::Matrix2d out;
    out << g.x(), g.y(), g.x(), g.y();
    return out;
  };
  p.exact_divergence = [phi_grad](const Eigen::Vector2d& x) {
    const Eigen::Vector2d g = phi_grad(x);
    return g.x() + g.y();
  };
  // phi is harmonic, so f = -(lambda + mu) grad(div u) with
  //   phi_xx =  (2/9) r^{-4/3} sin(4 theta / 3) = -phi_yy,
  //   phi_xy = -(2/9) r^{-4/3} cos(4 theta / 3).
  p.body_force = [mu, lambda](const Eigen::Vector2d& x) {
    const double r = x.norm();
    if (r == 0.0) return Eigen::Vector2d::Zero().eval();
    const double theta = corner_angle(x);
    const double s = (2.0 / 9.0) * std::pow(r, -4.0 / 3.0);
    const double pxx = s * std::sin(4.0 * theta / 3.0);
    const double pxy = -s * std::cos(4.0 * theta / 3.0);
    return Eigen::Vector2d(-(lambda + mu) * (pxx + pxy), -(lambda + mu) * (pxy - pxx)).eval();
  };
  p.boundary_data = p.exact;
  p.has_exact = true;
  return p;
}

}  // namespace

ProblemSpec make_problem(BenchmarkId id, double mu, double lambda) {
  ProblemSpec p;
  switch (id) {
    case BenchmarkId::patch_linear:
      p = patch_linear(mu, lambda);
      break;
    case BenchmarkId::square_smooth:
      p = square_smooth(mu, lambda);
      break;
    case BenchmarkId::lshape2d_singular:
      p = lshape_singular(mu, lambda);
      break;
  }
  p.validate();
  return p;
}

}  // namespace wgfem
