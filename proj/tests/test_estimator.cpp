#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wgfem/estimator.hpp"
#include "wgfem/system.hpp"

using namespace wgfem;

TEST_CASE("stress jump across edges") {
  SUBCASE("equal stresses cancel (opposite normals)") {
    const Mesh mesh = build_initial(Domain::unit_square);
    int interior = -1;
    for (int e = 0; e < mesh.num_edges(); ++e)
      if (!mesh.edge(e).boundary) interior = e;
    REQUIRE(interior >= 0);
    const EdgeJump j =
        stress_jump(mesh, interior, Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity());
    CHECK(j.value.norm() <= 1e-15);
  }
  SUBCASE("one-sided stress across a vertical edge") {
    // Two triangles sharing the vertical edge x = 1; the left one sees n = (1, 0).
    const Mesh mesh({{0, 0}, {1, -1}, {1, 1}, {2, 0}},
                    {Triangle{{0, 1, 2}, 0, 0}, Triangle{{1, 3, 2}, 0, 0}});
    int shared = -1;
    for (int e = 0; e < mesh.num_edges(); ++e)
      if (!mesh.edge(e).boundary) shared = e;
    REQUIRE(shared >= 0);
    REQUIRE(mesh.edge(shared).tri[0] == 0);
    Eigen::Matrix2d s1;
    s1 << 1, 0, 0, 0;
    const EdgeJump j = stress_jump(mesh, shared, s1, Eigen::Matrix2d::Zero());
    CHECK(j.value.x() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(j.value.y() == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("boundary edges always report zero") {
    const Mesh mesh = wgtest::reference_triangle();
    Eigen::Matrix2d s1;
    s1 << 3, 1, -2, 5;
    for (int e = 0; e < mesh.num_edges(); ++e)
      CHECK(stress_jump(mesh, e, s1, s1).value.norm() == 0.0);
  }
}

TEST_CASE("all indicators vanish for the trivial problem") {
  ProblemSpec p = make_problem(BenchmarkId::patch_linear, 0.5, 1.0);
  p.boundary_data = [](const Eigen::Vector2d&) { return Eigen::Vector2d::Zero().eval(); };
  const Mesh mesh = build_initial(Domain::unit_square);
  const DofLayout layout = build_space(mesh, SpaceOrder{1});
  const WgFunction zero(layout, Eigen::VectorXd::Zero(layout.total()));
  const ErrorIndicators ind = estimate(p, layout, zero);
  CHECK(ind.total_sq == 0.0);
  CHECK(ind.eta_c_sq_total == 0.0);
  CHECK(ind.eta_nc_sq_total == 0.0);
  CHECK(ind.osc_sq_total == 0.0);
  CHECK(ind.stab_total == 0.0);
}

TEST_CASE("element residual of a constant force on the reference triangle") {
  // h^2 (1/mu + 1/(mu+lambda)) ||f||^2 = 2 * (2 + 2/3) * 0.5 = 8/3; f is
  // constant so the oscillation term vanishes.
  ProblemSpec p = make_problem(BenchmarkId::patch_linear, 0.5, 1.0);
  p.body_force = [](const Eigen::Vector2d&) { return Eigen::Vector2d(1.0, 0.0); };
  const Mesh mesh = wgtest::reference_triangle();
  const DofLayout layout = build_space(mesh, SpaceOrder{1});
  const WgFunction zero(layout, Eigen::VectorXd::Zero(layout.total()));
  const ErrorIndicators ind = estimate(p, layout, zero);
  CHECK(ind.eta_c_sq(0) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  CHECK(ind.osc_sq(0) <= 1e-15);
  CHECK(ind.eta_nc_sq(0) == 0.0);  // no interior edges
  CHECK(ind.stab(0) == 0.0);
  CHECK(ind.total_sq == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("projected traces kill the stabilizer indicator") {
  const Mesh mesh = bisect(build_initial(Domain::unit_square), {0});
  const DofLayout layout = build_space(mesh, SpaceOrder{1});
  const ProblemSpec p = make_problem(BenchmarkId::patch_linear, 0.5, 1.0);
  const WgFunction v = interpolate(p.exact, layout);
  const ErrorIndicators ind = estimate(p, layout, v);
  for (int t = 0; t < mesh.num_triangles(); ++t) CHECK(ind.stab(t) <= 1e-14);
}

TEST_CASE("interior edges are counted exactly once in the jump total") {
  const ProblemSpec p = make_problem(BenchmarkId::lshape2d_singular, 0.5, 1.0);
  const Mesh mesh = bisect(build_initial(Domain::lshape2d), {0, 2, 4});
  const DofLayout layout = build_space(mesh, SpaceOrder{1});
  std::mt19937 rng(71);
  const WgFunction v(layout, wgtest::random_vector(rng, layout.total()));
  const ErrorIndicators ind = estimate(p, layout, v);

  // Direct per-edge oracle: mu^{-1} sum_e h_e ||J_e||^2_e over interior edges.
  std::vector<Eigen::Matrix2d> stress(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const ElementWeakOps ops = element_weak_ops(mesh, t);
    const auto local = layout.gather(v.coeffs, t);
    stress[t] = p.mu * weak_gradient(ops, local) +
                (p.mu + p.lambda) * weak_divergence(ops, local) * Eigen::Matrix2d::Identity();
  }
  double oracle = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (edge.boundary) continue;
    const Eigen::Vector2d j = stress_jump(mesh, e, stress[edge.tri[0]], stress[edge.tri[1]]).value;
    const double h = mesh.edge_length(e);
    oracle += h * (j.squaredNorm() * h) / p.mu;
  }
  CHECK(ind.eta_nc_sq_total == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("estimator is homogeneous of degree one") {
  const ProblemSpec p = make_problem(BenchmarkId::square_smooth, 0.5, 1.0);
  const Mesh mesh = bisect(build_initial(Domain::unit_square), {0, 1});
  const DofLayout layout = build_space(mesh, SpaceOrder{1});
  const SparseSymSystem sys = assemble(p, layout);
  const WgFunction u = solve_spd(sys, layout);

  const double c = 3.7;
  ProblemSpec scaled = p;
  scaled.body_force = [&p, c](const Eigen::Vector2d& x) { return (c * p.body_force(x)).eval(); };
  scaled.boundary_data = [&p, c](const Eigen::Vector2d& x) {
    return (c * p.boundary_data(x)).eval();
  };
  const WgFunction cu(layout, (c * u.coeffs).eval());

  const double eta = std::sqrt(estimate(p, layout, u).total_sq);
  const double eta_scaled = std::sqrt(estimate(scaled, layout, cu).total_sq);
  CHECK(eta_scaled == doctest::Approx(c * eta).epsilon(1e-12));

  // The solved problem scales the same way up to solver tolerance.
  const WgFunction u_scaled = solve_spd(assemble(scaled, layout), layout);
  const double eta_solved = std::sqrt(estimate(scaled, layout, u_scaled).total_sq);
  CHECK(eta_solved == doctest::Approx(c * eta).epsilon(1e-9));
}

TEST_CASE("estimator is strictly positive for the singular benchmark") {
  const ProblemSpec p = make_problem(BenchmarkId::lshape2d_singular, 0.5, 1.0);
  const Mesh mesh = build_initial(Domain::lshape2d);
  const DofLayout layout = build_space(mesh, SpaceOrder{1});
  const WgFunction u = solve_spd(assemble(p, layout), layout);
  const ErrorIndicators ind = estimate(p, layout, u);
  CHECK(ind.total_sq > 0.0);
  for (int t = 0; t < ind.size(); ++t) {
    CHECK(ind.eta_c_sq(t) >= 0.0);
    CHECK(ind.eta_nc_sq(t) >= 0.0);
    CHECK(ind.osc_sq(t) >= 0.0);
    CHECK(ind.stab(t) >= 0.0);
  }
  const double component_sum =
      ind.eta_c_sq_total + ind.eta_nc_sq_total + ind.osc_sq_total + ind.stab_total;
  CHECK(ind.total_sq == doctest::Approx(component_sum).epsilon(1e-12));
  double element_sum = 0.0;
  for (int t = 0; t < ind.size(); ++t) element_sum += ind.element_total(t);
  CHECK(element_sum == doctest::Approx(ind.total_sq).epsilon(1e-12));
}
