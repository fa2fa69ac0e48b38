#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>

#include "wgfem/adaptivity.hpp"

namespace {

struct RunConfig {
  std::string problem;
  double theta = 0.5;
  double tol = 1e-8;
  int max_dofs = 50000;
  int max_iters = 100;
  int k = 1;
  double mu = 0.5;
  double lambda = 1.0;
  std::string out_csv;
  std::string mesh_dir;
  bool uniform = false;
};

const std::map<std::string, wgfem::BenchmarkId> problem_names = {
    {"patch", wgfem::BenchmarkId::patch_linear},
    {"square-smooth", wgfem::BenchmarkId::square_smooth},
    {"lshape2d", wgfem::BenchmarkId::lshape2d_singular},
};

void write_row(std::ostream& os, const wgfem::AdaptRecord& r) {
  os << r.iteration << ',' << r.dofs;
  os << std::scientific << std::setprecision(16);
  for (double v : {r.eta, r.eta_c, r.eta_nc, r.osc, r.stab, r.energy_err, r.total_err,
                   r.effectivity})
    os << ',' << v;
  os << '\n';
  os.flush();
}

int run_solve(const RunConfig& cfg) {
  const auto problem = wgfem::make_problem(problem_names.at(cfg.problem), cfg.mu, cfg.lambda);

  wgfem::AdaptConfig adapt;
  adapt.theta = cfg.theta;
  adapt.tol = cfg.tol;
  adapt.max_dofs = cfg.max_dofs;
  adapt.max_iters = cfg.max_iters;
  adapt.order.k = cfg.k;
  adapt.uniform = cfg.uniform;

  std::ofstream csv(cfg.out_csv);
  if (!csv) {
    std::cerr << "error: cannot open " << cfg.out_csv << " for writing\n";
    return 1;
  }
  csv << "iter,dofs,eta,eta_c,eta_nc,osc,stab,energy_err,total_err,effectivity\n";
  csv.flush();

  if (!cfg.mesh_dir.empty()) std::filesystem::create_directories(cfg.mesh_dir);
  const auto on_record = [&](const wgfem::AdaptRecord& rec, const wgfem::Mesh& mesh) {
    write_row(csv, rec);
    if (!cfg.mesh_dir.empty()) {
      std::ofstream mf(std::filesystem::path(cfg.mesh_dir) /
                       ("mesh_" + std::to_string(rec.iteration) + ".txt"));
      wgfem::write_mesh(mf, mesh);
    }
  };

  try {
    const auto records = wgfem::adaptive_loop(problem, problem.domain, adapt, on_record);
    std::cerr << "completed " << records.size() << " level(s), final eta = "
              << (records.empty() ? 0.0 : records.back().eta) << '\n';
  } catch (const wgfem::adapt_error& err) {
    std::cerr << "solver failure: " << err.what() << " (" << err.records.size()
              << " level(s) written)\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive weak Galerkin solver for 2D linear elasticity"};
  app.require_subcommand(1);

  RunConfig cfg;
  CLI::App* solve = app.add_subcommand("solve", "Run a benchmark problem");
  solve->add_option("--problem", cfg.problem, "Benchmark: patch, square-smooth, lshape2d")
      ->required()
      ->check(CLI::IsMember({"patch", "square-smooth", "lshape2d"}));
  solve->add_option("--theta", cfg.theta, "Bulk marking parameter in (0,1)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  solve->add_option("--tol", cfg.tol, "Stopping threshold on eta^2")
      ->check(CLI::PositiveNumber);
  solve->add_option("--max-dofs", cfg.max_dofs, "Free-dof cap")->check(CLI::PositiveNumber);
  solve->add_option("--max-iters", cfg.max_iters, "Adaptive iteration cap")
      ->check(CLI::PositiveNumber);
  solve->add_option("--k", cfg.k, "Polynomial order")->check(CLI::IsMember({1}));
  solve->add_option("--mu", cfg.mu, "First Lame constant")->check(CLI::PositiveNumber);
  solve->add_option("--lambda", cfg.lambda, "Second Lame constant")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--out", cfg.out_csv, "Convergence CSV path")->required();
  solve->add_option("--mesh-out", cfg.mesh_dir, "Directory for per-level mesh snapshots");
  solve->add_flag("--uniform", cfg.uniform, "Refine every element instead of marking");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run_solve(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
