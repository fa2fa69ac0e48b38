#include "wgfem/adaptivity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "wgfem/system.hpp"

namespace wgfem {

void AdaptConfig::validate() const {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("AdaptConfig: theta must lie in (0, 1)");
  if (!(tol > 0.0)) throw std::invalid_argument("AdaptConfig: tol must be positive");
}

std::vector<int> mark_dorfler(const ErrorIndicators& indicators, double theta) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("mark_dorfler: theta must lie in (0, 1)");
  if (!(indicators.total_sq > 0.0)) return {};

  std::vector<int> order(indicators.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ia = indicators.element_total(a);
    const double ib = indicators.element_total(b);
    return ia != ib ? ia > ib : a < b;
  });

  std::vector<int> marked;
  double sum = 0.0;
  const double goal = theta * indicators.total_sq;
  for (int id : order) {
    marked.push_back(id);
    sum += indicators.element_total(id);
    if (sum >= goal) break;
  }
  return marked;
}

std::vector<AdaptRecord> adaptive_loop(const ProblemSpec& problem, Domain domain,
                                       const AdaptConfig& config,
                                       const RecordCallback& on_record) {
  config.validate();
  problem.validate();

  std::vector<AdaptRecord> records;
  Mesh mesh = build_initial(domain);

  for (int iter = 0; iter < config.max_iters; ++iter) {
    const DofLayout layout = build_space(mesh, config.order);
    if (!records.empty() && layout.num_free() > config.max_dofs) break;

    const auto t0 = std::chrono::steady_clock::now();
    WgFunction u_h;
    try {
      const SparseSymSystem system = assemble(problem, layout);
      u_h = solve_spd(system, layout);
    } catch (const solve_error& err) {
      throw adapt_error(err.what(), std::move(records));
    }
    const ErrorIndicators indicators = estimate(problem, layout, u_h);

    AdaptRecord rec;
    rec.iteration = iter;
    rec.dofs = layout.num_free();
    rec.eta = std::sqrt(indicators.total_sq);
    rec.eta_c = std::sqrt(indicators.eta_c_sq_total);
    rec.eta_nc = std::sqrt(indicators.eta_nc_sq_total);
    rec.osc = std::sqrt(indicators.osc_sq_total);
    rec.stab = std::sqrt(indicators.stab_total);
    if (problem.has_exact) {
      const EnergyError err = energy_error(problem, layout, u_h);
      rec.energy_err = err.energy;
      rec.total_err = err.total;
      rec.effectivity = rec.eta > 0.0 ? err.energy / rec.eta : 0.0;
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    records.push_back(rec);
    if (on_record) on_record(rec, mesh);

    if (indicators.total_sq < config.tol) break;

    std::vector<int> marked;
    if (config.uniform) {
      marked.resize(mesh.num_triangles());
      std::iota(marked.begin(), marked.end(), 0);
    } else {
      marked = mark_dorfler(indicators, config.theta);
    }
    if (marked.empty()) break;
    mesh = bisect(mesh, marked);
  }
  return records;
}

}  // namespace wgfem
