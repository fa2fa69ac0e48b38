#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wgfem/estimator.hpp"
#include "wgfem/problem.hpp"

namespace wgfem {

struct AdaptConfig {
  double theta = 0.5;     // bulk marking parameter in (0, 1)
  double tol = 1e-8;      // stop once eta^2 falls below this
  int max_dofs = 50000;   // free-dof cap; no finer level is solved past it
  int max_iters = 100;
  SpaceOrder order{1};
  bool uniform = false;   // refine every element instead of marking

  void validate() const;
};

/// One completed SOLVE + ESTIMATE level.
struct AdaptRecord {
  int iteration = 0;
  int dofs = 0;  // free dofs of the solved level
  double eta = 0.0;
  double eta_c = 0.0, eta_nc = 0.0, osc = 0.0, stab = 0.0;  // component square roots
  double energy_err = std::numeric_limits<double>::quiet_NaN();
  double total_err = std::numeric_limits<double>::quiet_NaN();
  double effectivity = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
};

/// Bulk marking: the smallest element set whose indicator sum reaches
/// theta * eta^2, formed as a prefix of the elements sorted by indicator
/// (descending, ties by ascending id). Empty when the estimator vanishes.
std::vector<int> mark_dorfler(const ErrorIndicators& indicators, double theta);

/// Thrown when a solve fails mid-run; carries the levels finished so far.
class adapt_error : public std::runtime_error {
 public:
  adapt_error(const std::string& what, std::vector<AdaptRecord> done)
      : std::runtime_error(what), records(std::move(done)) {}
  std::vector<AdaptRecord> records;
};

using RecordCallback = std::function<void(const AdaptRecord&, const Mesh&)>;

/// SOLVE -> ESTIMATE -> MARK -> REFINE until eta^2 < tol, the next level
/// would exceed max_dofs, or max_iters levels are done. The callback (when
/// set) sees every record as soon as its level completes.
std::vector<AdaptRecord> adaptive_loop(const ProblemSpec& problem, Domain domain,
                                       const AdaptConfig& config,
                                       const RecordCallback& on_record = {});

}  // namespace wgfem
