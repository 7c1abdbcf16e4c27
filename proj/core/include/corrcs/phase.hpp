#ifndef CORRCS_PHASE_HPP
#define CORRCS_PHASE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corrcs/csv.hpp"
#include "corrcs/generate.hpp"
#include "corrcs/solver.hpp"

namespace corrcs {

enum class Method { lasso, max_corr, l1_l1, l1_l2 };

std::string method_name(Method m);
Method parse_method(const std::string& token);  // lasso | mc | l1l1 | l1l2

/**
 * Protocol for one phase-transition sweep: for every grid cell (s, m) with
 * s, m in {0, step, 2*step, ...} up to n, run trials_per_cell independent
 * trials and count recoveries with relative error below tol.
 */
struct PhaseProtocol {
  int n = 128;
  int grid_step = 2;
  int trials_per_cell = 50;
  double tol = 1e-2;
  double delta = 0.0;
  PriorCase case_tag = PriorCase::A;
  Method method = Method::max_corr;
  std::uint64_t base_seed = 0;
  SolverConfig solver;

  void validate() const;
  std::vector<int> axis() const;  // {0, step, 2*step, ...} up to n
};

/// Success counts plus the axis they live on; all a contour needs.
struct GridTable {
  std::vector<int> axis;
  std::vector<int> counts;  // row-major: counts[si * axis.size() + mi]
  int trials_per_cell = 0;

  int count(std::size_t si, std::size_t mi) const {
    return counts[si * axis.size() + mi];
  }
};

struct PhaseGrid {
  PhaseProtocol protocol;
  GridTable table;
  std::int64_t diverged_trials = 0;
  std::int64_t max_iter_trials = 0;
};

struct TrialResult {
  bool success = false;
  SolveStatus status = SolveStatus::max_iters;
};

/// One trial at (s, m): instance and prior are redrawn from the substream
/// derived from (base_seed, s, m, trial_index, case_tag), so results do not
/// depend on execution order. A diverged solve counts as a failed trial.
TrialResult run_trial_detailed(const PhaseProtocol& protocol, int s, int m,
                               int trial_index);
bool run_trial(const PhaseProtocol& protocol, int s, int m, int trial_index);

/// Fill the whole grid; identical output for identical protocol regardless
/// of the thread budget (threads <= 0 means one worker per hardware thread).
PhaseGrid run_phase_grid(const PhaseProtocol& protocol, int threads = 1);

struct ContourPoint {
  int s = 0;
  int m_star = 0;
};

/// For each s column, the smallest grid m whose success fraction reaches
/// `level` and stays there at the next grid point (single-cell flips are
/// debounced; the last grid point qualifies on its own). Columns with no
/// qualifying m are omitted.
std::vector<ContourPoint> extract_contour(const GridTable& grid, double level);

struct MethodComparison {
  std::vector<int> s_axis;
  std::vector<Method> methods;
  // m_star[k][si] for method k at s_axis[si]; empty optional = no contour
  std::vector<std::vector<std::optional<int>>> m_star;
};

/// Contours for several methods on a shared seed set. All protocols must
/// agree on (n, step, trials, tol, base_seed, case_tag) so the per-trial
/// instances coincide across methods (common random numbers).
MethodComparison compare_methods(const std::vector<PhaseProtocol>& protocols,
                                 double level, int threads = 1);

/// CSV/sidecar renderings used by the command line tool.
std::string phase_grid_csv(const PhaseGrid& grid);
GridTable parse_grid_table_csv(const std::string& text);
std::string contour_csv(const std::vector<ContourPoint>& contour);
std::string comparison_csv(const MethodComparison& cmp);
KeyValues phase_metadata(const PhaseGrid& grid);

}  // namespace corrcs

#endif  // CORRCS_PHASE_HPP
