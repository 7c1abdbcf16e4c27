#ifndef CORRCS_SOLVER_HPP
#define CORRCS_SOLVER_HPP

#include <optional>
#include <string>

#include "corrcs/prox.hpp"
#include "corrcs/rng.hpp"
#include "corrcs/types.hpp"

namespace corrcs {

struct SolverConfig {
  double rho = 1.0;
  int max_iters = 5000;
  double tol_abs = 1e-6;
  double tol_rel = 1e-5;
  double divergence_guard = 1e8;
  bool adaptive_rho = true;  // residual balancing, factor 2, trigger ratio 10
};

enum class SolveStatus { converged, max_iters, diverged };

std::string status_name(SolveStatus s);

struct SolveReport {
  Vec solution;
  double objective_value = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::max_iters;
  std::optional<double> relative_error;  // ||x_hat - x*|| / ||x*||, when x* is known
};

/**
 * Operator-splitting solver for  min f(x)  s.t.  ||Ax - y||_2 <= delta.
 *
 * Splits over (x, w, z) with w = x and z = Ax: the x-update solves the
 * normal equations (I + A^T A)x = (w - u_w) + A^T(z - u_z) against a
 * factorization computed once per call, the w-update is the kind-matched
 * prox with step 1/rho, and the z-update projects onto the delta-ball
 * around y (a constant when delta = 0). The returned solution is the final
 * w, which carries exact zeros from the prox.
 */
SolveReport solve(const SensingProblem& problem, const Regularizer& reg,
                  const SolverConfig& cfg = {});

struct SubgradientSolution {
  Vec solution;
  double objective = 0.0;       // best feasible objective seen
  bool gram_regularized = false;  // AA^T was rank-deficient and got 1e-10*I added
};

/**
 * Projected-subgradient reference solver: a subgradient step with
 * diminishing step c/sqrt(k), followed by restoration of feasibility via
 * alternating ball/affine projections backed by a factorization of AA^T.
 * Tracks the best-objective feasible iterate. Shares no code path with
 * solve(); used for cross-checks.
 */
SubgradientSolution solve_subgradient_oracle(const SensingProblem& problem,
                                             const Regularizer& reg, int iters,
                                             Substream& rng);

/// ||Ax - y||_2 - delta; nonpositive (up to tolerance) means feasible.
double check_feasibility(const SensingProblem& problem, const Vec& x);

}  // namespace corrcs

#endif  // CORRCS_SOLVER_HPP
