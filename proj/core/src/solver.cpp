#include "corrcs/solver.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace corrcs {

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iters: return "max_iters";
    case SolveStatus::diverged: return "diverged";
  }
  return "?";
}

SolveReport solve(const SensingProblem& problem, const Regularizer& reg,
                  const SolverConfig& cfg) {
  problem.validate();
  const Mat& A = problem.matrix;
  const Vec& y = problem.observation;
  const double delta = problem.noise_bound;
  const Index n = A.cols();
  const Index m = A.rows();
  reg.check_dim(n);
  if (cfg.max_iters < 1 || !(cfg.tol_abs > 0.0) || !(cfg.tol_rel > 0.0))
    throw std::invalid_argument("solve: bad solver configuration");

  // (I + A^T A) is SPD regardless of the rank of A; factor once.
  Mat gram = A.transpose() * A;
  gram.diagonal().array() += 1.0;
  const Eigen::LLT<Mat> llt(gram);

  Vec x = Vec::Zero(n), w = Vec::Zero(n), u_w = Vec::Zero(n);
  Vec z = Vec::Zero(m), u_z = Vec::Zero(m);
  double rho = cfg.rho;

  SolveReport report;
  report.status = SolveStatus::max_iters;
  report.iterations = cfg.max_iters;

  const double sqrt_nm = std::sqrt(static_cast<double>(n + m));
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  for (int k = 1; k <= cfg.max_iters; ++k) {
    x = llt.solve((w - u_w) + A.transpose() * (z - u_z));
    const Vec ax = A * x;

    const Vec w_prev = std::move(w);
    const Vec z_prev = std::move(z);
    w = reg.prox(x + u_w, 1.0 / rho);
    z = project_l2_ball(ax + u_z, y, delta);
    u_w += x - w;
    u_z += ax - z;

    const double r_primal = std::sqrt((x - w).squaredNorm() + (ax - z).squaredNorm());
    const double r_dual = rho * ((w - w_prev) + A.transpose() * (z - z_prev)).norm();
    const double eps_primal =
        sqrt_nm * cfg.tol_abs +
        cfg.tol_rel * std::sqrt(std::max(x.squaredNorm() + ax.squaredNorm(),
                                         w.squaredNorm() + z.squaredNorm()));
    const double eps_dual =
        sqrt_n * cfg.tol_abs +
        cfg.tol_rel * rho *
            std::sqrt(u_w.squaredNorm() + (A.transpose() * u_z).squaredNorm());

    if (r_primal <= eps_primal && r_dual <= eps_dual) {
      report.status = SolveStatus::converged;
      report.iterations = k;
      report.primal_residual = r_primal;
      report.dual_residual = r_dual;
      break;
    }
    report.primal_residual = r_primal;
    report.dual_residual = r_dual;

    if (x.norm() > cfg.divergence_guard) {
      report.status = SolveStatus::diverged;
      report.iterations = k;
      break;
    }

    // residual balancing; the x-update system does not depend on rho, so
    // only the scaled duals need rescaling. Balancing runs on a fixed
    // cadence and freezes eventually, otherwise the dual rescaling can
    // drive a limit cycle instead of convergence.
    if (cfg.adaptive_rho && k % 25 == 0 && k <= 1000) {
      if (r_primal > 10.0 * r_dual) {
        rho *= 2.0;
        u_w *= 0.5;
        u_z *= 0.5;
      } else if (r_dual > 10.0 * r_primal) {
        rho *= 0.5;
        u_w *= 2.0;
        u_z *= 2.0;
      }
    }
  }

  report.solution = std::move(w);
  report.objective_value = reg.objective(report.solution);
  return report;
}

namespace {

/// Largest singular value of A via power iteration on A^T A.
double operator_norm_estimate(const Mat& A, int iters, Substream& rng) {
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  Vec v(A.cols());
  for (Index i = 0; i < v.size(); ++i) v[i] = rng.next_gaussian();
  double norm = v.norm();
  if (norm == 0.0) return 0.0;
  v /= norm;
  double sigma = 0.0;
  for (int k = 0; k < iters; ++k) {
    Vec av = A * v;
    sigma = av.norm();
    Vec atav = A.transpose() * av;
    const double s = atav.norm();
    if (s == 0.0) return 0.0;
    v = atav / s;
  }
  return sigma;
}

}  // namespace

SubgradientSolution solve_subgradient_oracle(const SensingProblem& problem,
                                             const Regularizer& reg, int iters,
                                             Substream& rng) {
  problem.validate();
  const Mat& A = problem.matrix;
  const Vec& y = problem.observation;
  const double delta = problem.noise_bound;
  const Index n = A.cols();
  const Index m = A.rows();
  reg.check_dim(n);

  SubgradientSolution result;

  // Factor AA^T for the affine correction; fall back to a ridge when the
  // rows are linearly dependent.
  Eigen::LLT<Mat> llt;
  if (m > 0) {
    Mat gram = A * A.transpose();
    llt.compute(gram);
    if (llt.info() != Eigen::Success) {
      gram.diagonal().array() += 1e-10;
      llt.compute(gram);
      result.gram_regularized = true;
    }
  }

  // Feasibility restoration: pull Ax back onto the ball, then match it
  // exactly with a least-norm correction. One pass lands inside the ball.
  const auto project_feasible = [&](Vec x) -> Vec {
    if (m == 0) return x;
    for (int pass = 0; pass < 64; ++pass) {
      const Vec r = A * x - y;
      const double dist = r.norm();
      if (dist <= delta * (1.0 + 1e-12) + 1e-13) break;
      const Vec target = (delta == 0.0) ? y : Vec(y + (delta / dist) * r);
      x -= A.transpose() * llt.solve(A * x - target);
    }
    return x;
  };

  const double sigma = operator_norm_estimate(A, 20, rng);
  const double c = sigma > 1e-12 ? 1.0 / sigma : 1.0;

  Vec x = project_feasible(Vec::Zero(n));
  Vec best = x;
  double best_obj = reg.objective(x);

  for (int k = 1; k <= iters; ++k) {
    const Vec g = reg.subgradient(x);
    x = project_feasible(x - (c / std::sqrt(static_cast<double>(k))) * g);
    const double obj = reg.objective(x);
    if (obj < best_obj) {
      best_obj = obj;
      best = x;
    }
  }

  result.solution = std::move(best);
  result.objective = best_obj;
  return result;
}

double check_feasibility(const SensingProblem& problem, const Vec& x) {
  problem.validate();
  if (x.size() != problem.cols())
    throw std::invalid_argument("check_feasibility: dimension mismatch");
  return (problem.matrix * x - problem.observation).norm() - problem.noise_bound;
}

}  // namespace corrcs
