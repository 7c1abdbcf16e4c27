#ifndef CORRCS_PROX_HPP
#define CORRCS_PROX_HPP

#include <string>

#include "corrcs/types.hpp"

namespace corrcs {

/// The four objectives handled by the solver. All of them are of the form
/// f(x) = ||x||_1 + extra, minimized subject to ||Ax - y||_2 <= delta.
enum class Penalty { lasso, max_corr, l1_l1, l1_l2 };

std::string penalty_name(Penalty k);

/**
 * Objective description: which penalty, plus the data it needs.
 * max_corr uses the combined shift p = lambda*phi; l1_l1 and l1_l2 keep
 * phi and lambda separate because they enter the objective separately.
 */
struct Regularizer {
  Penalty kind = Penalty::lasso;
  PriorShift shift;   // p, used by max_corr
  Vec prior;          // phi, used by l1_l1 / l1_l2
  double lambda = 0.0;

  static Regularizer lasso();
  static Regularizer max_corr(PriorShift p);
  static Regularizer l1_l1(Vec phi, double lambda);
  static Regularizer l1_l2(Vec phi, double lambda);

  /// f(x) for this objective.
  double objective(const Vec& x) const;
  /// One element of the subdifferential of f at x (sign(0) taken as 0).
  Vec subgradient(const Vec& x) const;
  /// prox_{t f}(q), dispatching to the closed forms below.
  Vec prox(const Vec& q, double t) const;

  void check_dim(Index n) const;
};

/// Entrywise soft thresholding: sign(q_i) * max(|q_i| - t, 0).
Vec prox_l1(const Vec& q, double t);

/// prox of ||w||_1 - <p, w>: the linear term shifts the argument,
/// prox_l1(q + t*p, t).
Vec prox_max_corr(const Vec& q, double t, const Vec& p);

/// prox of ||w||_1 + (lambda/2)||w - phi||_2^2, entrywise
/// soft((q_i + t*lambda*phi_i)/(1 + t*lambda), t/(1 + t*lambda)).
Vec prox_l1_l2(const Vec& q, double t, const Vec& phi, double lambda);

/// prox of ||w||_1 + lambda*||w - phi||_1. Entrywise minimizer of
/// |w| + lambda|w - phi_i| + (w - q_i)^2/(2t), found by evaluating the
/// objective at the two kinks and the four smooth-piece stationary points.
Vec prox_l1_l1(const Vec& q, double t, const Vec& phi, double lambda);

/// Euclidean projection onto the ball {z : ||z - center|| <= radius}.
Vec project_l2_ball(const Vec& z, const Vec& center, double radius);

}  // namespace corrcs

#endif  // CORRCS_PROX_HPP
