#include "corrcs/prox.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace corrcs {

namespace {

double soft(double q, double t) noexcept {
  if (q > t) return q - t;
  if (q < -t) return q + t;
  return 0.0;
}

void require_step(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("prox: step must be positive");
}

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("prox: dimension mismatch in ") + what);
}

}  // namespace

std::string penalty_name(Penalty k) {
  switch (k) {
    case Penalty::lasso: return "lasso";
    case Penalty::max_corr: return "max_corr";
    case Penalty::l1_l1: return "l1_l1";
    case Penalty::l1_l2: return "l1_l2";
  }
  return "?";
}

Regularizer Regularizer::lasso() { return {}; }

Regularizer Regularizer::max_corr(PriorShift p) {
  Regularizer r;
  r.kind = Penalty::max_corr;
  r.shift = std::move(p);
  return r;
}

Regularizer Regularizer::l1_l1(Vec phi, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("Regularizer: lambda must be nonnegative");
  Regularizer r;
  r.kind = Penalty::l1_l1;
  r.prior = std::move(phi);
  r.lambda = lambda;
  return r;
}

Regularizer Regularizer::l1_l2(Vec phi, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("Regularizer: lambda must be nonnegative");
  Regularizer r;
  r.kind = Penalty::l1_l2;
  r.prior = std::move(phi);
  r.lambda = lambda;
  return r;
}

void Regularizer::check_dim(Index n) const {
  switch (kind) {
    case Penalty::lasso:
      break;
    case Penalty::max_corr:
      require_same_dim(shift.dim(), n, "max_corr shift");
      break;
    case Penalty::l1_l1:
    case Penalty::l1_l2:
      require_same_dim(prior.size(), n, "prior");
      break;
  }
}

double Regularizer::objective(const Vec& x) const {
  switch (kind) {
    case Penalty::lasso: return x.lpNorm<1>();
    case Penalty::max_corr: return x.lpNorm<1>() - shift.shift.dot(x);
    case Penalty::l1_l1: return x.lpNorm<1>() + lambda * (x - prior).lpNorm<1>();
    case Penalty::l1_l2: return x.lpNorm<1>() + 0.5 * lambda * (x - prior).squaredNorm();
  }
  return 0.0;
}

Vec Regularizer::subgradient(const Vec& x) const {
  const auto sgn = [](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); };
  Vec g(x.size());
  for (Index i = 0; i < x.size(); ++i) g[i] = sgn(x[i]);
  switch (kind) {
    case Penalty::lasso:
      break;
    case Penalty::max_corr:
      g -= shift.shift;
      break;
    case Penalty::l1_l1:
      for (Index i = 0; i < x.size(); ++i) g[i] += lambda * sgn(x[i] - prior[i]);
      break;
    case Penalty::l1_l2:
      g += lambda * (x - prior);
      break;
  }
  return g;
}

Vec Regularizer::prox(const Vec& q, double t) const {
  switch (kind) {
    case Penalty::lasso: return prox_l1(q, t);
    case Penalty::max_corr: return prox_max_corr(q, t, shift.shift);
    case Penalty::l1_l1: return prox_l1_l1(q, t, prior, lambda);
    case Penalty::l1_l2: return prox_l1_l2(q, t, prior, lambda);
  }
  return q;
}

Vec prox_l1(const Vec& q, double t) {
  require_step(t);
  Vec out(q.size());
  for (Index i = 0; i < q.size(); ++i) out[i] = soft(q[i], t);
  return out;
}

Vec prox_max_corr(const Vec& q, double t, const Vec& p) {
  require_step(t);
  require_same_dim(q.size(), p.size(), "max_corr shift");
  return prox_l1(q + t * p, t);
}

Vec prox_l1_l2(const Vec& q, double t, const Vec& phi, double lambda) {
  require_step(t);
  require_same_dim(q.size(), phi.size(), "l1_l2 prior");
  if (lambda < 0.0) throw std::invalid_argument("prox_l1_l2: lambda must be nonnegative");
  const double denom = 1.0 + t * lambda;
  Vec out(q.size());
  for (Index i = 0; i < q.size(); ++i)
    out[i] = soft((q[i] + t * lambda * phi[i]) / denom, t / denom);
  return out;
}

Vec prox_l1_l1(const Vec& q, double t, const Vec& phi, double lambda) {
  require_step(t);
  require_same_dim(q.size(), phi.size(), "l1_l1 prior");
  if (lambda < 0.0) throw std::invalid_argument("prox_l1_l1: lambda must be nonnegative");
  Vec out(q.size());
  for (Index i = 0; i < q.size(); ++i) {
    const double qi = q[i];
    const double fi = phi[i];
    // minimizer sits at a kink or at a stationary point of a smooth piece
    const std::array<double, 6> candidates = {
        0.0, fi, qi - t * (1.0 + lambda), qi - t * (1.0 - lambda),
        qi + t * (1.0 + lambda), qi + t * (1.0 - lambda)};
    double best_w = 0.0;
    double best_val = std::numeric_limits<double>::infinity();
    for (double w : candidates) {
      const double val =
          std::abs(w) + lambda * std::abs(w - fi) + (w - qi) * (w - qi) / (2.0 * t);
      if (val < best_val) {
        best_val = val;
        best_w = w;
      }
    }
    out[i] = best_w;
  }
  return out;
}

Vec project_l2_ball(const Vec& z, const Vec& center, double radius) {
  require_same_dim(z.size(), center.size(), "ball projection");
  if (radius < 0.0) throw std::invalid_argument("project_l2_ball: radius must be nonnegative");
  if (radius == 0.0) return center;
  const double d = (z - center).norm();
  if (d <= radius) return z;
  return center + (radius / d) * (z - center);
}

}  // namespace corrcs
