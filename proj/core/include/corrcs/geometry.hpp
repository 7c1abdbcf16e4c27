#ifndef CORRCS_GEOMETRY_HPP
#define CORRCS_GEOMETRY_HPP

#include <cstdint>
#include <stdexcept>

#include "corrcs/rng.hpp"
#include "corrcs/types.hpp"

namespace corrcs {

/// Default sub-Gaussian (Orlicz psi_2) norm of a +/-1 entry under
/// E exp(x^2/t^2) <= 2, i.e. 1/sqrt(ln 2).
inline constexpr double kBernoulliSubgaussianNorm = 1.2011224087864498;

/**
 * Describes the shifted subdifferential S = d||x*||_1 - p at a sparse
 * point: the single value sign(x*_i) - p_i on the support, the interval
 * [-1 - p_i, 1 - p_i] off it. The normal cone of the shifted objective is
 * cone{S} whenever 0 lies outside S.
 */
struct ConeDescriptor {
  SparseSignal signal;
  PriorShift shift;

  void validate() const {
    if (signal.dim() != shift.dim())
      throw std::invalid_argument("ConeDescriptor: signal/shift dimension mismatch");
  }
};

/// Thrown when an operation requires 0 outside the shifted subdifferential
/// and the condition fails (the conical-hull identity breaks down there).
struct hypothesis_error : std::domain_error {
  using std::domain_error::domain_error;
};

struct WidthEstimate {
  double mean_sq_dist = 0.0;   // Monte-Carlo estimate of E dist^2(g, N_f)
  double std_error = 0.0;
  std::int64_t samples = 0;
  double closed_form_bound = 0.0;  // n - (2/pi)(n-s)^2/v, the quadratic bound at its minimizer
};

/// v = max squared norm over the shifted subdifferential:
/// sum_I (sign(x*_i) - p_i)^2 + sum_{I^c, p_i<0} (1 - p_i)^2
/// + sum_{I^c, p_i>=0} (1 + p_i)^2.
double compute_v(const ConeDescriptor& cone);

/// True iff 0 is an element of S, i.e. p_i = sign(x*_i) on the support and
/// |p_i| <= 1 off it.
bool zero_in_shifted_subdiff(const ConeDescriptor& cone);

/// Closed-form bound on the squared spherical width of the descent cone:
/// n * (1 - (n/v)(2/pi)(1 - s/n)^2), clamped below at zero.
double width_bound_sq(Index n, Index s, double v);

/// (C*K^2*sqrt(width_sq) + eps)^2, the measurement-count prediction.
double sample_size_bound(double width_sq, double K, double C, double eps);

/// Euclidean distance (not squared) from g to cone{S}. Minimizes
/// F(t) = dist^2(g, t*S) over t >= 0 by a doubling bracket followed by
/// golden-section search; F is convex in t.
double dist_to_normal_cone(const Vec& g, const ConeDescriptor& cone);

/// dist^2(g, t*S) for one scale t >= 0; exposed for search diagnostics.
double scaled_set_dist_sq(const Vec& g, const ConeDescriptor& cone, double t);

/// Monte-Carlo estimate of E dist^2(g, N_f) over standard normal g, with
/// standard error and the closed-form comparator. Sample i draws from
/// rng.fork(i), so evaluation order cannot change the result.
WidthEstimate mc_width_estimate(const ConeDescriptor& cone, std::int64_t samples,
                                Substream& rng);

/// One-sided directional derivative of f(x) = ||x||_1 - <p, x> at x* along d:
/// sum_I sign(x*_i) d_i + sum_{I^c} |d_i| - <p, d>. Nonpositive values mean
/// d lies in the closed descent cone.
double directional_derivative(const ConeDescriptor& cone, const Vec& d);

/// Minimum of ||A h||_2 over sampled unit-norm descent directions h; an
/// upper bound on the restricted infimum over the whole cone section.
double empirical_restricted_infimum(const ConeDescriptor& cone, const Mat& A,
                                    int samples, Substream& rng);

/// Gaussian complexity from width: gamma(E) <= 2 w(E) + ||y||_2 for y in E.
double gamma_upper_from_width(double width, double witness_norm);

}  // namespace corrcs

#endif  // CORRCS_GEOMETRY_HPP
