#include "corrcs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace corrcs {

namespace {

constexpr double kTwoOverPi = 2.0 / 3.14159265358979323846;

double sign(double x) noexcept { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void require_hypothesis(const ConeDescriptor& cone) {
  if (zero_in_shifted_subdiff(cone))
    throw hypothesis_error(
        "zero lies in the shifted subdifferential; the normal cone is not "
        "the conical hull of the shifted set");
}

/// Golden-section minimizer for a convex function on [lo, hi].
template <typename F>
double golden_min(F&& f, double lo, double hi, double rel_tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while ((b - a) > rel_tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

}  // namespace

double compute_v(const ConeDescriptor& cone) {
  cone.validate();
  const Vec& x = cone.signal.values();
  const Vec& p = cone.shift.shift;
  double v = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) {
      const double d = sign(x[i]) - p[i];
      v += d * d;
    } else if (p[i] < 0.0) {
      const double d = 1.0 - p[i];
      v += d * d;
    } else {
      const double d = 1.0 + p[i];
      v += d * d;
    }
  }
  return v;
}

bool zero_in_shifted_subdiff(const ConeDescriptor& cone) {
  cone.validate();
  const Vec& x = cone.signal.values();
  const Vec& p = cone.shift.shift;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) {
      if (p[i] != sign(x[i])) return false;
    } else {
      if (std::abs(p[i]) > 1.0) return false;
    }
  }
  return true;
}

double width_bound_sq(Index n, Index s, double v) {
  if (!(v > 0.0)) throw std::invalid_argument("width_bound_sq: v must be positive");
  if (s < 0 || s > n) throw std::invalid_argument("width_bound_sq: need 0 <= s <= n");
  const double nd = static_cast<double>(n);
  const double sd = static_cast<double>(s);
  const double frac = 1.0 - sd / nd;
  const double bound = nd * (1.0 - (nd / v) * kTwoOverPi * frac * frac);
  return std::max(bound, 0.0);
}

double sample_size_bound(double width_sq, double K, double C, double eps) {
  if (width_sq < 0.0 || !(K > 0.0) || !(C > 0.0) || eps < 0.0)
    throw std::invalid_argument("sample_size_bound: bad arguments");
  const double root = C * K * K * std::sqrt(width_sq) + eps;
  return root * root;
}

double scaled_set_dist_sq(const Vec& g, const ConeDescriptor& cone, double t) {
  const Vec& x = cone.signal.values();
  const Vec& p = cone.shift.shift;
  double acc = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    double nearest;
    if (x[i] != 0.0) {
      nearest = t * (sign(x[i]) - p[i]);
    } else {
      // closest point of t * [-1 - p_i, 1 - p_i]
      nearest = std::clamp(g[i], t * (-1.0 - p[i]), t * (1.0 - p[i]));
    }
    const double d = g[i] - nearest;
    acc += d * d;
  }
  return acc;
}

double dist_to_normal_cone(const Vec& g, const ConeDescriptor& cone) {
  cone.validate();
  require_hypothesis(cone);
  if (g.size() != cone.signal.dim())
    throw std::invalid_argument("dist_to_normal_cone: dimension mismatch");

  const auto f = [&](double t) { return scaled_set_dist_sq(g, cone, t); };

  // doubling bracket: F is convex with F(0) = ||g||^2
  const double f_zero = f(0.0);
  double mid = 1.0;
  double f_mid = f(mid);
  double min_sq;
  if (f_mid >= f_zero) {
    min_sq = std::min(f_zero, golden_min(f, 0.0, 1.0, 1e-10));
  } else {
    double prev = 0.0;
    double next = 2.0;
    double f_next = f(next);
    while (f_next < f_mid && next < 1e12) {
      prev = mid;
      mid = next;
      f_mid = f_next;
      next *= 2.0;
      f_next = f(next);
    }
    min_sq = std::min(f_mid, golden_min(f, prev, next, 1e-10));
  }
  return std::sqrt(std::max(min_sq, 0.0));
}

WidthEstimate mc_width_estimate(const ConeDescriptor& cone, std::int64_t samples,
                                Substream& rng) {
  cone.validate();
  require_hypothesis(cone);
  if (samples < 2) throw std::invalid_argument("mc_width_estimate: need samples >= 2");

  const Index n = cone.signal.dim();
  const Index s = cone.signal.sparsity();
  const double v = compute_v(cone);

  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    Substream sub = rng.fork(static_cast<std::uint64_t>(i));
    Vec g(n);
    for (Index j = 0; j < n; ++j) g[j] = sub.next_gaussian();
    const double d = dist_to_normal_cone(g, cone);
    const double d2 = d * d;
    sum += d2;
    sum_sq += d2 * d2;
  }

  const double count = static_cast<double>(samples);
  const double mean = sum / count;
  const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));

  WidthEstimate est;
  est.mean_sq_dist = mean;
  est.std_error = std::sqrt(var / count);
  est.samples = samples;
  // quadratic bound n - 2t*sqrt(2/pi)(n-s) + t^2 v at t = sqrt(2/pi)(n-s)/v
  const double nd = static_cast<double>(n), sd = static_cast<double>(s);
  const double t_star = std::sqrt(kTwoOverPi) * (nd - sd) / v;
  est.closed_form_bound =
      nd - 2.0 * t_star * std::sqrt(kTwoOverPi) * (nd - sd) + t_star * t_star * v;
  return est;
}

double directional_derivative(const ConeDescriptor& cone, const Vec& d) {
  cone.validate();
  if (d.size() != cone.signal.dim())
    throw std::invalid_argument("directional_derivative: dimension mismatch");
  const Vec& x = cone.signal.values();
  const Vec& p = cone.shift.shift;
  double acc = 0.0;
  for (Index i = 0; i < d.size(); ++i) {
    acc += (x[i] != 0.0) ? sign(x[i]) * d[i] : std::abs(d[i]);
    acc -= p[i] * d[i];
  }
  return acc;
}

double empirical_restricted_infimum(const ConeDescriptor& cone, const Mat& A,
                                    int samples, Substream& rng) {
  cone.validate();
  require_hypothesis(cone);
  const Index n = cone.signal.dim();
  if (A.cols() != n)
    throw std::invalid_argument("empirical_restricted_infimum: dimension mismatch");
  if (samples < 1)
    throw std::invalid_argument("empirical_restricted_infimum: need samples >= 1");

  const Vec& x = cone.signal.values();
  const Vec& p = cone.shift.shift;
  constexpr double margin = 1e-6;

  double best = std::numeric_limits<double>::infinity();
  int kept = 0, failures = 0;
  for (int i = 0; i < samples; ++i) {
    Vec d(n);
    for (Index j = 0; j < n; ++j) d[j] = rng.next_gaussian();

    // subgradient-direction correction, iterated because sign flips off the
    // support stale the correction direction; converges in a handful of
    // passes when it converges at all
    double deriv = directional_derivative(cone, d);
    bool member = deriv <= 0.0;
    for (int pass = 0; pass < 50 && !member; ++pass) {
      Vec q(n);
      for (Index j = 0; j < n; ++j)
        q[j] = (x[j] != 0.0 ? sign(x[j]) : sign(d[j])) - p[j];
      const double qn2 = q.squaredNorm();
      if (qn2 == 0.0) break;
      d -= ((deriv + margin) / qn2) * q;
      deriv = directional_derivative(cone, d);
      member = deriv <= 0.0;
    }
    if (!member) {
      ++failures;
      continue;
    }
    const double norm = d.norm();
    if (norm == 0.0) {
      ++failures;
      continue;
    }
    best = std::min(best, (A * (d / norm)).norm());
    ++kept;
  }

  if (failures * 2 > samples || kept == 0)
    throw std::runtime_error(
        "empirical_restricted_infimum: sampler degenerate (repair failure rate > 50%)");
  return best;
}

double gamma_upper_from_width(double width, double witness_norm) {
  if (width < 0.0 || witness_norm < 0.0)
    throw std::invalid_argument("gamma_upper_from_width: negative argument");
  return 2.0 * width + witness_norm;
}

}  // namespace corrcs
