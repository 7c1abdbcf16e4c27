#ifndef CORRCS_TYPES_HPP
#define CORRCS_TYPES_HPP

#include <Eigen/Core>
#include <stdexcept>
#include <vector>

namespace corrcs {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

/**
 * A real vector together with its support bookkeeping. The support is
 * recomputed from the values at construction, so the invariant
 * support == {i : values_i != 0} holds by construction.
 */
class SparseSignal {
 public:
  SparseSignal() = default;

  explicit SparseSignal(Vec values) : values_(std::move(values)) {
    support_.reserve(static_cast<std::size_t>(values_.size()));
    for (Index i = 0; i < values_.size(); ++i)
      if (values_[i] != 0.0) support_.push_back(i);
  }

  const Vec& values() const noexcept { return values_; }
  const std::vector<Index>& support() const noexcept { return support_; }
  Index dim() const noexcept { return values_.size(); }
  Index sparsity() const noexcept { return static_cast<Index>(support_.size()); }

 private:
  Vec values_;
  std::vector<Index> support_;
};

/// The combined shift vector p = lambda * phi; both the objective term
/// -<p, x> and every cone formula depend on lambda and phi only through p.
struct PriorShift {
  Vec shift;

  Index dim() const noexcept { return shift.size(); }
};

/// Measurement matrix, observation and noise bound for one recovery problem.
struct SensingProblem {
  Mat matrix;        // A, m x n
  Vec observation;   // y, length m
  double noise_bound = 0.0;  // delta >= 0

  Index rows() const noexcept { return matrix.rows(); }
  Index cols() const noexcept { return matrix.cols(); }

  void validate() const {
    if (noise_bound < 0.0)
      throw std::invalid_argument("SensingProblem: noise bound must be nonnegative");
    if (matrix.rows() != observation.size())
      throw std::invalid_argument("SensingProblem: matrix rows and observation length disagree");
  }
};

}  // namespace corrcs

#endif  // CORRCS_TYPES_HPP
