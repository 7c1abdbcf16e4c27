#ifndef CORRCS_GENERATE_HPP
#define CORRCS_GENERATE_HPP

#include <string>

#include "corrcs/rng.hpp"
#include "corrcs/types.hpp"

namespace corrcs {

/// The six prior-shift constructions used throughout the experiments.
enum class PriorCase : char {
  A = 'a',  // p = 0 (no prior)
  B = 'b',  // p = sign(x*)/2
  C = 'c',  // p = -sign(x*)/2
  D = 'd',  // p = 0 on I, 1 on I^c
  E = 'e',  // p = sign(x*)/2 on I, 0 on I^c except one entry = 1/4
  F = 'f',  // p = -sign(x*)/2 on I, 1 on I^c
};

PriorCase parse_prior_case(const std::string& token);
char case_tag(PriorCase c) noexcept;

/**
 * s-sparse random signal: support at s uniformly chosen distinct indices,
 * amplitudes i.i.d. standard normal. Identical (n, s, stream) inputs give a
 * bit-identical signal.
 */
SparseSignal generate_sparse_signal(Index n, Index s, Substream& rng);

/// m x n matrix with i.i.d. entries uniform on {+1, -1}; rows are centered
/// and isotropic. Entries are drawn in row-major order.
Mat generate_bernoulli_matrix(Index m, Index n, Substream& rng);

/// Build the combined shift p for one of the six cases. Only case (e)
/// consumes randomness (the single off-support index).
PriorShift make_prior_case(PriorCase c, const SparseSignal& signal, Substream& rng);

}  // namespace corrcs

#endif  // CORRCS_GENERATE_HPP
