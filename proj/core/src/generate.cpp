#include "corrcs/generate.hpp"

#include <algorithm>
#include <numeric>

namespace corrcs {

PriorCase parse_prior_case(const std::string& token) {
  if (token.size() == 1) {
    const char c = token[0];
    if (c >= 'a' && c <= 'f') return static_cast<PriorCase>(c);
  }
  throw std::invalid_argument("unknown prior case '" + token + "' (expected a..f)");
}

char case_tag(PriorCase c) noexcept { return static_cast<char>(c); }

SparseSignal generate_sparse_signal(Index n, Index s, Substream& rng) {
  if (n < 0 || s < 0 || s > n)
    throw std::invalid_argument("generate_sparse_signal: need 0 <= s <= n");

  // Partial Fisher-Yates: the first s slots end up a uniform s-subset.
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index i = 0; i < s; ++i) {
    const Index j = i + rng.next_index(n - i);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  std::sort(idx.begin(), idx.begin() + s);

  Vec values = Vec::Zero(n);
  for (Index i = 0; i < s; ++i) {
    double a = rng.next_gaussian();
    while (a == 0.0) a = rng.next_gaussian();  // keep the support exact
    values[idx[static_cast<std::size_t>(i)]] = a;
  }
  return SparseSignal(std::move(values));
}

Mat generate_bernoulli_matrix(Index m, Index n, Substream& rng) {
  if (m < 0 || n < 0)
    throw std::invalid_argument("generate_bernoulli_matrix: negative dimension");
  Mat a(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = rng.next_sign();
  return a;
}

namespace {

double sign(double x) noexcept { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

PriorShift make_prior_case(PriorCase c, const SparseSignal& signal, Substream& rng) {
  const Index n = signal.dim();
  const Index s = signal.sparsity();
  const Vec& x = signal.values();
  Vec p = Vec::Zero(n);

  switch (c) {
    case PriorCase::A:
      break;
    case PriorCase::B:
      for (Index i = 0; i < n; ++i) p[i] = 0.5 * sign(x[i]);
      break;
    case PriorCase::C:
      for (Index i = 0; i < n; ++i) p[i] = -0.5 * sign(x[i]);
      break;
    case PriorCase::D:
      p.setOnes();
      for (Index i : signal.support()) p[i] = 0.0;
      break;
    case PriorCase::E: {
      if (s == n)
        throw std::invalid_argument("make_prior_case: case (e) needs at least one off-support index");
      for (Index i : signal.support()) p[i] = 0.5 * sign(x[i]);
      // pick the distinguished off-support index uniformly
      std::vector<Index> off;
      off.reserve(static_cast<std::size_t>(n - s));
      for (Index i = 0; i < n; ++i)
        if (x[i] == 0.0) off.push_back(i);
      p[off[static_cast<std::size_t>(rng.next_index(static_cast<Index>(off.size())))]] = 0.25;
      break;
    }
    case PriorCase::F:
      p.setOnes();
      for (Index i : signal.support()) p[i] = -0.5 * sign(x[i]);
      break;
  }
  return PriorShift{std::move(p)};
}

}  // namespace corrcs
