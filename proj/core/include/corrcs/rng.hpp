#ifndef CORRCS_RNG_HPP
#define CORRCS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace corrcs {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// splitmix64 finalizer: bijective 64-bit mix with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// Fold one stream coordinate into a derivation key.
constexpr std::uint64_t absorb(std::uint64_t h, std::uint64_t v) noexcept {
  return mix64((h + kGolden) ^ mix64(v + 1));
}

}  // namespace detail

/**
 * Counter-based random substream (splitmix64).
 *
 * The generator is a pure function of (key, draw index), so trials that own
 * distinct keys can run on any schedule and still reproduce bit-identical
 * results. All distribution helpers consume a fixed number of raw draws.
 */
class Substream {
 public:
  explicit Substream(std::uint64_t key) noexcept : state_(detail::mix64(key)) {}

  std::uint64_t next_u64() noexcept {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; two raw draws per call, no cached spare.
  double next_gaussian() noexcept {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// Uniform integer in [0, bound); unbiased via rejection.
  std::int64_t next_index(std::int64_t bound) {
    if (bound <= 0) throw std::invalid_argument("Substream::next_index: bound must be positive");
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    const std::uint64_t threshold = (0 - b) % b;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return static_cast<std::int64_t>(r % b);
    }
  }

  /// Random sign in {-1, +1}.
  double next_sign() noexcept { return (next_u64() >> 63) ? 1.0 : -1.0; }

  /// Child stream for indexed work items; does not consume from this stream.
  Substream fork(std::uint64_t index) const noexcept {
    return Substream(detail::absorb(state_, index));
  }

 private:
  std::uint64_t state_;
};

/// Identifies one experimental trial; the derived substream is a pure
/// function of all five fields.
struct TrialSeed {
  std::uint64_t base_seed = 0;
  int sparsity = 0;
  int rows = 0;
  int trial_index = 0;
  char case_tag = 'a';
};

inline Substream derive_substream(const TrialSeed& seed) noexcept {
  using detail::absorb;
  std::uint64_t h = detail::mix64(seed.base_seed);
  h = absorb(h, static_cast<std::uint64_t>(seed.sparsity));
  h = absorb(h, static_cast<std::uint64_t>(seed.rows));
  h = absorb(h, static_cast<std::uint64_t>(seed.trial_index));
  h = absorb(h, static_cast<std::uint64_t>(seed.case_tag));
  return Substream(h);
}

}  // namespace corrcs

#endif  // CORRCS_RNG_HPP
