#pragma once

#include <cstdint>

namespace cellcode {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-derived random stream: the generator state for a trial is a pure
/// function of (master seed, point index, trial index), so Monte Carlo
/// results are independent of worker scheduling and replay bit-identically.
class TrialRng {
 public:
  TrialRng(std::uint64_t master_seed, std::uint64_t point_index, std::uint64_t trial_index)
      : state_(mix64(mix64(mix64(master_seed) ^ point_index) ^ trial_index)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Exact threshold comparison on 53 bits; identical across platforms.
  bool bernoulli(double p) {
    if (p <= 0.0) {
      next_u64();
      return false;
    }
    if (p >= 1.0) {
      next_u64();
      return true;
    }
    const std::uint64_t threshold = static_cast<std::uint64_t>(p * 9007199254740992.0);  // p * 2^53
    return (next_u64() >> 11) < threshold;
  }

 private:
  std::uint64_t state_;
};

}  // namespace cellcode
