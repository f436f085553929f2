#pragma once

#include <cstdint>
#include <random>

namespace qnorm {

/// Seeded source of small random integers. Identical seeds and bounds
/// reproduce identical streams on every platform: range reduction is done
/// here rather than through std::uniform_int_distribution, whose output is
/// implementation-defined.
class DeterministicSampler {
 public:
  static constexpr std::int64_t kDefaultHeight = 9;
  static constexpr int kDefaultRetries = 1000;

  explicit DeterministicSampler(std::uint64_t seed,
                                std::int64_t height = kDefaultHeight,
                                int max_retries = kDefaultRetries);

  std::uint64_t seed() const { return seed_; }
  std::int64_t height() const { return height_; }
  int max_retries() const { return max_retries_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  /// Uniform integer in [-height, height].
  std::int64_t small_int() { return uniform(-height_, height_); }

  /// Uniform integer in [1, height].
  std::int64_t small_positive() { return uniform(1, height_); }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::uint64_t seed_;
  std::int64_t height_;
  int max_retries_;
  std::mt19937_64 engine_;
};

}  // namespace qnorm
