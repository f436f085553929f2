#include "qnorm/sampler.hpp"

#include <limits>
#include <stdexcept>

namespace qnorm {

DeterministicSampler::DeterministicSampler(std::uint64_t seed,
                                           std::int64_t height,
                                           int max_retries)
    : seed_(seed), height_(height), max_retries_(max_retries), engine_(seed) {
  if (height_ < 1) throw std::invalid_argument("sampler height must be positive");
  if (max_retries_ < 1) throw std::invalid_argument("sampler retries must be positive");
}

std::uint64_t DeterministicSampler::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty sampling range");
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

std::int64_t DeterministicSampler::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty sampling range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(below(span));
}

}  // namespace qnorm
