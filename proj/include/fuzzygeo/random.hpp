#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace fuzzygeo {

/// Reproducible random source used for every seeded operation.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Distributions are implemented here rather than taken from
/// <random>, because the standard leaves their algorithms to the library
/// vendor. Together this makes synthetic corpora, fold shuffles and test
/// point samples identical across compilers and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); bound must be positive. Rejection sampling,
  // no modulo bias.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer over (seed, stream). Derives independent child seeds,
/// e.g. one per fold, so parallel or reordered work reproduces the same draws.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

// Fisher-Yates, walking from the back.
template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace fuzzygeo
