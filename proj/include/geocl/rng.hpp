#pragma once

#include <cstdint>

// Counter-based randomness. Every Bernoulli draw for a vertex pair is a pure
// function of (replicate child seed, i, j), so sampled graphs are independent
// of traversal order, thread count and kernel variant. Replicate child seeds
// are derived from (run seed, replicate index), never from shared stream
// state, so disjoint replicate indices give independent streams.

namespace geocl::rng {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t GOLDEN = 0x9e3779b97f4a7c15ULL;

// Child seed for one replicate of one run.
constexpr std::uint64_t child_seed(std::uint64_t run_seed, std::uint32_t replicate) {
  return mix64(run_seed + GOLDEN * (std::uint64_t{replicate} + 1));
}

// Stateless uniform in [0,1) for an unordered pair {i,j}, i <= j.
constexpr double pair_uniform(std::uint64_t child, std::uint32_t i, std::uint32_t j) {
  std::uint64_t h = mix64(child ^ (GOLDEN * (std::uint64_t{i} + 1)));
  h = mix64(h ^ (GOLDEN * (std::uint64_t{j} + 1)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Sequential SplitMix64 stream; used where a stream (not a counter) is the
// natural fit, e.g. Fisher-Yates shuffles.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += GOLDEN;
    return mix64(state_);
  }

  constexpr double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased integer in [0, bound) by rejection.
  constexpr std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    std::uint64_t v = next();
    while (v > limit) v = next();
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

}  // namespace geocl::rng
