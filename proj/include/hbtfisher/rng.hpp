#pragma once

#include <cstdint>

namespace hbtfisher {

/// Finalizer from the splitmix64 generator; full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// splitmix64: one mixed output per 64-bit counter increment. Small state,
/// no warm-up, and streams seeded by distinct states are independent enough
/// for Monte Carlo counting experiments.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random mantissa bits.
  constexpr double uniform() { return (next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Per-trial substream: the trial index is avalanche-mixed into the seed so
/// results are independent of evaluation order and thread count.
constexpr SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix64(seed ^ mix64(index)));
}

}  // namespace hbtfisher
