#pragma once

#include <cstdint>

namespace burgess {

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, increment by the
/// golden-ratio constant, then a two-round xor-shift-multiply finalizer.
/// Bounded draws use rejection, so sequences are identical on every
/// platform and standard library.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound); bound must be positive.
  constexpr std::uint64_t uniform(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform in [lo, hi].
  constexpr std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return lo + uniform(hi - lo + 1);
  }

  /// Independent stream for shard `key` of a run seeded with `seed`.
  static constexpr SplitMix64 derive(std::uint64_t seed, std::uint64_t key) {
    SplitMix64 mixer(seed ^ (key * 0xD1B54A32D192ED03ULL));
    return SplitMix64(mixer.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace burgess
