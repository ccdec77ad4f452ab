#pragma once

#include <cstdint>

namespace flock {

// Deterministic 64-bit generator using the SplitMix64 recurrence
// (Steele, Lea & Flood 2014; reference C implementation by S. Vigna):
//
//   state += 0x9E3779B97F4A7C15
//   z  = state
//   z  = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z  = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   out = z ^ (z >> 31)
//
// Uniform doubles take the high 53 bits of `out`, scaled by 2^-53, giving a
// value in [0, 1). The draw sequence is a pure function of the seed, so any
// implementation of the same recurrence in any language reproduces runs bit
// for bit. README "Reproducibility" documents the draw order used by flock
// initialization.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace flock
