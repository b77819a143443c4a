#pragma once

#include <cstdint>

namespace fairassort {

/// SplitMix64 output function (Steele, Lea & Flood, "Fast splittable
/// pseudorandom number generators", OOPSLA 2014).
inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based PRNG: the k-th output of a stream is
/// splitmix64_mix(key + k * GOLDEN_GAMMA), i.e. SplitMix64 run in counter
/// mode. Streams are derived by hashing (seed, stream index), so replicate
/// streams are reproducible and independent of thread scheduling, and the
/// sequence is identical across platforms.
class CounterRng {
 public:
  static constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

  CounterRng() : key_(0), counter_(0) {}
  explicit CounterRng(std::uint64_t key) : key_(key), counter_(0) {}

  /// Stream `stream` of the generator family identified by `seed`.
  static CounterRng stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t key = splitmix64_mix(seed + kGoldenGamma);
    key = splitmix64_mix(key ^ (stream + 0x632be59bd9b4e019ULL));
    return CounterRng(key);
  }

  std::uint64_t next_u64() {
    return splitmix64_mix(key_ + (++counter_) * kGoldenGamma);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double next_double(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    return next_u64() % n;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace fairassort
