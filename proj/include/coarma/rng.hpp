#pragma once

#include <cstdint>

namespace coarma {

/// Deterministic counter-based generator (SplitMix64 finalizer over a
/// keyed counter).  Identical output for identical (seed, stream,
/// counter) on every platform, and streams can be split for parallel
/// scans without coordination.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ 0x9E3779B97F4A7C15ULL) ^ mix(stream + 0x632BE59BD9B4E019ULL)),
        counter_(0) {}

  /// Independent generator for a parallel substream.
  Rng split(std::uint64_t stream) const { return Rng(key_, stream + 1); }

  std::uint64_t next_u64() {
    std::uint64_t z = key_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    return mix(z);
  }

  /// Uniform draw strictly inside (0, 1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (polar-free, deterministic pair use).
  double normal();

  std::uint64_t key() const { return key_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace coarma
