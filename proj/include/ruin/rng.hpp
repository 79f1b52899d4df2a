#pragma once

#include <cstdint>

namespace ruin {

/// xoshiro256++ with SplitMix64 seeding.  Fixed algorithm so simulation
/// output is identical across platforms and standard-library versions
/// (std::mt19937 streams are portable but distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent substream for (seed, index).  Trials seeded this way can be
  /// run in any order, or in parallel, and still merge deterministically.
  static Rng substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1), 53-bit resolution.  Strictly
  /// inside the interval so inverse-CDF sampling never evaluates at 0 or 1.
  double uniform01();

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace ruin
