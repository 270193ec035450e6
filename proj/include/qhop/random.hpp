#pragma once

#include <cstdint>
#include <random>

namespace qhop {

// Deterministic uniform [0,1) stream. mt19937_64 output is fully specified by
// the standard, and the 53-bit conversion avoids the implementation-defined
// std::uniform_real_distribution, so identical seeds give identical streams
// on every platform.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  double next() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Per-trial seed: decorrelates trials drawn from one master seed.
inline std::uint64_t derive_seed(std::uint64_t master_seed,
                                 std::uint64_t index) {
  return mix64(master_seed ^ mix64(index + 1));
}

}  // namespace qhop
