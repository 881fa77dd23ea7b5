#ifndef PERMCYCLES_RNG_HPP
#define PERMCYCLES_RNG_HPP

#include <cstdint>

namespace permcycles {

/// splitmix64 bit mixer (Steele/Lea/Flood, as published by Vigna).
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-splittable stream over splitmix64: stream k of a given seed is a
/// splitmix64 sequence whose initial state mixes (seed, k) through the same
/// finalizer. Streams with distinct indices are decorrelated and any
/// (seed, stream) pair reproduces its sequence exactly, independent of how
/// samples are scheduled across threads.
class SplitMix64Stream {
 public:
  explicit SplitMix64Stream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64_next(s);
    s = stream ^ 0xD1B54A32D192ED03ULL;
    std::uint64_t b = splitmix64_next(s);
    state_ = a ^ (b + 0x9E3779B97F4A7C15ULL);
  }

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace permcycles

#endif  // PERMCYCLES_RNG_HPP
