#pragma once

#include <cstdint>

namespace sixstate {

// Splittable, seedable random stream. A 64-bit seed plus a stream index fully
// determine every sample, so a session can assign stream i to pulse i and the
// draws do not depend on how pulses are partitioned across threads.
//
// The generator is splitmix64 with a per-stream state derived by mixing the
// seed and the stream index. It is deliberately self-contained: the standard
// <random> distributions are implementation-defined, which would break the
// byte-identical-output contract across toolchains.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : state_(mix(seed + kGamma * (stream + 1))) {}

  std::uint64_t next_u64() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform double in [0, 1) with 53-bit resolution.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in {0, ..., n-1}. n must be nonzero.
  std::uint32_t pick(std::uint32_t n) noexcept {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace sixstate
